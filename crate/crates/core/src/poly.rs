//! Sparse homogeneous polynomials with exact rational coefficients.
//!
//! Variables are indexed from zero in the library API. A polynomial in `m`
//! variables stores a map from exponent vectors of length `m` to nonzero
//! rationals. Construction enforces homogeneity and nonnegative coefficients;
//! floating point only appears at evaluation time.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Deref};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected} entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("non-homogeneous input: term of degree {found} in a polynomial of degree {expected}")]
    NonHomogeneous { expected: u32, found: u32 },
    #[error("negative coefficient {coeff} at exponent {exponent}")]
    NegativeCoefficient { exponent: ExponentVector, coeff: BigRational },
    #[error("coordinate {index} must be positive, got {value}")]
    NonPositiveCoordinate { index: usize, value: f64 },
    #[error("variable index {index} out of range for {num_vars} variables")]
    IndexOutOfRange { index: usize, num_vars: usize },
    #[error("variable {index} still occurs in the polynomial")]
    VariableInUse { index: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Monomial exponents `(r_1, ..., r_m)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        ExponentVector(entries)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }

    /// `self - e_i + e_j`, or `None` when entry `i` is zero.
    pub fn exchanged(&self, i: usize, j: usize) -> Option<ExponentVector> {
        if self.0[i] == 0 {
            return None;
        }
        let mut v = self.0.clone();
        v[i] -= 1;
        v[j] += 1;
        Some(ExponentVector(v))
    }
}

impl Deref for ExponentVector {
    type Target = [u32];
    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A homogeneous polynomial with nonnegative exact coefficients.
///
/// The zero polynomial has no terms and no degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    num_vars: usize,
    terms: BTreeMap<ExponentVector, BigRational>,
    degree: Option<u32>,
}

impl SparsePolynomial {
    /// Builds a polynomial from `(exponents, coefficient)` pairs. Repeated
    /// exponents are summed and zero coefficients dropped.
    pub fn new<I, E>(num_vars: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (E, BigRational)>,
        E: Into<ExponentVector>,
    {
        let mut map: BTreeMap<ExponentVector, BigRational> = BTreeMap::new();
        for (e, c) in terms {
            let e = e.into();
            if e.len() != num_vars {
                return Err(PolyError::DimensionMismatch { expected: num_vars, got: e.len() });
            }
            let slot = map.entry(e).or_insert_with(BigRational::zero);
            *slot += c;
        }
        map.retain(|_, c| !c.is_zero());
        Self::from_map(num_vars, map)
    }

    /// Same as [`SparsePolynomial::new`] with integer coefficients.
    pub fn from_int_terms(num_vars: usize, terms: &[(i64, &[u32])]) -> Result<Self, PolyError> {
        Self::new(
            num_vars,
            terms
                .iter()
                .map(|(c, e)| (e.to_vec(), BigRational::from_integer(BigInt::from(*c)))),
        )
    }

    fn from_map(
        num_vars: usize,
        terms: BTreeMap<ExponentVector, BigRational>,
    ) -> Result<Self, PolyError> {
        let mut degree = None;
        for (e, c) in &terms {
            let d = e.total_degree();
            match degree {
                None => degree = Some(d),
                Some(expected) if expected != d => {
                    return Err(PolyError::NonHomogeneous { expected, found: d })
                }
                _ => {}
            }
            if c.is_negative() {
                return Err(PolyError::NegativeCoefficient {
                    exponent: e.clone(),
                    coeff: c.clone(),
                });
            }
        }
        Ok(SparsePolynomial { num_vars, terms, degree })
    }

    // Callers guarantee the invariants (terms derived from a valid polynomial).
    fn from_map_unchecked(num_vars: usize, terms: BTreeMap<ExponentVector, BigRational>) -> Self {
        let degree = terms.keys().next().map(|e| e.total_degree());
        SparsePolynomial { num_vars, terms, degree }
    }

    pub fn zero(num_vars: usize) -> Self {
        SparsePolynomial { num_vars, terms: BTreeMap::new(), degree: None }
    }

    /// The monomial `coeff · x^e`.
    pub fn monomial(e: impl Into<ExponentVector>, coeff: BigRational) -> Result<Self, PolyError> {
        let e = e.into();
        let m = e.len();
        Self::new(m, [(e, coeff)])
    }

    /// Elementary symmetric polynomial `e_k(x_1, ..., x_m)`.
    pub fn elementary_symmetric(num_vars: usize, k: usize) -> Self {
        fn rec(
            start: usize,
            left: usize,
            cur: &mut Vec<u32>,
            out: &mut BTreeMap<ExponentVector, BigRational>,
        ) {
            if left == 0 {
                out.insert(ExponentVector(cur.clone()), BigRational::one());
                return;
            }
            for v in start..cur.len() {
                if cur.len() - v < left {
                    break;
                }
                cur[v] = 1;
                rec(v + 1, left - 1, cur, out);
                cur[v] = 0;
            }
        }
        let mut out = BTreeMap::new();
        if k <= num_vars {
            rec(0, k, &mut vec![0; num_vars], &mut out);
        }
        Self::from_map_unchecked(num_vars, out)
    }

    /// Product of nonnegative linear forms; `forms[j][v]` is the coefficient of `x_v` in form `j`.
    pub fn product_of_linear_forms(
        num_vars: usize,
        forms: &[Vec<BigRational>],
    ) -> Result<Self, PolyError> {
        let mut acc = SparsePolynomial::new(num_vars, [(vec![0; num_vars], BigRational::one())])?;
        for form in forms {
            if form.len() != num_vars {
                return Err(PolyError::DimensionMismatch { expected: num_vars, got: form.len() });
            }
            let lin = SparsePolynomial::new(
                num_vars,
                form.iter().enumerate().map(|(v, c)| {
                    let mut e = vec![0; num_vars];
                    e[v] = 1;
                    (e, c.clone())
                }),
            )?;
            acc = acc.mul(&lin);
        }
        Ok(acc)
    }

    /// Polynomial product. Products of homogeneous nonnegative polynomials stay valid.
    pub fn mul(&self, other: &SparsePolynomial) -> SparsePolynomial {
        assert_eq!(self.num_vars, other.num_vars, "variable count mismatch");
        let mut out: BTreeMap<ExponentVector, BigRational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                *out.entry(ExponentVector(e)).or_insert_with(BigRational::zero) += c1 * c2;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Self::from_map_unchecked(self.num_vars, out)
    }

    /// Multiplies every coefficient by a positive rational.
    pub fn scale(&self, factor: &BigRational) -> SparsePolynomial {
        assert!(factor.is_positive(), "scale factor must be positive");
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c * factor)).collect();
        Self::from_map_unchecked(self.num_vars, terms)
    }

    /// Reorders variables: variable `v` of `self` becomes variable `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> SparsePolynomial {
        assert_eq!(perm.len(), self.num_vars);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut out = vec![0; self.num_vars];
                for (v, &x) in e.iter().enumerate() {
                    out[perm[v]] = x;
                }
                (ExponentVector(out), c.clone())
            })
            .collect();
        Self::from_map_unchecked(self.num_vars, terms)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigRational)> {
        self.terms.iter()
    }

    /// Coefficient of `x^e` (zero when absent).
    pub fn coefficient(&self, e: &[u32]) -> BigRational {
        self.terms.get(&ExponentVector(e.to_vec())).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn support(&self) -> BTreeSet<ExponentVector> {
        self.terms.keys().cloned().collect()
    }

    /// Variables with a positive exponent in some term.
    pub fn active_variables(&self) -> Vec<usize> {
        (0..self.num_vars).filter(|&v| self.terms.keys().any(|e| e[v] > 0)).collect()
    }

    fn check_index(&self, i: usize) -> Result<(), PolyError> {
        if i >= self.num_vars {
            Err(PolyError::IndexOutOfRange { index: i, num_vars: self.num_vars })
        } else {
            Ok(())
        }
    }

    /// `P(x)` in floating point.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64, PolyError> {
        if x.len() != self.num_vars {
            return Err(PolyError::DimensionMismatch { expected: self.num_vars, got: x.len() });
        }
        if let Some((index, &value)) = x.iter().enumerate().find(|(_, v)| !(**v > 0.0)) {
            return Err(PolyError::NonPositiveCoordinate { index, value });
        }
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: f64 = e.iter().zip(x).map(|(&k, &xi)| xi.powi(k as i32)).product();
                c.to_f64().unwrap_or(f64::NAN) * mono
            })
            .sum())
    }

    /// Exact `k`-fold partial derivative in variable `i`.
    pub fn partial_derivative(&self, i: usize, k: u32) -> Result<SparsePolynomial, PolyError> {
        self.check_index(i)?;
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] < k {
                continue;
            }
            let falling: BigInt = ((e[i] - k + 1)..=e[i]).map(BigInt::from).product();
            let mut ne = e.0.clone();
            ne[i] -= k;
            out.insert(ExponentVector(ne), c * BigRational::from_integer(falling));
        }
        Ok(Self::from_map_unchecked(self.num_vars, out))
    }

    /// `P|_{x_i = 0}`; variable `i` stays in the variable list but no longer occurs.
    pub fn restrict_zero(&self, i: usize) -> Result<SparsePolynomial, PolyError> {
        self.check_index(i)?;
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[i] == 0)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        Ok(Self::from_map_unchecked(self.num_vars, terms))
    }

    /// Drops a variable that does not occur, giving a polynomial in `m - 1` variables.
    pub fn eliminate_variable(&self, i: usize) -> Result<SparsePolynomial, PolyError> {
        self.check_index(i)?;
        if self.terms.keys().any(|e| e[i] > 0) {
            return Err(PolyError::VariableInUse { index: i });
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut v = e.0.clone();
                v.remove(i);
                (ExponentVector(v), c.clone())
            })
            .collect();
        Ok(Self::from_map_unchecked(self.num_vars - 1, terms))
    }

    /// Coefficients of `p(1, z) = P(x_1, ..., z, ..., x_m)` with `z` in slot `i`
    /// and the remaining variables fixed to `xstar` (in order, skipping `i`).
    pub fn bivariate_slice(
        &self,
        i: usize,
        xstar: &[f64],
    ) -> Result<UnivariateCoefficients, PolyError> {
        self.check_index(i)?;
        if xstar.len() + 1 != self.num_vars {
            return Err(PolyError::DimensionMismatch {
                expected: self.num_vars - 1,
                got: xstar.len(),
            });
        }
        if let Some((index, &value)) = xstar.iter().enumerate().find(|(_, v)| !(**v > 0.0)) {
            return Err(PolyError::NonPositiveCoordinate { index, value });
        }
        let n = self.degree.unwrap_or(0) as usize;
        let mut coeffs = vec![0.0; n + 1];
        for (e, c) in &self.terms {
            let mut w = c.to_f64().unwrap_or(f64::NAN);
            let mut slot = 0;
            for (v, &k) in e.iter().enumerate() {
                if v == i {
                    continue;
                }
                w *= xstar[slot].powi(k as i32);
                slot += 1;
            }
            coeffs[e[i] as usize] += w;
        }
        Ok(UnivariateCoefficients { coeffs })
    }

    /// Exact version of [`SparsePolynomial::bivariate_slice`] at a rational point.
    pub fn bivariate_slice_exact(
        &self,
        i: usize,
        xstar: &[BigRational],
    ) -> Result<Vec<BigRational>, PolyError> {
        self.check_index(i)?;
        if xstar.len() + 1 != self.num_vars {
            return Err(PolyError::DimensionMismatch {
                expected: self.num_vars - 1,
                got: xstar.len(),
            });
        }
        let n = self.degree.unwrap_or(0) as usize;
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for (e, c) in &self.terms {
            let mut w = c.clone();
            let mut slot = 0;
            for (v, &k) in e.iter().enumerate() {
                if v == i {
                    continue;
                }
                w *= num_traits::pow(xstar[slot].clone(), k as usize);
                slot += 1;
            }
            coeffs[e[i] as usize] += w;
        }
        Ok(coeffs)
    }
}

impl Add for &SparsePolynomial {
    type Output = SparsePolynomial;

    /// Sum of two polynomials of the same degree (or either zero).
    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        assert_eq!(self.num_vars, rhs.num_vars, "variable count mismatch");
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            *terms.entry(e.clone()).or_insert_with(BigRational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        SparsePolynomial::from_map(self.num_vars, terms).expect("sum must be homogeneous")
    }
}

impl fmt::Display for SparsePolynomial {
    /// Term-list format, one term per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, c) in &self.terms {
            write!(f, "{c}")?;
            for k in e.iter() {
                write!(f, " {k}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Dense coefficient sequence `a_0, ..., a_n` of a univariate polynomial (zeros explicit).
#[derive(Debug, Clone, PartialEq)]
pub struct UnivariateCoefficients {
    coeffs: Vec<f64>,
}

impl UnivariateCoefficients {
    pub fn new(coeffs: Vec<f64>) -> Result<Self, PolyError> {
        if coeffs.is_empty() {
            return Err(PolyError::DimensionMismatch { expected: 1, got: 0 });
        }
        if let Some((index, &value)) = coeffs.iter().enumerate().find(|(_, v)| !(**v >= 0.0)) {
            return Err(PolyError::NegativeCoefficient {
                exponent: ExponentVector(vec![index as u32]),
                coeff: BigRational::from_float(value).unwrap_or_else(BigRational::zero),
            });
        }
        Ok(UnivariateCoefficients { coeffs })
    }

    pub fn from_rationals(coeffs: &[BigRational]) -> Result<Self, PolyError> {
        Self::new(coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect())
    }

    /// Ambient degree `n` (length minus one).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn total(&self) -> f64 {
        self.coeffs.iter().sum()
    }

    /// `Σ j a_j / Σ a_j`
    pub fn mean(&self) -> f64 {
        let total = self.total();
        self.coeffs.iter().enumerate().map(|(j, a)| j as f64 * a).sum::<f64>() / total
    }

    pub fn evaluate(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, a| acc * t + a)
    }

    /// Smallest and largest index with a positive coefficient.
    pub fn support_hull(&self) -> Option<(usize, usize)> {
        let lo = self.coeffs.iter().position(|&a| a > 0.0)?;
        let hi = self.coeffs.iter().rposition(|&a| a > 0.0)?;
        Some((lo, hi))
    }
}

/// Parses a decimal (`-1.25`, `3`, `2.5e-3`) or `p/q` string into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|e| format!("bad numerator {num:?}: {e}"))?;
        let den = BigInt::from_str(den.trim()).map_err(|e| format!("bad denominator {den:?}: {e}"))?;
        if den.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(BigRational::new(num, den));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 =
                s[pos + 1..].parse().map_err(|e| format!("bad exponent in {s:?}: {e}"))?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(format!("not a number: {s:?}"));
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(
        BigInt::from_str(if all_digits.is_empty() { "0" } else { &all_digits })
            .map_err(|e| e.to_string())?,
    );
    let scale = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Ok(if negative { -value } else { value })
}

/// Raw parsed term list, before homogeneity and sign validation.
#[derive(Debug, Clone, PartialEq)]
pub struct TermList {
    pub num_vars: usize,
    pub terms: Vec<(Vec<u32>, BigRational)>,
}

/// Parses the term-list text format: one `<coeff> <e1> ... <em>` per line,
/// `#` comments, blank lines ignored.
pub fn parse_term_list(text: &str) -> Result<TermList, PolyError> {
    let mut num_vars = None;
    let mut terms = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut fields = content.split_whitespace();
        let coeff_str = fields.next().expect("non-empty line has a field");
        let coeff = parse_rational(coeff_str).map_err(|message| PolyError::Parse { line, message })?;
        let exps = fields
            .map(|f| {
                f.parse::<u32>().map_err(|_| PolyError::Parse {
                    line,
                    message: format!("exponent {f:?} is not a nonnegative integer"),
                })
            })
            .collect::<Result<Vec<u32>, _>>()?;
        if exps.is_empty() {
            return Err(PolyError::Parse { line, message: "term has no exponents".into() });
        }
        match num_vars {
            None => num_vars = Some(exps.len()),
            Some(m) if m != exps.len() => {
                return Err(PolyError::Parse {
                    line,
                    message: format!("expected {m} exponents, found {}", exps.len()),
                })
            }
            _ => {}
        }
        terms.push((exps, coeff));
    }
    let num_vars =
        num_vars.ok_or(PolyError::Parse { line: 0, message: "no terms in input".into() })?;
    Ok(TermList { num_vars, terms })
}

impl TermList {
    pub fn into_polynomial(self) -> Result<SparsePolynomial, PolyError> {
        SparsePolynomial::new(self.num_vars, self.terms)
    }
}

impl FromStr for SparsePolynomial {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_term_list(s)?.into_polynomial()
    }
}

/// Parses a sequence file: one number (decimal or `p/q`) per line, `#` comments.
pub fn parse_sequence(text: &str) -> Result<Vec<BigRational>, PolyError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        out.push(
            parse_rational(content).map_err(|message| PolyError::Parse { line: idx + 1, message })?,
        );
    }
    if out.is_empty() {
        return Err(PolyError::Parse { line: 0, message: "no values in input".into() });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn poly(m: usize, terms: &[(i64, &[u32])]) -> SparsePolynomial {
        SparsePolynomial::from_int_terms(m, terms).unwrap()
    }

    fn cube_of_mean() -> SparsePolynomial {
        let third = q(1, 3);
        SparsePolynomial::product_of_linear_forms(3, &vec![vec![third.clone(); 3]; 3]).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(poly(2, &[(1, &[1, 1])]).evaluate(&[1.0, 1.0]).unwrap(), 1.0);
        assert_eq!(poly(2, &[(1, &[2, 0]), (1, &[0, 2])]).evaluate(&[1.0, 2.0]).unwrap(), 5.0);
        assert!((cube_of_mean().evaluate(&[1.0, 1.0, 1.0]).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn evaluate_errors() {
        let p = poly(2, &[(1, &[1, 1])]);
        assert!(matches!(p.evaluate(&[1.0]), Err(PolyError::DimensionMismatch { .. })));
        assert!(matches!(
            p.evaluate(&[1.0, 0.0]),
            Err(PolyError::NonPositiveCoordinate { index: 1, .. })
        ));
    }

    #[test]
    fn cube_expansion_coefficients() {
        let p = cube_of_mean();
        assert_eq!(p.coefficient(&[1, 1, 1]), q(6, 27));
        assert_eq!(p.coefficient(&[3, 0, 0]), q(1, 27));
        assert_eq!(p.coefficient(&[2, 1, 0]), q(3, 27));
        assert_eq!(p.len(), 10);
    }

    #[test]
    fn derivative_examples() {
        let p = poly(2, &[(1, &[2, 1])]);
        assert_eq!(p.partial_derivative(0, 1).unwrap(), poly(2, &[(2, &[1, 1])]));
        assert_eq!(p.partial_derivative(0, 2).unwrap(), poly(2, &[(2, &[0, 1])]));
        assert!(p.partial_derivative(0, 3).unwrap().is_zero());
        let e2 = SparsePolynomial::elementary_symmetric(3, 2);
        assert_eq!(e2.partial_derivative(0, 1).unwrap(), poly(3, &[(1, &[0, 1, 0]), (1, &[0, 0, 1])]));
        assert!(matches!(e2.partial_derivative(3, 1), Err(PolyError::IndexOutOfRange { .. })));
    }

    #[test]
    fn restrict_examples() {
        let e2 = SparsePolynomial::elementary_symmetric(3, 2);
        assert_eq!(e2.restrict_zero(0).unwrap(), poly(3, &[(1, &[0, 1, 1])]));
        assert!(poly(2, &[(1, &[2, 0])]).restrict_zero(0).unwrap().is_zero());
        let x2sq = poly(2, &[(1, &[0, 2])]);
        assert_eq!(x2sq.restrict_zero(0).unwrap(), x2sq);
        assert!(matches!(e2.restrict_zero(5), Err(PolyError::IndexOutOfRange { .. })));
    }

    #[test]
    fn slice_examples() {
        let p = poly(2, &[(1, &[1, 1])]);
        // p(1, z) = z, padded to the total degree
        assert_eq!(p.bivariate_slice(1, &[1.0]).unwrap().coeffs(), &[0.0, 1.0, 0.0]);
        let e2 = SparsePolynomial::elementary_symmetric(3, 2);
        assert_eq!(e2.bivariate_slice(2, &[1.0, 1.0]).unwrap().coeffs(), &[1.0, 2.0, 0.0]);
        let sq = poly(2, &[(1, &[2, 0]), (2, &[1, 1]), (1, &[0, 2])]);
        assert_eq!(sq.bivariate_slice(1, &[1.0]).unwrap().coeffs(), &[1.0, 2.0, 1.0]);
        assert!(matches!(
            e2.bivariate_slice(2, &[1.0, -1.0]),
            Err(PolyError::NonPositiveCoordinate { .. })
        ));
        assert!(matches!(e2.bivariate_slice(3, &[1.0, 1.0]), Err(PolyError::IndexOutOfRange { .. })));
    }

    #[test]
    fn support_examples() {
        let p = poly(3, &[(1, &[1, 1, 0]), (1, &[0, 1, 1])]);
        let s: Vec<Vec<u32>> = p.support().into_iter().map(|e| e.into_inner()).collect();
        assert_eq!(s, vec![vec![0, 1, 1], vec![1, 1, 0]]);
        assert!(SparsePolynomial::zero(3).support().is_empty());
        assert_eq!(poly(2, &[(3, &[2, 0])]).support().len(), 1);
    }

    #[test]
    fn construction_rejects_invalid() {
        assert!(matches!(
            SparsePolynomial::from_int_terms(2, &[(1, &[2, 0]), (1, &[1, 0])]),
            Err(PolyError::NonHomogeneous { .. })
        ));
        assert!(matches!(
            SparsePolynomial::from_int_terms(2, &[(-1, &[2, 0])]),
            Err(PolyError::NegativeCoefficient { .. })
        ));
        assert!(matches!(
            SparsePolynomial::from_int_terms(2, &[(1, &[2, 0, 1])]),
            Err(PolyError::DimensionMismatch { .. })
        ));
        // cancellation leaves the zero polynomial
        let z = SparsePolynomial::from_int_terms(2, &[(1, &[2, 0]), (-1, &[2, 0])]).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
    }

    #[test]
    fn eliminate_dead_variable() {
        let p = poly(3, &[(1, &[0, 1, 1]), (2, &[0, 2, 0])]);
        assert_eq!(p.eliminate_variable(0).unwrap(), poly(2, &[(1, &[1, 1]), (2, &[2, 0])]));
        assert!(matches!(p.eliminate_variable(1), Err(PolyError::VariableInUse { index: 1 })));
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("1/36").unwrap(), q(1, 36));
        assert_eq!(parse_rational("0.125").unwrap(), q(1, 8));
        assert_eq!(parse_rational("-2").unwrap(), q(-2, 1));
        assert_eq!(parse_rational("2.5e-1").unwrap(), q(1, 4));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn parse_term_list_format() {
        let text = "# e_2 in three variables\n1 1 1 0\n1 1 0 1   # trailing\n\n1/1 0 1 1\n";
        let p: SparsePolynomial = text.parse().unwrap();
        assert_eq!(p, SparsePolynomial::elementary_symmetric(3, 2));
        let err = parse_term_list("1 1 1\n1 2\n").unwrap_err();
        assert_eq!(err, PolyError::Parse { line: 2, message: "expected 2 exponents, found 1".into() });
        assert!(matches!(parse_term_list("x 1 1"), Err(PolyError::Parse { line: 1, .. })));
        assert!(matches!(parse_term_list("1 -1 2"), Err(PolyError::Parse { line: 1, .. })));
        assert!(matches!(parse_term_list("# nothing\n"), Err(PolyError::Parse { .. })));
        // display round trip
        let again: SparsePolynomial = p.to_string().parse().unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn univariate_helpers() {
        let a = UnivariateCoefficients::new(vec![0.0, 1.0, 3.0, 0.0]).unwrap();
        assert_eq!(a.degree(), 3);
        assert_eq!(a.support_hull(), Some((1, 2)));
        assert!((a.mean() - 1.75).abs() < 1e-15);
        assert_eq!(a.evaluate(2.0), 2.0 + 12.0);
        assert!(UnivariateCoefficients::new(vec![1.0, -1.0]).is_err());
    }
}

//! Lorentzian certification and sequence log-concavity checks.
//!
//! A homogeneous polynomial of degree at least three is Lorentzian when its
//! support is M-convex and every first partial derivative is Lorentzian. In
//! degree two the test is on the Hessian signature: nonnegative entries and at
//! most one positive eigenvalue. Degrees zero and one only need nonnegative
//! coefficients, which the polynomial type already guarantees.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::math::{choose_big, choose_f64};
use crate::poly::{ExponentVector, PolyError, SparsePolynomial, TermList, UnivariateCoefficients};

/// Relative eigenvalue zero band for the floating signature path.
pub const EIGEN_REL_TOL: f64 = 1e-9;
/// Largest quadratic (in active variables) whose signature is computed exactly.
pub const EXACT_SIGNATURE_MAX_VARS: usize = 4;
/// Relative slack in `b_i^2 >= b_{i-1} b_{i+1}` for floating sequences.
pub const PF2_REL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LorentzianError {
    #[error("exponent vectors have different lengths ({0} and {1})")]
    MixedLengths(usize, usize),
    #[error("exponent vectors have different degrees ({0} and {1})")]
    MixedDegrees(u32, u32),
    #[error("matrix is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("matrix is not square")]
    NotSquare,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Violation of the exchange axiom: for `alpha`, `beta` and coordinate `i`
/// with `alpha_i > beta_i`, no compensating `j` keeps both exchanges in the set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeWitness {
    pub alpha: ExponentVector,
    pub beta: ExponentVector,
    pub i: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MConvexity {
    MConvex,
    Violated(ExchangeWitness),
}

impl MConvexity {
    pub fn holds(&self) -> bool {
        matches!(self, MConvexity::MConvex)
    }
}

/// Brute-force exchange scan over all ordered pairs.
pub fn check_m_convex(support: &BTreeSet<ExponentVector>) -> Result<MConvexity, LorentzianError> {
    let mut it = support.iter();
    if let Some(first) = it.next() {
        let (len, deg) = (first.len(), first.total_degree());
        for e in it {
            if e.len() != len {
                return Err(LorentzianError::MixedLengths(len, e.len()));
            }
            if e.total_degree() != deg {
                return Err(LorentzianError::MixedDegrees(deg, e.total_degree()));
            }
        }
    }
    // lexicographically largest α first
    for alpha in support.iter().rev() {
        for beta in support {
            if alpha == beta {
                continue;
            }
            for i in 0..alpha.len() {
                if alpha[i] <= beta[i] {
                    continue;
                }
                let exchangeable = (0..alpha.len()).any(|j| {
                    alpha[j] < beta[j]
                        && alpha.exchanged(i, j).is_some_and(|a| support.contains(&a))
                        && beta.exchanged(j, i).is_some_and(|b| support.contains(&b))
                });
                if !exchangeable {
                    return Ok(MConvexity::Violated(ExchangeWitness {
                        alpha: alpha.clone(),
                        beta: beta.clone(),
                        i,
                    }));
                }
            }
        }
    }
    Ok(MConvexity::MConvex)
}

/// Degree-two form `q(x) = x^T G x` stored as its symmetric Gram matrix `G`
/// (half the Hessian).
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticForm {
    gram: Vec<Vec<BigRational>>,
}

impl QuadraticForm {
    pub fn new(gram: Vec<Vec<BigRational>>) -> Result<Self, LorentzianError> {
        let m = gram.len();
        if gram.iter().any(|row| row.len() != m) {
            return Err(LorentzianError::NotSquare);
        }
        for i in 0..m {
            for j in (i + 1)..m {
                if gram[i][j] != gram[j][i] {
                    return Err(LorentzianError::Asymmetric(i, j));
                }
            }
        }
        Ok(QuadraticForm { gram })
    }

    /// Form of a degree-two polynomial, restricted to `vars`.
    fn from_polynomial(p: &SparsePolynomial, vars: &[usize]) -> Self {
        let m = vars.len();
        let two = BigRational::from_integer(2.into());
        let mut gram = vec![vec![BigRational::zero(); m]; m];
        for (e, c) in p.terms() {
            let idx: Vec<usize> =
                vars.iter().enumerate().filter(|(_, &v)| e[v] > 0).map(|(k, _)| k).collect();
            match idx.as_slice() {
                [k] => gram[*k][*k] = c.clone(),
                [k, l] => {
                    gram[*k][*l] = c / &two;
                    gram[*l][*k] = c / &two;
                }
                _ => unreachable!("degree-two term touches one or two variables"),
            }
        }
        QuadraticForm { gram }
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<BigRational>] {
        &self.gram
    }

    fn hessian_f64(&self) -> DMatrix<f64> {
        let m = self.dim();
        DMatrix::from_fn(m, m, |i, j| 2.0 * self.gram[i][j].to_f64().unwrap_or(f64::NAN))
    }

    fn hessian_exact(&self) -> Vec<Vec<BigRational>> {
        let two = BigRational::from_integer(2.into());
        self.gram.iter().map(|row| row.iter().map(|v| v * &two).collect()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignatureMethod {
    /// Sign changes of the exact characteristic polynomial.
    Exact,
    /// Symmetric eigensolver with a relative zero band.
    Floating,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignatureReport {
    pub lorentzian: bool,
    /// Hessian eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
    pub positive: usize,
    pub method: SignatureMethod,
    /// Set when the form has a negative entry.
    pub negative_entry: Option<(usize, usize)>,
}

/// Characteristic polynomial coefficients `c_0..=c_m` of `a` (Faddeev–LeVerrier).
fn char_poly(a: &[Vec<BigRational>]) -> Vec<BigRational> {
    let m = a.len();
    let mut coeffs = vec![BigRational::zero(); m + 1];
    coeffs[m] = BigRational::one();
    let mut mk = vec![vec![BigRational::zero(); m]; m];
    for k in 1..=m {
        // M_k = A M_{k-1} + c_{m-k+1} I
        let mut next = vec![vec![BigRational::zero(); m]; m];
        for i in 0..m {
            for j in 0..m {
                let mut acc = BigRational::zero();
                for l in 0..m {
                    if !a[i][l].is_zero() && !mk[l][j].is_zero() {
                        acc += &a[i][l] * &mk[l][j];
                    }
                }
                next[i][j] = acc;
            }
            next[i][i] += &coeffs[m - k + 1];
        }
        mk = next;
        let mut trace = BigRational::zero();
        for i in 0..m {
            for l in 0..m {
                trace += &a[i][l] * &mk[l][i];
            }
        }
        coeffs[m - k] = -trace / BigRational::from_integer((k as i64).into());
    }
    coeffs
}

/// Number of positive roots of a real-rooted polynomial (Descartes is exact there).
fn positive_roots_real_rooted(coeffs: &[BigRational]) -> usize {
    let signs: Vec<bool> =
        coeffs.iter().rev().filter(|c| !c.is_zero()).map(|c| c.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// At most one positive Hessian eigenvalue and no negative entries.
pub fn quadratic_is_lorentzian(q: &QuadraticForm) -> SignatureReport {
    let m = q.dim();
    let negative_entry = (0..m)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .find(|&(i, j)| q.gram[i][j].is_negative());

    let eig = if m == 0 {
        Vec::new()
    } else {
        let mut ev: Vec<f64> =
            SymmetricEigen::new(q.hessian_f64()).eigenvalues.iter().copied().collect();
        ev.sort_by(|a, b| b.total_cmp(a));
        ev
    };

    let (positive, method) = if m <= EXACT_SIGNATURE_MAX_VARS {
        (positive_roots_real_rooted(&char_poly(&q.hessian_exact())), SignatureMethod::Exact)
    } else {
        let scale = eig.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
        let tau = EIGEN_REL_TOL * scale;
        (eig.iter().filter(|&&v| v > tau).count(), SignatureMethod::Floating)
    };

    SignatureReport {
        lorentzian: negative_entry.is_none() && positive <= 1,
        eigenvalues: eig,
        positive,
        method,
        negative_entry,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FailureReason {
    NonHomogeneous { expected: u32, found: u32 },
    NegativeCoefficient { exponent: ExponentVector },
    SupportNotMConvex(ExchangeWitness),
    QuadraticSignature(SignatureReport),
    BaseCaseDegenerate { detail: String },
    /// A first derivative failed; the child certificate holds the witness.
    DerivativeFailed { variable: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum LocalCheck {
    /// Zero polynomial or constant.
    Vacuous,
    /// Degree one: nonnegative coefficients.
    Linear,
    Quadratic(SignatureReport),
    /// Degree at least three: M-convex support, then derivatives.
    MConvexSupport,
    /// Input rejected before any structural check.
    Input,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub degree: Option<u32>,
    pub verdict: bool,
    pub local: LocalCheck,
    pub failure: Option<FailureReason>,
    /// `(variable, certificate of ∂P/∂x_variable)`
    pub children: Vec<(usize, Arc<Certificate>)>,
}

impl Certificate {
    fn leaf(degree: Option<u32>, local: LocalCheck, failure: Option<FailureReason>) -> Self {
        Certificate { degree, verdict: failure.is_none(), local, failure, children: Vec::new() }
    }

    /// Derivative variables leading to the deepest failure, and that failure.
    pub fn failure_path(&self) -> Option<(Vec<usize>, &FailureReason)> {
        let mut path = Vec::new();
        let mut node = self;
        loop {
            match node.failure.as_ref()? {
                FailureReason::DerivativeFailed { variable } => {
                    path.push(*variable);
                    node = node
                        .children
                        .iter()
                        .find(|(v, _)| v == variable)
                        .map(|(_, c)| c.as_ref())?;
                }
                leaf => return Some((path, leaf)),
            }
        }
    }

    /// Distinct certificate nodes (shared subtrees counted once).
    pub fn node_count(&self) -> usize {
        fn walk(c: &Certificate, seen: &mut Vec<*const Certificate>) -> usize {
            let mut n = 1;
            for (_, child) in &c.children {
                let ptr = Arc::as_ptr(child);
                if !seen.contains(&ptr) {
                    seen.push(ptr);
                    n += walk(child, seen);
                }
            }
            n
        }
        walk(self, &mut Vec::new())
    }
}

/// Recursive Lorentzian certifier with a memo on canonicalized polynomials.
#[derive(Default)]
pub struct Certifier {
    memo: HashMap<SparsePolynomial, Arc<Certificate>>,
}

impl Certifier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn certify(&mut self, p: &SparsePolynomial) -> Arc<Certificate> {
        let key = canonical(p);
        if let Some(hit) = self.memo.get(&key) {
            return Arc::clone(hit);
        }
        let cert = Arc::new(self.certify_uncached(&key));
        self.memo.insert(key, Arc::clone(&cert));
        cert
    }

    fn certify_uncached(&mut self, p: &SparsePolynomial) -> Certificate {
        let degree = p.degree();
        match degree {
            None | Some(0) => Certificate::leaf(degree, LocalCheck::Vacuous, None),
            Some(1) => Certificate::leaf(degree, LocalCheck::Linear, None),
            Some(2) => {
                let vars = p.active_variables();
                let report = quadratic_is_lorentzian(&QuadraticForm::from_polynomial(p, &vars));
                let failure = if report.lorentzian {
                    None
                } else if let Some((i, j)) = report.negative_entry {
                    Some(FailureReason::BaseCaseDegenerate {
                        detail: format!("negative form entry at ({}, {})", vars[i], vars[j]),
                    })
                } else {
                    Some(FailureReason::QuadraticSignature(report.clone()))
                };
                Certificate::leaf(degree, LocalCheck::Quadratic(report), failure)
            }
            Some(_) => {
                match check_m_convex(&p.support()).expect("support of a homogeneous polynomial") {
                    MConvexity::Violated(w) => Certificate::leaf(
                        degree,
                        LocalCheck::MConvexSupport,
                        Some(FailureReason::SupportNotMConvex(w)),
                    ),
                    MConvexity::MConvex => {
                        let mut children = Vec::with_capacity(p.num_vars());
                        let mut failure = None;
                        for v in 0..p.num_vars() {
                            let d = p.partial_derivative(v, 1).expect("index in range");
                            let child = self.certify(&d);
                            let ok = child.verdict;
                            children.push((v, child));
                            if !ok {
                                failure = Some(FailureReason::DerivativeFailed { variable: v });
                                break;
                            }
                        }
                        Certificate {
                            degree,
                            verdict: failure.is_none(),
                            local: LocalCheck::MConvexSupport,
                            failure,
                            children,
                        }
                    }
                }
            }
        }
    }
}

/// Scales so the first coefficient is one; the Lorentzian property is scale invariant.
fn canonical(p: &SparsePolynomial) -> SparsePolynomial {
    match p.terms().next() {
        Some((_, c)) if !c.is_one() => p.scale(&c.recip()),
        _ => p.clone(),
    }
}

pub fn is_lorentzian(p: &SparsePolynomial) -> Certificate {
    Certifier::new().certify(p).as_ref().clone()
}

/// Certifies a raw term list, reporting homogeneity and sign violations as
/// failing certificates instead of construction errors.
pub fn certify_terms(terms: TermList) -> Certificate {
    match terms.into_polynomial() {
        Ok(p) => is_lorentzian(&p),
        Err(PolyError::NonHomogeneous { expected, found }) => Certificate::leaf(
            None,
            LocalCheck::Input,
            Some(FailureReason::NonHomogeneous { expected, found }),
        ),
        Err(PolyError::NegativeCoefficient { exponent, .. }) => Certificate::leaf(
            None,
            LocalCheck::Input,
            Some(FailureReason::NegativeCoefficient { exponent }),
        ),
        Err(other) => Certificate::leaf(
            None,
            LocalCheck::Input,
            Some(FailureReason::BaseCaseDegenerate { detail: other.to_string() }),
        ),
    }
}

/// Pólya frequency of order two, checked exactly: nonnegative, contiguous
/// positive support, and `b_i^2 >= b_{i-1} b_{i+1}`.
pub fn is_pf2<T>(b: &[T]) -> bool
where
    T: Zero + PartialOrd + Clone + std::ops::Mul<Output = T>,
{
    pf2_structure(b) && b.windows(3).all(|w| w[1].clone() * w[1].clone() >= w[0].clone() * w[2].clone())
}

/// [`is_pf2`] for floats, with relative slack `rel_tol` on the log-concavity inequality.
pub fn is_pf2_approx(b: &[f64], rel_tol: f64) -> bool {
    pf2_structure(b) && b.windows(3).all(|w| w[1] * w[1] >= w[0] * w[2] * (1.0 - rel_tol))
}

fn pf2_structure<T: Zero + PartialOrd>(b: &[T]) -> bool {
    let zero = T::zero();
    if b.iter().any(|v| !(*v >= zero)) {
        return false;
    }
    let first = b.iter().position(|v| *v > zero);
    let last = b.iter().rposition(|v| *v > zero);
    match (first, last) {
        (Some(lo), Some(hi)) => b[lo..=hi].iter().all(|v| *v > zero),
        _ => true,
    }
}

/// `b_i = a_i / C(n, i)`
pub fn normalize_by_binomial(a: &UnivariateCoefficients) -> Vec<f64> {
    let n = a.degree() as u64;
    a.coeffs().iter().enumerate().map(|(i, &v)| v / choose_f64(n, i as u64)).collect()
}

/// Ultra-log-concavity: `a_i / C(n, i)` is PF2 (with [`PF2_REL_TOL`] slack).
pub fn is_ulc(a: &UnivariateCoefficients) -> bool {
    is_pf2_approx(&normalize_by_binomial(a), PF2_REL_TOL)
}

/// Exact ultra-log-concavity of a rational sequence `a_0..=a_n`.
pub fn is_ulc_exact(a: &[BigRational]) -> bool {
    if a.is_empty() {
        return true;
    }
    let n = (a.len() - 1) as u64;
    let b: Vec<BigRational> = a
        .iter()
        .enumerate()
        .map(|(i, v)| v / BigRational::from_integer(choose_big(n, i as u64)))
        .collect();
    is_pf2(&b)
}

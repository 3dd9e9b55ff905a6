//! Coefficient lower bounds from capacity.
//!
//! Three checks, each computed numerically and compared with explicit slack:
//!
//! * capacity–derivative: for Lorentzian `P` of degree `n` with `α_i = k`,
//!   `cap_α(P) · F(n, k) <= cap_{α∖i}(∂_i^k P |_{x_i = 0}) / k!`;
//! * univariate: an ULC sequence with integer mean `ns` has
//!   `a_ns >= F(n, ns)`;
//! * multivariate: `a_r >= Π_i F(d, r_i) · cap_r(P)`.
//!
//! Here `F(n, k) = C(n, k) (k/n)^k ((n-k)/n)^(n-k)` with `0^0 = 1`.

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::capacity::{
    capacity_with, univariate_capacity_with, CapacityError, CapacityResult, CapacityStatus,
    DirectionVector, SolverOptions,
};
use crate::lorentzian::{is_ulc, normalize_by_binomial};
use crate::math::{ln_choose, mean_atom};
use crate::poly::{PolyError, SparsePolynomial, UnivariateCoefficients};
use crate::prob::{binomial, condition, ConditioningEvent, DiscreteDistribution, ProbError};

/// Relative slack on capacity-based inequalities.
pub const REL_SLACK: f64 = 1e-6;
/// Absolute slack on capacity-based inequalities.
pub const ABS_SLACK: f64 = 1e-12;
/// Slack on the univariate atom bound.
pub const ATOM_SLACK: f64 = 1e-9;
/// Tolerance on the coupling identities.
pub const COUPLING_TOL: f64 = 1e-12;
/// Relative tolerance of the domination lemma and `c >= 1`.
pub const DOMINATION_TOL: f64 = 1e-9;
/// Tolerance on `Σ a = 1` and on an integer mean.
pub const NORMALIZATION_TOL: f64 = 1e-9;
pub const MEAN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("target {ns} outside 0..={n} (n must be positive)")]
    OutOfRange { ns: usize, n: usize },
    #[error("sequence sums to {sum}, expected 1")]
    NotNormalized { sum: f64 },
    #[error("sequence is not ultra log-concave")]
    NotUlc,
    #[error("mean {mean} is not an integer")]
    NonIntegerMean { mean: f64 },
    #[error("mean {mean} differs from target {ns}")]
    MeanMismatch { mean: f64, ns: usize },
    #[error("normalized coefficient at the target is zero")]
    ZeroAtom,
    #[error("no finite tilt reaches mean {k}: support hull is {lo}..={hi}")]
    NoFiniteTilt { k: usize, lo: usize, hi: usize },
    #[error("derivative order α_{index} = {value} is not a nonnegative integer")]
    NonIntegerOrder { index: usize, value: f64 },
    #[error("exponent sum {got} differs from total degree {expected}")]
    DegreeMismatch { expected: u32, got: u64 },
    #[error("variable {index} out of range for {num_vars} variables")]
    IndexOutOfRange { index: usize, num_vars: usize },
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Capacity(#[from] CapacityError),
    #[error(transparent)]
    Prob(#[from] ProbError),
}

/// Slack and solver settings shared by the capacity-based checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOptions {
    pub solver: SolverOptions,
    pub rel_slack: f64,
    pub abs_slack: f64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { solver: SolverOptions::default(), rel_slack: REL_SLACK, abs_slack: ABS_SLACK }
    }
}

/// `F(n, ns) = C(n, ns) (s^s (1-s)^(1-s))^n` with `s = ns / n`.
pub fn theorem3_bound(n: usize, ns: usize) -> Result<f64, BoundsError> {
    if n == 0 || ns > n {
        return Err(BoundsError::OutOfRange { ns, n });
    }
    Ok(mean_atom(n as u64, ns as u64))
}

/// `b_i = a_i / C(n, i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedSequence {
    pub b: Vec<f64>,
    pub n: usize,
}

impl NormalizedSequence {
    pub fn new(a: &UnivariateCoefficients) -> Self {
        NormalizedSequence { b: normalize_by_binomial(a), n: a.degree() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DominatingBinomial {
    pub p: f64,
    pub c: f64,
    pub ns: usize,
    pub n: usize,
    /// Point-mass input; `p = 1/2` by convention.
    pub degenerate: bool,
    /// `max_i a_i / (c · C(n,i) p^i (1-p)^(n-i))` over the support.
    pub max_domination_ratio: f64,
}

impl DominatingBinomial {
    pub fn s(&self) -> f64 {
        self.ns as f64 / self.n as f64
    }
}

fn check_distribution(a: &UnivariateCoefficients) -> Result<(), BoundsError> {
    let sum = a.total();
    if (sum - 1.0).abs() > NORMALIZATION_TOL {
        return Err(BoundsError::NotNormalized { sum });
    }
    if !is_ulc(a) {
        return Err(BoundsError::NotUlc);
    }
    Ok(())
}

/// Binomial `c · Bin(n, p)` dominating `a` termwise and touching it at `ns`.
pub fn dominating_binomial(
    a: &UnivariateCoefficients,
    ns: usize,
) -> Result<DominatingBinomial, BoundsError> {
    let n = a.degree();
    if n == 0 || ns > n {
        return Err(BoundsError::OutOfRange { ns, n });
    }
    check_distribution(a)?;
    let mean = a.mean();
    if (mean - ns as f64).abs() > MEAN_TOL {
        return Err(BoundsError::MeanMismatch { mean, ns });
    }
    let b = normalize_by_binomial(a);
    if !(b[ns] > 0.0) {
        return Err(BoundsError::ZeroAtom);
    }
    let degenerate = ns == 0 || b[ns - 1] == 0.0;
    let p = if degenerate {
        0.5
    } else {
        let q = b[ns] / b[ns - 1];
        q / (1.0 + q)
    };
    let ln_p = p.ln();
    let ln_1p = (-p).ln_1p();
    let log_kernel = |i: usize| i as f64 * ln_p + (n - i) as f64 * ln_1p;
    let ln_c = b[ns].ln() - log_kernel(ns);
    let c = ln_c.exp();
    if c < 1.0 - DOMINATION_TOL {
        return Err(BoundsError::Internal(format!("dominating constant c = {c} < 1")));
    }
    let mut max_ratio = 0.0f64;
    for (i, &ai) in a.coeffs().iter().enumerate() {
        if ai > 0.0 {
            let ratio = (ai.ln() - ln_choose(n as u64, i as u64) - ln_c - log_kernel(i)).exp();
            max_ratio = max_ratio.max(ratio);
        }
    }
    if max_ratio > 1.0 + DOMINATION_TOL {
        return Err(BoundsError::Internal(format!(
            "binomial fails to dominate: max ratio {max_ratio}"
        )));
    }
    Ok(DominatingBinomial { p, c, ns, n, degenerate, max_domination_ratio: max_ratio })
}

/// The pair `Y = (X, Z)` with `X ~ Bin(n, p)` and `P[Z = 1 | X = i] = w_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingWitness {
    pub base: DiscreteDistribution,
    pub weights: ConditioningEvent,
    pub event_probability: f64,
    /// `X` has law `Bin(n, p)`.
    pub binomial_marginal: bool,
    /// `a_ns = P[X = ns | A]`.
    pub atom_matches: bool,
    /// `P[X = ns | not A] = 0`.
    pub complement_misses_atom: bool,
    /// `P[A | X = ns] = 1`.
    pub atom_certain: bool,
    /// `max_i |P[X = i | A] - a_i|`.
    pub conditioned_error: f64,
}

impl CouplingWitness {
    pub fn holds(&self) -> bool {
        self.binomial_marginal
            && self.atom_matches
            && self.complement_misses_atom
            && self.atom_certain
            && self.conditioned_error <= COUPLING_TOL
    }
}

fn coupling(a: &UnivariateCoefficients, dom: &DominatingBinomial) -> Result<CouplingWitness, BoundsError> {
    let n = dom.n;
    let base = binomial(n, dom.p)?;
    let ns = dom.ns;
    let mut weights: Vec<f64> = a
        .coeffs()
        .iter()
        .zip(base.pmf())
        .map(|(&ai, &pi)| if ai == 0.0 { 0.0 } else { (ai / (dom.c * pi)).min(1.0) })
        .collect();
    // w_ns = 1 holds by the choice of c; snap away the rounding once checked
    let atom_certain = (weights[ns] - 1.0).abs() <= COUPLING_TOL;
    if atom_certain {
        weights[ns] = 1.0;
    }
    let event = ConditioningEvent::new(weights)?;
    let (conditioned, event_probability) = condition(&base, &event)?;

    // joint masses P(X = i, Z = 1) and P(X = i, Z = 0)
    let joint_in: Vec<f64> = base.pmf().iter().zip(event.weights()).map(|(p, w)| p * w).collect();
    let joint_out: Vec<f64> =
        base.pmf().iter().zip(event.weights()).map(|(p, w)| p * (1.0 - w)).collect();
    let binomial_marginal = (0..=n).all(|i| {
        let direct = (ln_choose(n as u64, i as u64)
            + i as f64 * dom.p.ln()
            + (n - i) as f64 * (-dom.p).ln_1p())
        .exp();
        (joint_in[i] + joint_out[i] - direct).abs() <= COUPLING_TOL
    });
    let atom_matches = (conditioned.pmf()[ns] - a.coeffs()[ns]).abs() <= COUPLING_TOL;
    let out_mass: f64 = joint_out.iter().sum();
    let complement_atom = if out_mass > 0.0 { joint_out[ns] / out_mass } else { 0.0 };
    let complement_misses_atom = complement_atom <= COUPLING_TOL;
    let conditioned_error = conditioned
        .pmf()
        .iter()
        .zip(a.coeffs())
        .map(|(q, a)| (q - a).abs())
        .fold(0.0, f64::max);
    Ok(CouplingWitness {
        base,
        weights: event,
        event_probability,
        binomial_marginal,
        atom_matches,
        complement_misses_atom,
        atom_certain,
        conditioned_error,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Theorem3Report {
    pub n: usize,
    pub ns: usize,
    pub bound: f64,
    pub a_ns: f64,
    pub pass: bool,
    pub witness: DominatingBinomial,
    pub coupling: CouplingWitness,
}

/// Checks `a_ns >= F(n, ns)` for an ULC distribution with integer mean `ns`.
pub fn verify_theorem3(a: &UnivariateCoefficients) -> Result<Theorem3Report, BoundsError> {
    check_distribution(a)?;
    let n = a.degree();
    let mean = a.mean();
    let rounded = mean.round();
    if (mean - rounded).abs() > MEAN_TOL {
        return Err(BoundsError::NonIntegerMean { mean });
    }
    let ns = rounded as usize;
    let bound = theorem3_bound(n, ns)?;
    let a_ns = a.coeffs()[ns];
    let witness = dominating_binomial(a, ns)?;
    let coupling = coupling(a, &witness)?;
    Ok(Theorem3Report { n, ns, bound, a_ns, pass: a_ns >= bound - ATOM_SLACK, witness, coupling })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TiltResult {
    pub t: f64,
    /// `q_j = a_j t^j / Σ a_j t^j`
    pub tilted: DiscreteDistribution,
}

// (q, mean, variance) of the tilt with t = e^u
fn tilted_moments(a: &[f64], u: f64) -> (Vec<f64>, f64, f64) {
    let logs: Vec<f64> = a
        .iter()
        .enumerate()
        .map(|(j, &aj)| if aj > 0.0 { aj.ln() + j as f64 * u } else { f64::NEG_INFINITY })
        .collect();
    let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let w: Vec<f64> = logs.iter().map(|l| (l - top).exp()).collect();
    let z: f64 = w.iter().sum();
    let q: Vec<f64> = w.iter().map(|v| v / z).collect();
    let mean: f64 = q.iter().enumerate().map(|(j, v)| j as f64 * v).sum();
    let var: f64 = q.iter().enumerate().map(|(j, v)| (j as f64 - mean).powi(2) * v).sum();
    (q, mean, var)
}

/// Exponential tilt with mean exactly `k`.
pub fn tilt_to_mean(a: &UnivariateCoefficients, k: usize) -> Result<TiltResult, BoundsError> {
    let (lo, hi) = a.support_hull().ok_or(BoundsError::NoFiniteTilt { k, lo: 0, hi: 0 })?;
    if !(lo < k && k < hi) {
        return Err(BoundsError::NoFiniteTilt { k, lo, hi });
    }
    let coeffs = a.coeffs();
    let target = k as f64;
    let f = |u: f64| tilted_moments(coeffs, u).1 - target;

    let (mut u_lo, mut u_hi) = (-1.0f64, 1.0f64);
    for _ in 0..64 {
        if f(u_lo) < 0.0 {
            break;
        }
        u_lo *= 2.0;
    }
    for _ in 0..64 {
        if f(u_hi) > 0.0 {
            break;
        }
        u_hi *= 2.0;
    }
    if !(f(u_lo) < 0.0 && f(u_hi) > 0.0) {
        return Err(BoundsError::Internal(format!("tilt bracket failed for k = {k}")));
    }

    // safeguarded Newton in u = ln t
    let mut u = 0.0f64.clamp(u_lo, u_hi);
    for _ in 0..400 {
        let (_, mean, var) = tilted_moments(coeffs, u);
        let r = mean - target;
        if r.abs() <= 1e-14 * (1.0 + target) {
            break;
        }
        if r < 0.0 {
            u_lo = u;
        } else {
            u_hi = u;
        }
        let newton = u - r / var;
        u = if var > 0.0 && newton > u_lo && newton < u_hi { newton } else { 0.5 * (u_lo + u_hi) };
        if u_hi - u_lo <= 4.0 * f64::EPSILON * (1.0 + u.abs()) {
            break;
        }
    }
    let (q, mean, _) = tilted_moments(coeffs, u);
    if (mean - target).abs() > MEAN_TOL {
        return Err(BoundsError::Internal(format!("tilted mean {mean} misses target {k}")));
    }
    Ok(TiltResult { t: u.exp(), tilted: DiscreteDistribution::from_masses(q)? })
}

/// `a_j t^j / Σ a_j t^j` in exact arithmetic.
pub fn tilt_exact(a: &[BigRational], t: &BigRational) -> Vec<BigRational> {
    let mut power = BigRational::from_integer(1.into());
    let mut out = Vec::with_capacity(a.len());
    for aj in a {
        out.push(aj * &power);
        power *= t;
    }
    let total: BigRational = out.iter().sum();
    if total.is_zero() {
        return out;
    }
    out.into_iter().map(|v| v / &total).collect()
}

/// Tilts a distribution to the integer mean nearest its own, for corpus generation.
///
/// Returns the input unchanged when its mean is already an integer.
pub fn tilt_to_integer_mean(
    a: &UnivariateCoefficients,
) -> Result<(UnivariateCoefficients, usize), BoundsError> {
    let mean = a.mean() / a.total();
    let rounded = mean.round();
    if (mean - rounded).abs() <= MEAN_TOL {
        let scaled: Vec<f64> = a.coeffs().iter().map(|v| v / a.total()).collect();
        return Ok((UnivariateCoefficients::new(scaled)?, rounded as usize));
    }
    let (lo, hi) = a.support_hull().ok_or(BoundsError::ZeroAtom)?;
    let k = (rounded as usize).clamp(lo + 1, hi.saturating_sub(1).max(lo + 1));
    let tilt = tilt_to_mean(a, k)?;
    Ok((UnivariateCoefficients::new(tilt.tilted.pmf().to_vec())?, k))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Theorem1Report {
    pub n: u32,
    pub k: u32,
    /// `F(n, k)`
    pub factor: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
    /// Set when either capacity solve failed to converge; `pass` is then not meaningful.
    pub indeterminate: bool,
    pub cap_p: CapacityResult,
    pub cap_derivative: CapacityResult,
    /// `∂_i^k P |_{x_i = 0}` with `x_i` removed.
    pub derivative: SparsePolynomial,
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

fn integer_order(alpha: &DirectionVector, i: usize) -> Result<u32, BoundsError> {
    let value = alpha.as_slice()[i];
    if value.fract() != 0.0 || value > u32::MAX as f64 {
        return Err(BoundsError::NonIntegerOrder { index: i, value });
    }
    Ok(value as u32)
}

pub fn verify_theorem1(
    p: &SparsePolynomial,
    alpha: &DirectionVector,
    i: usize,
) -> Result<Theorem1Report, BoundsError> {
    verify_theorem1_with(p, alpha, i, &CheckOptions::default())
}

/// `cap_α(P) F(n, k) <= cap_{α∖i}(∂_i^k P|_{x_i=0}) / k!` with `k = α_i`.
pub fn verify_theorem1_with(
    p: &SparsePolynomial,
    alpha: &DirectionVector,
    i: usize,
    opts: &CheckOptions,
) -> Result<Theorem1Report, BoundsError> {
    let m = p.num_vars();
    if alpha.len() != m {
        return Err(CapacityError::DimensionMismatch { expected: m, got: alpha.len() }.into());
    }
    if i >= m {
        return Err(BoundsError::IndexOutOfRange { index: i, num_vars: m });
    }
    let n = p.degree().ok_or(BoundsError::ZeroPolynomial)?;
    let k = integer_order(alpha, i)?;
    let factor = mean_atom(u64::from(n), u64::from(k));
    let derivative = p.partial_derivative(i, k)?.restrict_zero(i)?.eliminate_variable(i)?;
    let cap_p = capacity_with(p, alpha, &opts.solver)?;
    let cap_derivative = capacity_with(&derivative, &alpha.without(i), &opts.solver)?;
    let lhs = cap_p.value * factor;
    let rhs = cap_derivative.value / factorial(k);
    let indeterminate = cap_p.status == CapacityStatus::FailedToConverge
        || cap_derivative.status == CapacityStatus::FailedToConverge;
    Ok(Theorem1Report {
        n,
        k,
        factor,
        lhs,
        rhs,
        pass: lhs <= rhs * (1.0 + opts.rel_slack) + opts.abs_slack,
        indeterminate,
        cap_p,
        cap_derivative,
        derivative,
    })
}

/// Variable-by-variable application of the capacity–derivative inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct CorollaryChain {
    pub steps: Vec<Theorem1Report>,
    /// `cap_r(P) Π_j F(d, r_j)`; equals the direct bound.
    pub fixed_degree_bound: f64,
    /// `cap_r(P) Π_j F(n_j, r_j)` with `n_j` the degree left at step `j`.
    pub tight_bound: f64,
    /// Last capacity in the chain, scaled by `Π 1/r_j!`; equals `a_r`.
    pub endpoint: f64,
    pub agrees_with_direct: bool,
    pub steps_pass: bool,
    pub endpoint_matches: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorollaryReport {
    pub coefficient: BigRational,
    /// `Π_i F(d, r_i)`
    pub factor: f64,
    pub capacity: CapacityResult,
    pub bound: f64,
    pub pass: bool,
    pub indeterminate: bool,
    pub chain: Option<CorollaryChain>,
}

impl CorollaryReport {
    pub fn coefficient_f64(&self) -> f64 {
        self.coefficient.to_f64().unwrap_or(f64::NAN)
    }
}

pub fn verify_corollary(p: &SparsePolynomial, r: &[u32]) -> Result<CorollaryReport, BoundsError> {
    verify_corollary_with(p, r, true, &CheckOptions::default())
}

/// `a_r >= Π_i F(d, r_i) cap_r(P)`, optionally with the iterated chain.
pub fn verify_corollary_with(
    p: &SparsePolynomial,
    r: &[u32],
    with_chain: bool,
    opts: &CheckOptions,
) -> Result<CorollaryReport, BoundsError> {
    let m = p.num_vars();
    if r.len() != m {
        return Err(CapacityError::DimensionMismatch { expected: m, got: r.len() }.into());
    }
    let d = p.degree().ok_or(BoundsError::ZeroPolynomial)?;
    let sum: u64 = r.iter().map(|&v| u64::from(v)).sum();
    if sum != u64::from(d) {
        return Err(BoundsError::DegreeMismatch { expected: d, got: sum });
    }
    let coefficient = p.coefficient(r);
    let factor: f64 = r.iter().map(|&ri| mean_atom(u64::from(d), u64::from(ri))).product();
    let alpha = DirectionVector::new(r.iter().map(|&v| f64::from(v)).collect())?;
    let capacity = capacity_with(p, &alpha, &opts.solver)?;
    let bound = factor * capacity.value;
    let coef = coefficient.to_f64().unwrap_or(f64::NAN);
    let pass = coef >= bound * (1.0 - opts.rel_slack) - opts.abs_slack;
    let mut indeterminate = capacity.status == CapacityStatus::FailedToConverge;
    let chain = if with_chain {
        let chain = corollary_chain(p, r, d, capacity.value, bound, coef, opts)?;
        indeterminate |= chain.steps.iter().any(|s| s.indeterminate);
        Some(chain)
    } else {
        None
    };
    Ok(CorollaryReport { coefficient, factor, capacity, bound, pass, indeterminate, chain })
}

fn corollary_chain(
    p: &SparsePolynomial,
    r: &[u32],
    d: u32,
    cap0: f64,
    direct_bound: f64,
    coefficient: f64,
    opts: &CheckOptions,
) -> Result<CorollaryChain, BoundsError> {
    let mut steps = Vec::with_capacity(r.len());
    let mut current = p.clone();
    let mut fixed = cap0;
    let mut tight = cap0;
    let mut scale = 1.0;
    let mut endpoint = cap0;
    for (j, &rj) in r.iter().enumerate() {
        let alpha = DirectionVector::new(r[j..].iter().map(|&v| f64::from(v)).collect())?;
        fixed *= mean_atom(u64::from(d), u64::from(rj));
        if current.is_zero() {
            // a_r = 0; the rest of the chain is identically zero
            tight = 0.0;
            endpoint = 0.0;
            break;
        }
        let step = verify_theorem1_with(&current, &alpha, 0, opts)?;
        tight *= step.factor;
        scale /= factorial(rj);
        endpoint = step.cap_derivative.value * scale;
        current = step.derivative.clone();
        steps.push(step);
    }
    let close = |a: f64, b: f64| (a - b).abs() <= REL_SLACK * a.abs().max(b.abs()) + ABS_SLACK;
    Ok(CorollaryChain {
        agrees_with_direct: close(fixed, direct_bound),
        steps_pass: steps.iter().all(|s| s.pass),
        endpoint_matches: close(endpoint, coefficient),
        steps,
        fixed_degree_bound: fixed,
        tight_bound: tight,
        endpoint,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnivariateLemmaReport {
    pub k: usize,
    pub a_k: f64,
    /// `F(n, k)`
    pub factor: f64,
    pub capacity: CapacityResult,
    pub bound: f64,
    pub pass: bool,
}

/// `a_k >= F(n, k) inf_{t>0} p(t) / t^k` for an ULC sequence.
pub fn univariate_lemma_check(
    a: &UnivariateCoefficients,
    k: usize,
) -> Result<UnivariateLemmaReport, BoundsError> {
    univariate_lemma_check_with(a, k, &CheckOptions::default())
}

pub fn univariate_lemma_check_with(
    a: &UnivariateCoefficients,
    k: usize,
    opts: &CheckOptions,
) -> Result<UnivariateLemmaReport, BoundsError> {
    if !is_ulc(a) {
        return Err(BoundsError::NotUlc);
    }
    let n = a.degree();
    let capacity = univariate_capacity_with(a, k, &opts.solver)?;
    let factor = mean_atom(n as u64, k as u64);
    let bound = factor * capacity.value;
    let a_k = a.coeffs()[k];
    Ok(UnivariateLemmaReport {
        k,
        a_k,
        factor,
        bound,
        pass: a_k >= bound * (1.0 - opts.rel_slack) - opts.abs_slack,
        capacity,
    })
}

//! Binomial conditioning and the mean-shift lemma.
//!
//! An event `A` on the outcome of `X ~ Bin(n, p)` is encoded by its
//! acceptance weights `w_i = P[A | X = i]`. If conditioning on `A` moves the
//! mean to `ns` while keeping the atom at `ns` (`w_ns = 1`), then
//!
//! ```text
//! P[X = ns | A] >= C(n, ns) (s^s (1-s)^(1-s))^n,
//! P[A] <= ((p^s (1-p)^(1-s)) / (s^s (1-s)^(1-s)))^n.
//! ```
//!
//! [`extremal_event_oracle`] computes the smallest achievable conditional
//! atom directly, without going through the Chernoff argument.

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::math::{choose_big, choose_f64, ln_choose, mean_atom, xlogy};

/// Tolerance on `Σ pmf = 1`.
pub const PMF_SUM_TOL: f64 = 1e-12;
/// Slack on the lemma's inequalities.
pub const LEMMA_SLACK: f64 = 1e-9;
/// Tolerance on "conditional mean equals ns".
pub const MEAN_TOL: f64 = 1e-10;
/// Largest `n` for which the oracle runs in exact rational arithmetic.
pub const ORACLE_EXACT_MAX_N: usize = 12;
/// Largest `n` the oracle accepts at all.
pub const ORACLE_MAX_N: usize = 20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProbError {
    #[error("probability mass sums to {sum}, expected 1")]
    NotNormalized { sum: f64 },
    #[error("entry {index} is {value}; masses must be finite and nonnegative")]
    InvalidMass { index: usize, value: f64 },
    #[error("empty distribution")]
    Empty,
    #[error("probability {0} outside the allowed range")]
    ProbabilityOutOfRange(f64),
    #[error("weight {index} is {value}; weights must lie in [0, 1]")]
    WeightOutOfRange { index: usize, value: f64 },
    #[error("lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("event has probability zero")]
    ZeroProbabilityEvent,
    #[error("conditional mean is {got}, expected {expected}")]
    MeanMismatch { expected: usize, got: f64 },
    #[error("weight at the target atom {index} is {weight}, expected 1")]
    AtomNotCertain { index: usize, weight: f64 },
    #[error("no outcome is accepted with weight 1")]
    NoFullWeightOutcome,
    #[error("target {ns} outside 0..={n}")]
    TargetOutOfRange { ns: usize, n: usize },
    #[error("oracle supports n <= {max}, got {n}")]
    OracleTooLarge { n: usize, max: usize },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

/// Probability mass function on `{0, ..., n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution {
    pmf: Vec<f64>,
}

impl DiscreteDistribution {
    pub fn new(pmf: Vec<f64>) -> Result<Self, ProbError> {
        validate_masses(&pmf)?;
        let sum: f64 = pmf.iter().sum();
        if (sum - 1.0).abs() > PMF_SUM_TOL {
            return Err(ProbError::NotNormalized { sum });
        }
        Ok(DiscreteDistribution { pmf })
    }

    /// Normalizes nonnegative masses with a positive total.
    pub fn from_masses(masses: Vec<f64>) -> Result<Self, ProbError> {
        validate_masses(&masses)?;
        let sum: f64 = masses.iter().sum();
        if !(sum > 0.0) {
            return Err(ProbError::NotNormalized { sum });
        }
        Ok(DiscreteDistribution { pmf: masses.into_iter().map(|v| v / sum).collect() })
    }

    pub fn pmf(&self) -> &[f64] {
        &self.pmf
    }

    /// Largest outcome `n`.
    pub fn n(&self) -> usize {
        self.pmf.len() - 1
    }

    pub fn mean(&self) -> f64 {
        self.pmf.iter().enumerate().map(|(i, p)| i as f64 * p).sum()
    }
}

fn validate_masses(masses: &[f64]) -> Result<(), ProbError> {
    if masses.is_empty() {
        return Err(ProbError::Empty);
    }
    if let Some((index, &value)) =
        masses.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v >= 0.0))
    {
        return Err(ProbError::InvalidMass { index, value });
    }
    Ok(())
}

/// Event `A` given by acceptance weights `w_i = P[A | X = i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditioningEvent {
    weights: Vec<f64>,
}

impl ConditioningEvent {
    pub fn new(weights: Vec<f64>) -> Result<Self, ProbError> {
        if let Some((index, &value)) =
            weights.iter().enumerate().find(|(_, w)| !(**w >= 0.0 && **w <= 1.0))
        {
            return Err(ProbError::WeightOutOfRange { index, value });
        }
        Ok(ConditioningEvent { weights })
    }

    /// The sure event on `{0, ..., n}`.
    pub fn full(n: usize) -> Self {
        ConditioningEvent { weights: vec![1.0; n + 1] }
    }

    /// The event `{X = k}`.
    pub fn point(n: usize, k: usize) -> Self {
        let mut weights = vec![0.0; n + 1];
        weights[k] = 1.0;
        ConditioningEvent { weights }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn probability(&self, base: &DiscreteDistribution) -> Result<f64, ProbError> {
        if self.weights.len() != base.pmf.len() {
            return Err(ProbError::LengthMismatch(base.pmf.len(), self.weights.len()));
        }
        Ok(base.pmf.iter().zip(&self.weights).map(|(p, w)| p * w).sum())
    }
}

/// `Bin(n, p)`; log-space evaluation above `n = 50`.
pub fn binomial(n: usize, p: f64) -> Result<DiscreteDistribution, ProbError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(ProbError::ProbabilityOutOfRange(p));
    }
    if p == 0.0 || p == 1.0 {
        let k = if p == 0.0 { 0 } else { n };
        let mut pmf = vec![0.0; n + 1];
        pmf[k] = 1.0;
        return Ok(DiscreteDistribution { pmf });
    }
    let pmf = (0..=n)
        .map(|k| {
            if n <= 50 {
                choose_f64(n as u64, k as u64) * p.powi(k as i32) * (1.0 - p).powi((n - k) as i32)
            } else {
                (ln_choose(n as u64, k as u64) + k as f64 * p.ln() + (n - k) as f64 * (-p).ln_1p())
                    .exp()
            }
        })
        .collect();
    Ok(DiscreteDistribution { pmf })
}

/// `Q_i = pmf_i w_i / P[A]` together with `P[A]`.
pub fn condition(
    base: &DiscreteDistribution,
    event: &ConditioningEvent,
) -> Result<(DiscreteDistribution, f64), ProbError> {
    let prob = event.probability(base)?;
    if !(prob > 0.0) {
        return Err(ProbError::ZeroProbabilityEvent);
    }
    let pmf = base.pmf.iter().zip(&event.weights).map(|(p, w)| p * w / prob).collect();
    Ok((DiscreteDistribution { pmf }, prob))
}

/// Optimized Chernoff bound on `P[A]` for a mean shift from `np` to `ns`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChernoffBound {
    /// `ln((1-p) s / ((1-s) p))`; `±inf` at `s ∈ {0, 1}`.
    pub t_opt: f64,
    pub value: f64,
}

/// One-coordinate factor `E[e^{t X_0}] / e^{ts} = (1-p) e^{-ts} + p e^{t(1-s)}`.
pub fn chernoff_objective(p: f64, s: f64, t: f64) -> f64 {
    (1.0 - p) * (-t * s).exp() + p * (t * (1.0 - s)).exp()
}

// ln( p^s (1-p)^(1-s) / (s^s (1-s)^(1-s)) ), i.e. -KL(s || p)
fn log_shift_factor(p: f64, s: f64) -> f64 {
    xlogy(s, p) + xlogy(1.0 - s, 1.0 - p) - xlogy(s, s) - xlogy(1.0 - s, 1.0 - s)
}

pub fn chernoff_shift_bound(n: usize, p: f64, s: f64) -> Result<ChernoffBound, ProbError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(ProbError::ProbabilityOutOfRange(p));
    }
    if !(0.0..=1.0).contains(&s) {
        return Err(ProbError::ProbabilityOutOfRange(s));
    }
    let value = (n as f64 * log_shift_factor(p, s)).exp();
    let t_opt = if s == 0.0 {
        f64::NEG_INFINITY
    } else if s == 1.0 {
        f64::INFINITY
    } else {
        ((1.0 - p) * s / ((1.0 - s) * p)).ln()
    };
    if t_opt.is_finite() {
        let direct = chernoff_objective(p, s, t_opt).powi(n as i32);
        if (direct - value).abs() > 1e-12 * value.max(f64::MIN_POSITIVE) {
            return Err(ProbError::Internal(format!(
                "Chernoff closed form {value} disagrees with the objective at t_opt ({direct})"
            )));
        }
    }
    Ok(ChernoffBound { t_opt, value })
}

/// `C(n, ns) (s^s (1-s)^(1-s))^n` with `s = ns / n`; independent of `p`.
pub fn atom_lower_bound(n: usize, ns: usize) -> f64 {
    mean_atom(n as u64, ns as u64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MainLemmaReport {
    pub conditional_atom: f64,
    pub bound: f64,
    pub event_probability: f64,
    pub chernoff: ChernoffBound,
    pub atom_pass: bool,
    pub chernoff_pass: bool,
    pub pass: bool,
}

fn check_target(n: usize, ns: usize) -> Result<(), ProbError> {
    if ns > n {
        Err(ProbError::TargetOutOfRange { ns, n })
    } else {
        Ok(())
    }
}

pub fn verify_main_lemma(
    n: usize,
    p: f64,
    ns: usize,
    event: &ConditioningEvent,
) -> Result<MainLemmaReport, ProbError> {
    check_target(n, ns)?;
    let base = binomial(n, p)?;
    let (q, prob) = condition(&base, event)?;
    let w = event.weights[ns];
    if (w - 1.0).abs() > 1e-12 {
        return Err(ProbError::AtomNotCertain { index: ns, weight: w });
    }
    let mean = q.mean();
    if (mean - ns as f64).abs() > MEAN_TOL {
        return Err(ProbError::MeanMismatch { expected: ns, got: mean });
    }
    let s = if n == 0 { 0.0 } else { ns as f64 / n as f64 };
    let chernoff = chernoff_shift_bound(n, p, s)?;
    let bound = atom_lower_bound(n, ns);
    let conditional_atom = q.pmf[ns];
    let atom_pass = conditional_atom >= bound - LEMMA_SLACK;
    let chernoff_pass = prob <= chernoff.value + LEMMA_SLACK;
    Ok(MainLemmaReport {
        conditional_atom,
        bound,
        event_probability: prob,
        chernoff,
        atom_pass,
        chernoff_pass,
        pass: atom_pass && chernoff_pass,
    })
}

/// Minimizer of the conditional atom over all admissible events.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalEvent {
    pub min_conditional_atom: f64,
    pub event: ConditioningEvent,
    /// `P[A]` of the minimizing event.
    pub event_probability: f64,
    /// Whether the enumeration ran in exact rational arithmetic.
    pub exact: bool,
}

// Candidate vertex: ones on [lo, hi], optional fractional weight θ at `frac`.
struct Vertex<T> {
    lo: usize,
    hi: usize,
    frac: Option<(usize, T)>,
    mass: T,
}

trait Field:
    Clone
    + PartialOrd
    + Zero
    + One
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Div<Output = Self>
    + std::ops::Neg<Output = Self>
{
    fn as_f64(&self) -> f64;
}

impl Field for f64 {
    fn as_f64(&self) -> f64 {
        *self
    }
}

impl Field for BigRational {
    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

// Maximizes P[A] = Σ pmf_i w_i subject to Σ pmf_i w_i (i - ns) = 0, w_ns = 1, w ∈ [0,1].
// An optimal vertex has at most one fractional weight, and complementary
// slackness makes the accepted set an interval around ns; every interval with
// one optional fractional endpoint neighbour is enumerated.
fn best_vertex<T: Field>(pmf: &[T], ns: usize) -> Vertex<T> {
    let n = pmf.len() - 1;
    let moment: Vec<T> = pmf
        .iter()
        .enumerate()
        .map(|(i, p)| p.clone() * (from_i64::<T>(i as i64) - from_i64::<T>(ns as i64)))
        .collect();
    let mut pre_mass = vec![T::zero(); n + 2];
    let mut pre_moment = vec![T::zero(); n + 2];
    for i in 0..=n {
        pre_mass[i + 1] = pre_mass[i].clone() + pmf[i].clone();
        pre_moment[i + 1] = pre_moment[i].clone() + moment[i].clone();
    }
    let mut best: Option<Vertex<T>> = None;
    let mut consider = |v: Vertex<T>| {
        if best.as_ref().is_none_or(|b| v.mass > b.mass) {
            best = Some(v);
        }
    };
    for lo in 0..=ns {
        for hi in ns..=n {
            let mass = pre_mass[hi + 1].clone() - pre_mass[lo].clone();
            let mom = pre_moment[hi + 1].clone() - pre_moment[lo].clone();
            if mom.is_zero() {
                consider(Vertex { lo, hi, frac: None, mass: mass.clone() });
            }
            let neighbours = [lo.checked_sub(1), (hi < n).then_some(hi + 1)];
            for f in neighbours.into_iter().flatten() {
                if moment[f].is_zero() {
                    continue;
                }
                let theta = -(mom.clone() / moment[f].clone());
                if theta >= T::zero() && theta <= T::one() {
                    let total = mass.clone() + theta.clone() * pmf[f].clone();
                    consider(Vertex { lo, hi, frac: Some((f, theta)), mass: total });
                }
            }
        }
    }
    best.expect("the point event {ns} is always feasible")
}

fn from_i64<T: Field>(v: i64) -> T {
    let mut acc = T::zero();
    let one = T::one();
    for _ in 0..v.unsigned_abs() {
        acc = acc + one.clone();
    }
    if v < 0 {
        -acc
    } else {
        acc
    }
}

fn vertex_event<T: Field>(v: &Vertex<T>, n: usize) -> ConditioningEvent {
    let mut weights = vec![0.0; n + 1];
    for w in &mut weights[v.lo..=v.hi] {
        *w = 1.0;
    }
    if let Some((f, theta)) = &v.frac {
        weights[*f] = theta.as_f64().clamp(0.0, 1.0);
    }
    ConditioningEvent { weights }
}

/// Smallest `P[X = ns | A]` over events with `w_ns = 1` and conditional mean `ns`.
pub fn extremal_event_oracle(n: usize, p: f64, ns: usize) -> Result<ExtremalEvent, ProbError> {
    check_target(n, ns)?;
    if !(p > 0.0 && p < 1.0) {
        return Err(ProbError::ProbabilityOutOfRange(p));
    }
    if n > ORACLE_MAX_N {
        return Err(ProbError::OracleTooLarge { n, max: ORACLE_MAX_N });
    }
    if n <= ORACLE_EXACT_MAX_N {
        let pq = BigRational::from_float(p).expect("finite p");
        let one = BigRational::one();
        let pmf: Vec<BigRational> = (0..=n)
            .map(|k| {
                BigRational::from_integer(choose_big(n as u64, k as u64))
                    * num_traits::pow(pq.clone(), k)
                    * num_traits::pow(&one - &pq, n - k)
            })
            .collect();
        let v = best_vertex(&pmf, ns);
        let min = (&pmf[ns] / &v.mass).to_f64().unwrap_or(f64::NAN);
        Ok(ExtremalEvent {
            min_conditional_atom: min,
            event: vertex_event(&v, n),
            event_probability: v.mass.as_f64(),
            exact: true,
        })
    } else {
        let pmf = binomial(n, p)?.pmf;
        let v = best_vertex(&pmf, ns);
        Ok(ExtremalEvent {
            min_conditional_atom: pmf[ns] / v.mass,
            event: vertex_event(&v, n),
            event_probability: v.mass,
            exact: false,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenyiOrder {
    One,
    Infinity,
}

/// `D_1(P‖Q) = Σ P_i ln(P_i/Q_i)` or `D_∞(P‖Q) = ln max_{P_i>0} P_i/Q_i`;
/// `+inf` when `P` charges an outcome `Q` does not.
pub fn renyi_divergence(
    p: &DiscreteDistribution,
    q: &DiscreteDistribution,
    order: RenyiOrder,
) -> Result<f64, ProbError> {
    if p.pmf.len() != q.pmf.len() {
        return Err(ProbError::LengthMismatch(p.pmf.len(), q.pmf.len()));
    }
    let pairs = p.pmf.iter().zip(&q.pmf).filter(|(pi, _)| **pi > 0.0);
    Ok(match order {
        RenyiOrder::One => {
            let mut acc = 0.0;
            for (pi, qi) in pairs {
                if *qi == 0.0 {
                    return Ok(f64::INFINITY);
                }
                acc += pi * (pi / qi).ln();
            }
            acc.max(0.0)
        }
        RenyiOrder::Infinity => {
            let mut best = 0.0f64;
            for (pi, qi) in pairs {
                if *qi == 0.0 {
                    return Ok(f64::INFINITY);
                }
                best = best.max(pi / qi);
            }
            best.ln().max(0.0)
        }
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DinfIdentityReport {
    /// `D_∞(Q‖P)` with `Q` the conditioned law.
    pub d_inf: f64,
    pub event_probability: f64,
    /// `e^{-D_∞(Q‖P)}`
    pub exp_neg_d_inf: f64,
    pub full_weight: bool,
    /// Exact identity when some weight is 1, otherwise `e^{-D_∞} >= P[A]`.
    pub holds: bool,
}

pub fn dinf_event_identity(
    base: &DiscreteDistribution,
    event: &ConditioningEvent,
) -> Result<DinfIdentityReport, ProbError> {
    let (q, prob) = condition(base, event)?;
    let d_inf = renyi_divergence(&q, base, RenyiOrder::Infinity)?;
    let exp_neg_d_inf = (-d_inf).exp();
    let full_weight = event.weights.iter().any(|&w| w == 1.0);
    let holds = if full_weight {
        (exp_neg_d_inf - prob).abs() <= 1e-12
    } else {
        exp_neg_d_inf >= prob - 1e-12
    };
    Ok(DinfIdentityReport { d_inf, event_probability: prob, exp_neg_d_inf, full_weight, holds })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceCheck {
    /// `D_1(Bin(n, s) ‖ Bin(n, p))`
    pub shifted_d1: f64,
    /// `D_∞(Q ‖ Bin(n, p))`
    pub conditioned_dinf: f64,
    pub pass: bool,
    /// `D_1(Bin(n, p) ‖ Q)`, reported only.
    pub literal_d1: f64,
    /// Same as `conditioned_dinf`; the right side of the reported pair.
    pub literal_dinf: f64,
}

pub fn divergence_inequality_check(
    n: usize,
    p: f64,
    ns: usize,
    event: &ConditioningEvent,
) -> Result<DivergenceCheck, ProbError> {
    check_target(n, ns)?;
    let base = binomial(n, p)?;
    let (q, _) = condition(&base, event)?;
    let mean = q.mean();
    if (mean - ns as f64).abs() > MEAN_TOL {
        return Err(ProbError::MeanMismatch { expected: ns, got: mean });
    }
    let s = if n == 0 { 0.0 } else { ns as f64 / n as f64 };
    let shifted = binomial(n, s)?;
    let shifted_d1 = renyi_divergence(&shifted, &base, RenyiOrder::One)?;
    let conditioned_dinf = renyi_divergence(&q, &base, RenyiOrder::Infinity)?;
    let literal_d1 = renyi_divergence(&base, &q, RenyiOrder::One)?;
    Ok(DivergenceCheck {
        shifted_d1,
        conditioned_dinf,
        pass: shifted_d1 <= conditioned_dinf + LEMMA_SLACK,
        literal_d1,
        literal_dinf: conditioned_dinf,
    })
}

/// `Π_i (p_i^{s_i} (1-p_i)^{1-s_i}) / (s_i^{s_i} (1-s_i)^{1-s_i})`.
pub fn bernoulli_product_bound(p: &[f64], s: &[f64]) -> Result<f64, ProbError> {
    if p.len() != s.len() {
        return Err(ProbError::LengthMismatch(p.len(), s.len()));
    }
    let mut acc = 0.0;
    for (&pi, &si) in p.iter().zip(s) {
        if !(pi > 0.0 && pi < 1.0) {
            return Err(ProbError::ProbabilityOutOfRange(pi));
        }
        if !(0.0..=1.0).contains(&si) {
            return Err(ProbError::ProbabilityOutOfRange(si));
        }
        acc += log_shift_factor(pi, si);
    }
    Ok(acc.exp())
}

/// One row of the oracle-versus-bound sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub p: f64,
    pub ns: usize,
    pub oracle_min: f64,
    pub bound: f64,
    pub chernoff: f64,
    pub oracle_event_probability: f64,
    pub pass: bool,
}

/// Oracle sweep over `n ∈ 0..=nmax`, `p ∈ pgrid`, `ns ∈ 0..=n`, sorted by `(n, p, ns)`.
pub fn sweep(nmax: usize, pgrid: &[f64]) -> Result<Vec<SweepRow>, ProbError> {
    let mut grid = pgrid.to_vec();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let mut rows = Vec::new();
    for n in 0..=nmax {
        for &p in &grid {
            for ns in 0..=n {
                let oracle = extremal_event_oracle(n, p, ns)?;
                let bound = atom_lower_bound(n, ns);
                let s = if n == 0 { 0.0 } else { ns as f64 / n as f64 };
                let chernoff = chernoff_shift_bound(n, p, s)?.value;
                let pass = oracle.min_conditional_atom >= bound - LEMMA_SLACK
                    && oracle.event_probability <= chernoff + LEMMA_SLACK;
                rows.push(SweepRow {
                    n,
                    p,
                    ns,
                    oracle_min: oracle.min_conditional_atom,
                    bound,
                    chernoff,
                    oracle_event_probability: oracle.event_probability,
                    pass,
                });
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    // Full vertex enumeration: every 0/1 pattern with w_ns = 1 and at most one
    // fractional coordinate solving the moment equation.
    fn brute_force_oracle(n: usize, p: f64, ns: usize) -> f64 {
        let pmf = binomial(n, p).unwrap().pmf;
        let others: Vec<usize> = (0..=n).filter(|&i| i != ns).collect();
        let mut best = pmf[ns];
        for mask in 0u32..(1 << others.len()) {
            let mut mass = pmf[ns];
            let mut mom = 0.0;
            for (b, &i) in others.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    mass += pmf[i];
                    mom += pmf[i] * (i as f64 - ns as f64);
                }
            }
            if mom.abs() < 1e-15 {
                best = best.max(mass);
            }
            for (b, &f) in others.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    continue;
                }
                let c = pmf[f] * (f as f64 - ns as f64);
                let theta = -mom / c;
                if (0.0..=1.0).contains(&theta) {
                    best = best.max(mass + theta * pmf[f]);
                }
            }
        }
        pmf[ns] / best
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(2, 0.5).unwrap().pmf(), &[0.25, 0.5, 0.25]);
        let b = binomial(1, 0.3).unwrap();
        assert!(close(b.pmf()[0], 0.7, 1e-15) && close(b.pmf()[1], 0.3, 1e-15));
        let b = binomial(4, 0.5).unwrap();
        for (x, e) in b.pmf().iter().zip([1.0, 4.0, 6.0, 4.0, 1.0]) {
            assert!(close(*x, e / 16.0, 1e-15));
        }
        assert!(matches!(binomial(3, 1.5), Err(ProbError::ProbabilityOutOfRange(_))));
        // log-space path
        let big = binomial(200, 0.3).unwrap();
        assert!(close(big.pmf().iter().sum::<f64>(), 1.0, 1e-12));
        assert!(close(big.mean(), 60.0, 1e-9));
    }

    #[test]
    fn condition_examples() {
        let base = binomial(2, 0.5).unwrap();
        let (q, pa) = condition(&base, &ConditioningEvent::full(2)).unwrap();
        assert_eq!((q.pmf().to_vec(), pa), (base.pmf().to_vec(), 1.0));
        let (q, pa) = condition(&base, &ConditioningEvent::point(2, 1)).unwrap();
        assert_eq!((q.pmf().to_vec(), pa), (vec![0.0, 1.0, 0.0], 0.5));
        let (q, pa) = condition(&base, &ConditioningEvent::new(vec![1.0, 1.0, 0.0]).unwrap()).unwrap();
        assert!(close(q.pmf()[0], 1.0 / 3.0, 1e-15) && close(q.pmf()[1], 2.0 / 3.0, 1e-15));
        assert_eq!(pa, 0.75);
        let none = ConditioningEvent::new(vec![0.0; 3]).unwrap();
        assert_eq!(condition(&base, &none), Err(ProbError::ZeroProbabilityEvent));
        assert!(ConditioningEvent::new(vec![1.5]).is_err());
    }

    #[test]
    fn chernoff_examples() {
        let b = chernoff_shift_bound(1, 0.5, 0.75).unwrap();
        assert!(close(b.t_opt, 3f64.ln(), 1e-15));
        assert!(close(b.value, 2.0 * 3f64.powf(-0.75), 1e-15));
        assert!(close(b.value, 0.877383, 1e-6));
        let b = chernoff_shift_bound(7, 0.3, 0.3).unwrap();
        assert_eq!(b.t_opt, 0.0);
        assert!(close(b.value, 1.0, 1e-15));
        let b = chernoff_shift_bound(4, 0.5, 0.75).unwrap();
        assert!(close(b.value, (2.0 * 3f64.powf(-0.75)).powi(4), 1e-15));
        assert!(close(b.value, 0.59259, 1e-5));
        assert!(chernoff_shift_bound(3, 0.0, 0.5).is_err());
        // s at the edges: value (1-p)^n and p^n
        let b = chernoff_shift_bound(3, 0.4, 0.0).unwrap();
        assert_eq!(b.t_opt, f64::NEG_INFINITY);
        assert!(close(b.value, 0.6f64.powi(3), 1e-15));
        assert!(close(chernoff_shift_bound(3, 0.4, 1.0).unwrap().value, 0.4f64.powi(3), 1e-15));
    }

    #[test]
    fn atom_bound_examples() {
        assert!(close(atom_lower_bound(2, 1), 0.5, 1e-15));
        assert!(close(atom_lower_bound(4, 2), 0.375, 1e-15));
        assert_eq!(atom_lower_bound(3, 3), 1.0);
    }

    #[test]
    fn main_lemma_examples() {
        let r = verify_main_lemma(2, 0.5, 1, &ConditioningEvent::point(2, 1)).unwrap();
        assert!(r.pass);
        assert_eq!(r.conditional_atom, 1.0);
        let r = verify_main_lemma(2, 0.5, 1, &ConditioningEvent::full(2)).unwrap();
        assert!(r.pass);
        assert!(close(r.conditional_atom, r.bound, 1e-15));
        let oracle = extremal_event_oracle(4, 0.3, 2).unwrap();
        let r = verify_main_lemma(4, 0.3, 2, &oracle.event).unwrap();
        assert!(r.pass && r.conditional_atom >= 0.375);
        assert!(close(r.conditional_atom, oracle.min_conditional_atom, 1e-12));
    }

    #[test]
    fn main_lemma_precondition_errors() {
        let mean_off = ConditioningEvent::new(vec![1.0, 1.0, 0.0]).unwrap();
        assert!(matches!(verify_main_lemma(2, 0.5, 1, &mean_off), Err(ProbError::MeanMismatch { .. })));
        let atom_off = ConditioningEvent::new(vec![1.0, 0.5, 1.0]).unwrap();
        assert!(matches!(verify_main_lemma(2, 0.5, 1, &atom_off), Err(ProbError::AtomNotCertain { .. })));
    }

    #[test]
    fn oracle_examples() {
        let o = extremal_event_oracle(2, 0.5, 1).unwrap();
        assert!(close(o.min_conditional_atom, 0.5, 1e-15));
        assert_eq!(o.event.weights(), &[1.0, 1.0, 1.0]);
        let o = extremal_event_oracle(2, 0.5, 0).unwrap();
        assert_eq!(o.min_conditional_atom, 1.0);
        assert_eq!(o.event.weights(), &[1.0, 0.0, 0.0]);
        let o = extremal_event_oracle(4, 0.5, 2).unwrap();
        assert!(close(o.min_conditional_atom, 0.375, 1e-15));
        assert!(o.exact);
        assert!(!extremal_event_oracle(15, 0.5, 3).unwrap().exact);
        assert!(matches!(extremal_event_oracle(21, 0.5, 3), Err(ProbError::OracleTooLarge { .. })));
    }

    #[test]
    fn oracle_matches_full_vertex_enumeration() {
        for n in 1..=8 {
            for p in [0.1, 0.35, 0.5, 0.8] {
                for ns in 0..=n {
                    let fast = extremal_event_oracle(n, p, ns).unwrap().min_conditional_atom;
                    let slow = brute_force_oracle(n, p, ns);
                    assert!(close(fast, slow, 1e-12), "n={n} p={p} ns={ns}: {fast} vs {slow}");
                }
            }
        }
    }

    #[test]
    fn oracle_event_is_admissible() {
        for (n, p, ns) in [(6, 0.2, 4), (9, 0.7, 2), (14, 0.45, 9)] {
            let o = extremal_event_oracle(n, p, ns).unwrap();
            let base = binomial(n, p).unwrap();
            let (q, pa) = condition(&base, &o.event).unwrap();
            assert!(close(q.mean(), ns as f64, 1e-12));
            assert_eq!(o.event.weights()[ns], 1.0);
            assert!(close(pa, o.event_probability, 1e-12));
            assert!(close(q.pmf()[ns], o.min_conditional_atom, 1e-12));
        }
    }

    #[test]
    fn renyi_examples() {
        let p = binomial(2, 0.5).unwrap();
        for order in [RenyiOrder::One, RenyiOrder::Infinity] {
            assert_eq!(renyi_divergence(&p, &p, order).unwrap(), 0.0);
        }
        let q = DiscreteDistribution::new(vec![0.0, 1.0, 0.0]).unwrap();
        assert!(close(renyi_divergence(&q, &p, RenyiOrder::Infinity).unwrap(), 2f64.ln(), 1e-15));
        assert_eq!(renyi_divergence(&p, &q, RenyiOrder::One).unwrap(), f64::INFINITY);
        let a = binomial(2, 0.25).unwrap();
        let d = renyi_divergence(&a, &p, RenyiOrder::One).unwrap();
        let expected = 2.0 * (0.25 * (0.25f64 / 0.5).ln() + 0.75 * (0.75f64 / 0.5).ln());
        assert!(close(d, expected, 1e-15));
        assert!(close(d, 0.261624, 1e-6));
    }

    #[test]
    fn dinf_identity_examples() {
        let base = binomial(2, 0.5).unwrap();
        let r = dinf_event_identity(&base, &ConditioningEvent::point(2, 1)).unwrap();
        assert!(r.holds && close(r.d_inf, 2f64.ln(), 1e-15) && close(r.exp_neg_d_inf, 0.5, 1e-15));
        let r = dinf_event_identity(&base, &ConditioningEvent::full(2)).unwrap();
        assert!(r.holds && r.d_inf == 0.0 && r.event_probability == 1.0);
        let r = dinf_event_identity(&base, &ConditioningEvent::new(vec![1.0, 1.0, 0.0]).unwrap()).unwrap();
        assert!(r.holds && close(r.exp_neg_d_inf, 0.75, 1e-15));
        // no full-weight outcome: inequality only
        let r = dinf_event_identity(&base, &ConditioningEvent::new(vec![0.5, 0.5, 0.0]).unwrap()).unwrap();
        assert!(!r.full_weight && r.holds);
        assert!(r.exp_neg_d_inf > r.event_probability);
    }

    #[test]
    fn divergence_check_examples() {
        let r = divergence_inequality_check(2, 0.5, 1, &ConditioningEvent::point(2, 1)).unwrap();
        assert!(r.pass && r.shifted_d1 == 0.0 && close(r.conditioned_dinf, 2f64.ln(), 1e-15));
        assert_eq!(r.literal_d1, f64::INFINITY);

        let oracle = extremal_event_oracle(2, 0.25, 1).unwrap();
        let r = divergence_inequality_check(2, 0.25, 1, &oracle.event).unwrap();
        // D_1(Bin(2,1/2) ‖ Bin(2,1/4)) = 2 KL(1/2 ‖ 1/4)
        let kl = 0.5 * (0.5f64 / 0.25).ln() + 0.5 * (0.5f64 / 0.75).ln();
        assert!(close(r.shifted_d1, 2.0 * kl, 1e-14));
        assert!(close(r.shifted_d1, 0.287682, 1e-6));
        assert!(r.pass);

        let r = divergence_inequality_check(3, 0.5, 1, &ConditioningEvent::full(3));
        assert!(matches!(r, Err(ProbError::MeanMismatch { .. })));
        let r = divergence_inequality_check(4, 0.5, 2, &ConditioningEvent::full(4)).unwrap();
        assert!(r.pass && r.shifted_d1 == 0.0 && r.conditioned_dinf == 0.0);
    }

    #[test]
    fn bernoulli_product_examples() {
        assert!(close(bernoulli_product_bound(&[0.2, 0.7], &[0.2, 0.7]).unwrap(), 1.0, 1e-15));
        assert!(close(bernoulli_product_bound(&[0.5], &[0.75]).unwrap(), 2.0 * 3f64.powf(-0.75), 1e-15));
        let two = bernoulli_product_bound(&[0.5, 0.5], &[0.75, 0.75]).unwrap();
        assert!(close(two, chernoff_shift_bound(2, 0.5, 0.75).unwrap().value, 1e-15));
        assert!(bernoulli_product_bound(&[1.0], &[0.5]).is_err());
        assert!(bernoulli_product_bound(&[0.5], &[0.5, 0.5]).is_err());
    }

    #[test]
    fn sweep_is_sorted_and_passes() {
        let rows = sweep(4, &[0.75, 0.25, 0.5]).unwrap();
        assert_eq!(rows.len(), 3 * (1 + 2 + 3 + 4 + 5));
        assert!(rows.iter().all(|r| r.pass));
        assert!(rows.windows(2).all(|w| (w[0].n, w[0].p, w[0].ns) <= (w[1].n, w[1].p, w[1].ns)));
    }
}

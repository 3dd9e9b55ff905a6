//! Capacity `cap_α(P) = inf_{x > 0} P(x) / x^α`.
//!
//! With `x = e^y` the ratio becomes `exp(g(y))` for the convex function
//! `g(y) = log Σ_e a_e exp(⟨e, y⟩) − ⟨α, y⟩`, minimized by damped Newton from
//! `y = 0`. Whether the infimum is positive, attained, or only approached at
//! infinity is decided exactly from the position of `α` relative to the Newton
//! polytope of `P`.

use nalgebra::{DMatrix, DVector};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::lp::{LinearProgram, LpOutcome};
use crate::poly::{PolyError, SparsePolynomial, UnivariateCoefficients};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CapacityError {
    #[error("direction has {got} entries, polynomial has {expected} variables")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("direction entry {index} is {value}; entries must be finite and nonnegative")]
    InvalidDirection { index: usize, value: f64 },
    #[error("objective needs a nonzero polynomial")]
    EmptyPolynomial,
    #[error("exponent {k} outside 0..={n}")]
    ExponentOutOfRange { k: usize, n: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Nonnegative exponent direction `α`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionVector(Vec<f64>);

impl DirectionVector {
    pub fn new(alpha: Vec<f64>) -> Result<Self, CapacityError> {
        if let Some((index, &value)) =
            alpha.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v >= 0.0))
        {
            return Err(CapacityError::InvalidDirection { index, value });
        }
        Ok(DirectionVector(alpha))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Copy without entry `i`.
    pub fn without(&self, i: usize) -> DirectionVector {
        let mut v = self.0.clone();
        v.remove(i);
        DirectionVector(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Stop when `‖∇g‖_∞` drops to this level.
    pub tol_grad: f64,
    pub max_iter: usize,
    /// `‖y‖_∞` beyond which the iterate is declared escaping to the boundary.
    pub divergence_radius: f64,
    pub armijo: f64,
    pub backtrack: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol_grad: 1e-10,
            max_iter: 500,
            divergence_radius: 60.0,
            armijo: 0.25,
            backtrack: 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolytopePosition {
    Interior,
    Boundary,
    Outside,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapacityStatus {
    Attained,
    BoundaryInfimum,
    ZeroCapacity,
    FailedToConverge,
}

impl CapacityStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CapacityStatus::Attained => "attained",
            CapacityStatus::BoundaryInfimum => "boundary_infimum",
            CapacityStatus::ZeroCapacity => "zero_capacity",
            CapacityStatus::FailedToConverge => "failed_to_converge",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CapacityResult {
    pub value: f64,
    /// Minimizing `x` when the infimum is attained.
    pub minimizer: Option<Vec<f64>>,
    pub gradient_norm: f64,
    pub status: CapacityStatus,
    pub iterations: usize,
}

impl CapacityResult {
    fn zero() -> Self {
        CapacityResult {
            value: 0.0,
            minimizer: None,
            gradient_norm: 0.0,
            status: CapacityStatus::ZeroCapacity,
            iterations: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct PolytopeClass {
    position: PolytopePosition,
    // α is a strictly positive combination of every support point
    relative_interior: bool,
}

fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot[col];
            for (v, pv) in row.iter_mut().zip(&pivot) {
                *v -= &f * pv;
            }
        }
        rank += 1;
    }
    rank
}

fn classify(p: &SparsePolynomial, alpha: &DirectionVector) -> PolytopeClass {
    let m = p.num_vars();
    let support: Vec<Vec<BigRational>> = p
        .terms()
        .map(|(e, _)| e.iter().map(|&k| BigRational::from_integer(k.into())).collect())
        .collect();
    let target: Vec<BigRational> =
        alpha.as_slice().iter().map(|&a| BigRational::from_float(a).expect("finite")).collect();
    let s = support.len();

    // max ε  s.t.  Σ_e (μ_e + ε) e = α,  Σ_e (μ_e + ε) = 1,  μ, ε >= 0
    let mut a = Vec::with_capacity(m + 1);
    for j in 0..m {
        let mut row: Vec<BigRational> = support.iter().map(|e| e[j].clone()).collect();
        row.push(support.iter().map(|e| e[j].clone()).sum());
        a.push(row);
    }
    let mut last = vec![BigRational::from_integer(1.into()); s];
    last.push(BigRational::from_integer((s as i64).into()));
    a.push(last);
    let mut b = target;
    b.push(BigRational::from_integer(1.into()));
    let mut c = vec![BigRational::zero(); s];
    c.push(BigRational::from_integer(1.into()));

    let relative_interior = match (LinearProgram { a, b, c }).solve() {
        LpOutcome::Optimal { value, .. } => value.is_positive(),
        LpOutcome::Infeasible => {
            return PolytopeClass { position: PolytopePosition::Outside, relative_interior: false }
        }
        LpOutcome::Unbounded => unreachable!("ε is bounded by the simplex row"),
    };
    let diffs: Vec<Vec<BigRational>> = support
        .iter()
        .skip(1)
        .map(|e| e.iter().zip(&support[0]).map(|(x, y)| x - y).collect())
        .collect();
    let full = rank(diffs) + 1 >= m;
    let position = if relative_interior && full {
        PolytopePosition::Interior
    } else {
        PolytopePosition::Boundary
    };
    PolytopeClass { position, relative_interior }
}

/// Position of `α` relative to `conv(support(P))`, decided in exact arithmetic.
/// `Interior` means interior within the hyperplane `Σ x_i = deg P`.
pub fn newton_polytope_position(
    p: &SparsePolynomial,
    alpha: &DirectionVector,
) -> Result<PolytopePosition, CapacityError> {
    if alpha.len() != p.num_vars() {
        return Err(CapacityError::DimensionMismatch { expected: p.num_vars(), got: alpha.len() });
    }
    if p.is_zero() {
        return Err(CapacityError::EmptyPolynomial);
    }
    Ok(classify(p, alpha).position)
}

/// Value, gradient and Hessian of the log-transformed capacity objective.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveEval {
    pub value: f64,
    pub gradient: Vec<f64>,
    pub hessian: Vec<Vec<f64>>,
}

// log Σ_k exp(log_coeff_k + ⟨point_k, y⟩) − ⟨alpha, y⟩
struct LogSumExp {
    points: Vec<Vec<f64>>,
    log_coeffs: Vec<f64>,
    alpha: Vec<f64>,
}

impl LogSumExp {
    fn dim(&self) -> usize {
        self.alpha.len()
    }

    fn value(&self, y: &[f64]) -> f64 {
        let s: Vec<f64> = self
            .points
            .iter()
            .zip(&self.log_coeffs)
            .map(|(e, lc)| lc + dot(e, y))
            .collect();
        let mx = s.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        mx + s.iter().map(|v| (v - mx).exp()).sum::<f64>().ln() - dot(&self.alpha, y)
    }

    fn eval(&self, y: &[f64]) -> (f64, DVector<f64>, DMatrix<f64>) {
        let d = self.dim();
        let s: Vec<f64> = self
            .points
            .iter()
            .zip(&self.log_coeffs)
            .map(|(e, lc)| lc + dot(e, y))
            .collect();
        let mx = s.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let w: Vec<f64> = s.iter().map(|v| (v - mx).exp()).collect();
        let z: f64 = w.iter().sum();
        let value = mx + z.ln() - dot(&self.alpha, y);
        let mut mean = DVector::zeros(d);
        for (e, wk) in self.points.iter().zip(&w) {
            for j in 0..d {
                mean[j] += wk / z * e[j];
            }
        }
        let mut hess = DMatrix::zeros(d, d);
        for (e, wk) in self.points.iter().zip(&w) {
            let mu = wk / z;
            for j in 0..d {
                let dj = e[j] - mean[j];
                for l in 0..d {
                    hess[(j, l)] += mu * dj * (e[l] - mean[l]);
                }
            }
        }
        let grad = mean - DVector::from_column_slice(&self.alpha);
        (value, grad, hess)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn full_objective(p: &SparsePolynomial, alpha: &[f64]) -> LogSumExp {
    let mut points = Vec::with_capacity(p.len());
    let mut log_coeffs = Vec::with_capacity(p.len());
    for (e, c) in p.terms() {
        points.push(e.iter().map(|&k| k as f64).collect());
        log_coeffs.push(c.to_f64().unwrap_or(f64::NAN).ln());
    }
    LogSumExp { points, log_coeffs, alpha: alpha.to_vec() }
}

/// `g(y)` with its gradient `E_μ[e] − α` and Hessian `Cov_μ(e)`.
pub fn log_objective(
    p: &SparsePolynomial,
    alpha: &DirectionVector,
    y: &[f64],
) -> Result<ObjectiveEval, CapacityError> {
    if p.is_zero() {
        return Err(CapacityError::EmptyPolynomial);
    }
    let m = p.num_vars();
    for got in [alpha.len(), y.len()] {
        if got != m {
            return Err(CapacityError::DimensionMismatch { expected: m, got });
        }
    }
    let (value, grad, hess) = full_objective(p, alpha.as_slice()).eval(y);
    Ok(ObjectiveEval {
        value,
        gradient: grad.iter().copied().collect(),
        hessian: (0..m).map(|j| (0..m).map(|l| hess[(j, l)]).collect()).collect(),
    })
}

struct Minimum {
    y: Vec<f64>,
    value: f64,
    gradient_norm: f64,
    iterations: usize,
    outcome: Outcome,
}

#[derive(PartialEq)]
enum Outcome {
    Converged,
    Escaped,
    Stalled,
}

fn newton_direction(grad: &DVector<f64>, hess: &DMatrix<f64>) -> DVector<f64> {
    let d = grad.len();
    let trace = hess.trace().max(f64::MIN_POSITIVE);
    let mut lambda = 0.0;
    loop {
        let reg = hess + DMatrix::identity(d, d) * lambda;
        if let Some(ch) = reg.cholesky() {
            let step = ch.solve(&(-grad));
            if step.iter().all(|v| v.is_finite()) {
                return step;
            }
        }
        lambda = if lambda == 0.0 { 1e-12 * trace } else { lambda * 10.0 };
    }
}

fn minimize(obj: &LogSumExp, opts: &SolverOptions) -> Minimum {
    let d = obj.dim();
    let mut y = vec![0.0; d];
    if d == 0 {
        return Minimum { value: obj.value(&y), y, gradient_norm: 0.0, iterations: 0, outcome: Outcome::Converged };
    }
    let mut iterations = 0;
    loop {
        let (f, grad, hess) = obj.eval(&y);
        let gnorm = grad.amax();
        let escaped = y.iter().any(|v| v.abs() > opts.divergence_radius);
        let outcome = if gnorm <= opts.tol_grad {
            Some(Outcome::Converged)
        } else if escaped {
            Some(Outcome::Escaped)
        } else if iterations >= opts.max_iter {
            Some(Outcome::Stalled)
        } else {
            None
        };
        if let Some(outcome) = outcome {
            return Minimum { y, value: f, gradient_norm: gnorm, iterations, outcome };
        }
        iterations += 1;

        let dir = newton_direction(&grad, &hess);
        let slope = grad.dot(&dir);
        // round-off allowance so the final quadratically convergent steps are not rejected
        let noise = 8.0 * f64::EPSILON * (1.0 + f.abs());
        let mut t = 1.0;
        let accepted = loop {
            let trial: Vec<f64> = y.iter().zip(dir.iter()).map(|(a, b)| a + t * b).collect();
            let ft = obj.value(&trial);
            if ft <= f + opts.armijo * t * slope + noise {
                break Some(trial);
            }
            t *= opts.backtrack;
            if t < 1e-20 {
                break None;
            }
        };
        match accepted {
            Some(next) => y = next,
            None => {
                return Minimum {
                    y,
                    value: f,
                    gradient_norm: gnorm,
                    iterations,
                    outcome: Outcome::Stalled,
                }
            }
        }
    }
}

fn finish(min: Minimum, relative_interior: bool, to_x: impl Fn(&[f64]) -> Vec<f64>) -> CapacityResult {
    let status = match min.outcome {
        Outcome::Converged if relative_interior => CapacityStatus::Attained,
        Outcome::Converged | Outcome::Escaped => CapacityStatus::BoundaryInfimum,
        Outcome::Stalled => CapacityStatus::FailedToConverge,
    };
    CapacityResult {
        value: min.value.exp(),
        minimizer: (status == CapacityStatus::Attained).then(|| to_x(&min.y)),
        gradient_norm: min.gradient_norm,
        status,
        iterations: min.iterations,
    }
}

pub fn capacity(p: &SparsePolynomial, alpha: &DirectionVector) -> Result<CapacityResult, CapacityError> {
    capacity_with(p, alpha, &SolverOptions::default())
}

pub fn capacity_with(
    p: &SparsePolynomial,
    alpha: &DirectionVector,
    opts: &SolverOptions,
) -> Result<CapacityResult, CapacityError> {
    let m = p.num_vars();
    if alpha.len() != m {
        return Err(CapacityError::DimensionMismatch { expected: m, got: alpha.len() });
    }
    if p.is_zero() {
        return Ok(CapacityResult::zero());
    }
    let class = classify(p, alpha);
    if class.position == PolytopePosition::Outside {
        return Ok(CapacityResult::zero());
    }
    if m == 0 {
        let c = p.terms().next().map(|(_, c)| c.to_f64().unwrap_or(f64::NAN)).unwrap_or(0.0);
        return Ok(CapacityResult {
            value: c,
            minimizer: Some(Vec::new()),
            gradient_norm: 0.0,
            status: CapacityStatus::Attained,
            iterations: 0,
        });
    }

    // g is invariant along the all-ones direction (α lies on the degree hyperplane),
    // so pin the last coordinate at zero and optimize the rest
    let full = full_objective(p, alpha.as_slice());
    let reduced = LogSumExp {
        points: full.points.iter().map(|e| e[..m - 1].to_vec()).collect(),
        log_coeffs: full.log_coeffs.clone(),
        alpha: alpha.as_slice()[..m - 1].to_vec(),
    };
    let mut min = minimize(&reduced, opts);
    let mut y_full = min.y.clone();
    y_full.push(0.0);
    let (_, grad_full, _) = full.eval(&y_full);
    min.gradient_norm = grad_full.amax();
    Ok(finish(min, class.relative_interior, |y| {
        y.iter().chain(std::iter::once(&0.0)).map(|v| v.exp()).collect()
    }))
}

/// `inf_{t > 0} Σ_j a_j t^(j − k)`.
pub fn univariate_capacity(a: &UnivariateCoefficients, k: usize) -> Result<CapacityResult, CapacityError> {
    univariate_capacity_with(a, k, &SolverOptions::default())
}

pub fn univariate_capacity_with(
    a: &UnivariateCoefficients,
    k: usize,
    opts: &SolverOptions,
) -> Result<CapacityResult, CapacityError> {
    let n = a.degree();
    if k > n {
        return Err(CapacityError::ExponentOutOfRange { k, n });
    }
    let Some((lo, hi)) = a.support_hull() else { return Ok(CapacityResult::zero()) };
    if k < lo || k > hi {
        return Ok(CapacityResult::zero());
    }
    let relative_interior = (lo < k && k < hi) || lo == hi;
    let mut points = Vec::new();
    let mut log_coeffs = Vec::new();
    for (j, &c) in a.coeffs().iter().enumerate() {
        if c > 0.0 {
            points.push(vec![j as f64]);
            log_coeffs.push(c.ln());
        }
    }
    let obj = LogSumExp { points, log_coeffs, alpha: vec![k as f64] };
    let min = minimize(&obj, opts);
    Ok(finish(min, relative_interior, |y| vec![y[0].exp()]))
}

//! Shared fixtures for the integration tests.

#![allow(dead_code)]

use lorcap::bounds::tilt_to_integer_mean;
use lorcap::poly::{SparsePolynomial, UnivariateCoefficients};
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn poly(m: usize, terms: &[(i64, &[u32])]) -> SparsePolynomial {
    SparsePolynomial::from_int_terms(m, terms).unwrap()
}

/// `((x1 + ... + xm) / m)^d`
pub fn power_of_mean(m: usize, d: usize) -> SparsePolynomial {
    SparsePolynomial::product_of_linear_forms(m, &vec![vec![q(1, m as i64); m]; d]).unwrap()
}

/// Random nonnegative integer linear form with at least one positive entry.
pub fn random_form(rng: &mut ChaCha8Rng, m: usize) -> Vec<BigRational> {
    loop {
        let form: Vec<BigRational> = (0..m).map(|_| q(rng.gen_range(0..=3), 1)).collect();
        if form.iter().any(|c| c > &q(0, 1)) {
            return form;
        }
    }
}

/// Product of `d` random nonnegative linear forms in `m` variables.
pub fn random_linear_product(rng: &mut ChaCha8Rng, m: usize, d: usize) -> SparsePolynomial {
    let forms: Vec<Vec<BigRational>> = (0..d).map(|_| random_form(rng, m)).collect();
    SparsePolynomial::product_of_linear_forms(m, &forms).unwrap()
}

/// `e_k(x1..xm)` for `1 <= k <= m <= max_m`.
pub fn elementary_fixtures(max_m: usize) -> Vec<(String, SparsePolynomial)> {
    let mut out = Vec::new();
    for m in 1..=max_m {
        for k in 1..=m {
            out.push((format!("e_{k}(m={m})"), SparsePolynomial::elementary_symmetric(m, k)));
        }
    }
    out
}

/// `count` random products of at most five forms in at most four variables.
pub fn product_fixtures(seed: u64, count: usize) -> Vec<(String, SparsePolynomial)> {
    let mut r = rng(seed);
    (0..count)
        .map(|idx| {
            let m = r.gen_range(1..=4);
            let d = r.gen_range(1..=5);
            (format!("product#{idx}(m={m},d={d})"), random_linear_product(&mut r, m, d))
        })
        .collect()
}

/// Random log-concave `b` on a contiguous support of at least three points,
/// mapped to `a_i = C(n,i) b_i`, normalized and tilted to an integer mean.
pub fn random_ulc_distribution(rng: &mut ChaCha8Rng, max_n: usize) -> (UnivariateCoefficients, usize) {
    let n = rng.gen_range(2..=max_n);
    let lo = rng.gen_range(0..=n - 2);
    let hi = rng.gen_range(lo + 2..=n);
    // decreasing increments make log b concave
    let mut steps: Vec<f64> = (lo..hi).map(|_| rng.gen_range(-3.0..3.0)).collect();
    steps.sort_by(|a, b| b.total_cmp(a));
    let mut log_b = vec![f64::NEG_INFINITY; n + 1];
    log_b[lo] = 0.0;
    for (j, s) in steps.iter().enumerate() {
        log_b[lo + j + 1] = log_b[lo + j] + s;
    }
    let top = log_b.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let a: Vec<f64> = log_b
        .iter()
        .enumerate()
        .map(|(i, lb)| if lb.is_finite() { lorcap::math::choose_f64(n as u64, i as u64) * (lb - top).exp() } else { 0.0 })
        .collect();
    let total: f64 = a.iter().sum();
    let a = UnivariateCoefficients::new(a.iter().map(|v| v / total).collect()).unwrap();
    tilt_to_integer_mean(&a).unwrap()
}

/// Homogeneous polynomial of degree `d` with up to `terms` random monomials
/// and positive rational coefficients.
pub fn random_homogeneous(rng: &mut ChaCha8Rng, m: usize, d: u32, terms: usize) -> SparsePolynomial {
    let list: Vec<(Vec<u32>, BigRational)> = (0..terms.max(1))
        .map(|_| {
            let mut e = vec![0u32; m];
            for _ in 0..d {
                e[rng.gen_range(0..m)] += 1;
            }
            (e, q(rng.gen_range(1..=9), rng.gen_range(1..=4)))
        })
        .collect();
    SparsePolynomial::new(m, list).unwrap()
}

/// Random positive point.
pub fn random_point(rng: &mut ChaCha8Rng, m: usize) -> Vec<f64> {
    (0..m).map(|_| rng.gen_range(0.2..3.0)).collect()
}

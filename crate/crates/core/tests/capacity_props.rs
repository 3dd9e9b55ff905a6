mod common;

use common::{q, random_linear_product, random_point, rng};
use lorcap::capacity::{capacity, log_objective, CapacityStatus, DirectionVector};
use lorcap::poly::SparsePolynomial;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

// Lorentzian fixture with a direction on its degree hyperplane.
fn instance(seed: u64) -> (SparsePolynomial, DirectionVector) {
    let mut r = rng(seed);
    let m = r.gen_range(1..=4);
    let d = r.gen_range(1..=4);
    let p = random_linear_product(&mut r, m, d);
    let raw: Vec<f64> = (0..m).map(|_| r.gen_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let alpha = raw.iter().map(|v| v * d as f64 / total).collect();
    (p, DirectionVector::new(alpha).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scaling_covariance(seed in any::<u64>(), num in 1i64..=40, den in 1i64..=7) {
        let (p, alpha) = instance(seed);
        let c = q(num, den);
        let base = capacity(&p, &alpha).unwrap();
        let scaled = capacity(&p.scale(&c), &alpha).unwrap();
        let factor = num as f64 / den as f64;
        prop_assert_eq!(base.status, scaled.status);
        prop_assert!(rel_err(scaled.value, factor * base.value) <= 1e-9,
            "{} vs {}", scaled.value, factor * base.value);
    }

    #[test]
    fn value_never_exceeds_sampled_ratios(seed in any::<u64>()) {
        let (p, alpha) = instance(seed);
        let cap = capacity(&p, &alpha).unwrap();
        prop_assume!(cap.status != CapacityStatus::FailedToConverge);
        let mut r = rng(seed ^ 0x5a);
        for _ in 0..100 {
            let x = random_point(&mut r, p.num_vars());
            let ratio = p.evaluate(&x).unwrap()
                / x.iter().zip(alpha.as_slice()).map(|(xi, ai)| xi.powf(*ai)).product::<f64>();
            prop_assert!(ratio >= cap.value * (1.0 - 1e-6), "{} < {}", ratio, cap.value);
        }
    }

    #[test]
    fn objective_is_midpoint_convex(seed in any::<u64>()) {
        let (p, alpha) = instance(seed);
        let m = p.num_vars();
        let mut r = rng(seed ^ 0xc3);
        for _ in 0..50 {
            let a: Vec<f64> = (0..m).map(|_| r.gen_range(-3.0..3.0)).collect();
            let b: Vec<f64> = (0..m).map(|_| r.gen_range(-3.0..3.0)).collect();
            let mid: Vec<f64> = a.iter().zip(&b).map(|(x, y)| 0.5 * (x + y)).collect();
            let g = |y: &[f64]| log_objective(&p, &alpha, y).unwrap().value;
            prop_assert!(g(&mid) <= 0.5 * (g(&a) + g(&b)) + 1e-10);
        }
    }

    #[test]
    fn gradient_matches_central_differences(seed in any::<u64>()) {
        let (p, alpha) = instance(seed);
        let m = p.num_vars();
        let mut r = rng(seed ^ 0xfd);
        let y: Vec<f64> = (0..m).map(|_| r.gen_range(-1.5..1.5)).collect();
        let eval = log_objective(&p, &alpha, &y).unwrap();
        let h = 1e-6;
        for j in 0..m {
            let (mut plus, mut minus) = (y.clone(), y.clone());
            plus[j] += h;
            minus[j] -= h;
            let fd = (log_objective(&p, &alpha, &plus).unwrap().value
                - log_objective(&p, &alpha, &minus).unwrap().value) / (2.0 * h);
            prop_assert!((fd - eval.gradient[j]).abs() <= 1e-5);
        }
    }

    #[test]
    fn permutation_equivariance(seed in any::<u64>()) {
        let (p, alpha) = instance(seed);
        let m = p.num_vars();
        let mut perm: Vec<usize> = (0..m).collect();
        perm.shuffle(&mut rng(seed ^ 0x9e));
        let mut moved = vec![0.0; m];
        for (v, &target) in perm.iter().enumerate() {
            moved[target] = alpha.as_slice()[v];
        }
        let a = capacity(&p, &alpha).unwrap();
        let b = capacity(&p.permute(&perm), &DirectionVector::new(moved).unwrap()).unwrap();
        prop_assert_eq!(a.status, b.status);
        prop_assert!(rel_err(a.value, b.value) <= 1e-9, "{} vs {}", a.value, b.value);
    }
}

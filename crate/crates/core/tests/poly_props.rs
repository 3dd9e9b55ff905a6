mod common;

use common::{random_homogeneous, random_linear_product, random_point, rng};
use lorcap::lorentzian::{check_m_convex, is_lorentzian, is_ulc, quadratic_is_lorentzian, QuadraticForm};
use lorcap::poly::SparsePolynomial;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

fn shape() -> impl Strategy<Value = (u64, usize, u32)> {
    (any::<u64>(), 1usize..=4, 0u32..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn derivative_is_linear((seed, m, d) in shape(), k in 0u32..=3) {
        let mut r = rng(seed);
        let p = random_homogeneous(&mut r, m, d, 4);
        let q = random_homogeneous(&mut r, m, d, 4);
        let i = r.gen_range(0..m);
        let lhs = (&p + &q).partial_derivative(i, k).unwrap();
        let rhs = &p.partial_derivative(i, k).unwrap() + &q.partial_derivative(i, k).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn slice_matches_evaluation((seed, m, d) in shape()) {
        prop_assume!(m >= 2);
        let mut r = rng(seed);
        let p = random_homogeneous(&mut r, m, d, 5);
        let i = r.gen_range(0..m);
        for _ in 0..20 {
            let xstar = random_point(&mut r, m - 1);
            let t: f64 = r.gen_range(0.1..4.0);
            let slice = p.bivariate_slice(i, &xstar).unwrap();
            let mut x = xstar.clone();
            x.insert(i, t);
            let direct = p.evaluate(&x).unwrap();
            prop_assert!(rel_close(direct, slice.evaluate(t), 1e-12), "{} vs {}", direct, slice.evaluate(t));
        }
    }

    #[test]
    fn euler_identity((seed, m, d) in shape()) {
        let mut r = rng(seed);
        let p = random_homogeneous(&mut r, m, d, 5);
        for _ in 0..10 {
            let x = random_point(&mut r, m);
            let mut acc = 0.0;
            for (i, xi) in x.iter().enumerate() {
                acc += xi * p.partial_derivative(i, 1).unwrap().evaluate(&x).unwrap();
            }
            let expected = f64::from(d) * p.evaluate(&x).unwrap();
            prop_assert!(rel_close(acc, expected, 1e-12) || (acc == 0.0 && expected == 0.0));
        }
    }

    #[test]
    fn restriction_is_monomial_limit((seed, m, d) in shape()) {
        let mut r = rng(seed);
        let p = random_homogeneous(&mut r, m, d, 5);
        let i = r.gen_range(0..m);
        let restricted = p.restrict_zero(i).unwrap();
        let kept: Vec<_> = p.terms().filter(|(e, _)| e[i] == 0).map(|(e, c)| (e.clone(), c.clone())).collect();
        let expected = SparsePolynomial::new(m, kept).unwrap();
        prop_assert_eq!(restricted, expected);
    }

    #[test]
    fn lorentzian_closure_under_derivatives(seed in any::<u64>(), m in 1usize..=4, d in 1usize..=4) {
        let mut r = rng(seed);
        let p = random_linear_product(&mut r, m, d);
        prop_assert!(is_lorentzian(&p).verdict);
        for i in 0..m {
            let first = p.partial_derivative(i, 1).unwrap();
            prop_assert!(is_lorentzian(&first).verdict);
            for k in 0..=d as u32 {
                let restricted = p.partial_derivative(i, k).unwrap().restrict_zero(i).unwrap();
                prop_assert!(is_lorentzian(&restricted).verdict, "i={} k={}", i, k);
            }
        }
    }

    #[test]
    fn lorentzian_slices_are_ulc(seed in any::<u64>(), m in 2usize..=4, d in 1usize..=5) {
        let mut r = rng(seed);
        let p = random_linear_product(&mut r, m, d);
        let i = r.gen_range(0..m);
        let xstar = random_point(&mut r, m - 1);
        prop_assert!(is_ulc(&p.bivariate_slice(i, &xstar).unwrap()));
    }

    #[test]
    fn m_convexity_is_permutation_invariant((seed, m, d) in shape()) {
        let mut r = rng(seed);
        let p = random_homogeneous(&mut r, m, d, 4);
        let mut perm: Vec<usize> = (0..m).collect();
        perm.shuffle(&mut r);
        let before = check_m_convex(&p.support()).unwrap().holds();
        let after = check_m_convex(&p.permute(&perm).support()).unwrap().holds();
        prop_assert_eq!(before, after);
        prop_assert_eq!(is_lorentzian(&p).verdict, is_lorentzian(&p.permute(&perm)).verdict);
    }

    #[test]
    fn quadratic_verdict_ignores_positive_scaling(entries in proptest::collection::vec(-3i64..=6, 10), scale in 1i64..=50, m in 2usize..=4) {
        let mut gram = vec![vec![BigRational::from_integer(0.into()); m]; m];
        let mut it = entries.iter();
        for i in 0..m {
            for j in i..m {
                let v = BigRational::from_integer((*it.next().unwrap()).into());
                gram[i][j] = v.clone();
                gram[j][i] = v;
            }
        }
        let s = BigRational::new(scale.into(), 7.into());
        let scaled: Vec<Vec<BigRational>> = gram.iter().map(|row| row.iter().map(|v| v * &s).collect()).collect();
        let a = quadratic_is_lorentzian(&QuadraticForm::new(gram).unwrap());
        let b = quadratic_is_lorentzian(&QuadraticForm::new(scaled).unwrap());
        prop_assert_eq!(a.lorentzian, b.lorentzian);
        prop_assert_eq!(a.positive, b.positive);
    }
}

#[test]
fn elementary_symmetric_derivatives_stay_lorentzian() {
    for m in 1..=5 {
        for k in 1..=m {
            let e = SparsePolynomial::elementary_symmetric(m, k);
            for i in 0..m {
                assert!(is_lorentzian(&e.partial_derivative(i, 1).unwrap()).verdict, "e_{k}(m={m}) d/dx{i}");
            }
        }
    }
}

//! Small numeric helpers shared by the bound formulas.
//!
//! All formulas use the conventions `0^0 = 1` and `0·ln 0 = 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use statrs::function::gamma::ln_gamma;

/// `x·ln(y)` with `0·ln(anything) = 0`.
pub fn xlogy(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * y.ln()
    }
}

/// Natural log of the binomial coefficient `C(n, k)`; `-inf` when `k > n`.
pub fn ln_choose(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    if n <= 60 {
        return choose_f64(n, k).ln();
    }
    ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
}

/// `C(n, k)` as a float, computed by the multiplicative formula (exact for `n <= 60`).
pub fn choose_f64(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    let mut fallback = 1.0f64;
    let mut exact = true;
    for j in 0..k {
        if exact {
            match acc.checked_mul((n - j) as u128) {
                Some(v) => acc = v / (j as u128 + 1),
                None => {
                    exact = false;
                    fallback = acc as f64 * (n - j) as f64 / (j + 1) as f64;
                }
            }
        } else {
            fallback *= (n - j) as f64 / (j + 1) as f64;
        }
    }
    if exact {
        acc as f64
    } else {
        fallback
    }
}

/// Exact binomial coefficient.
pub fn choose_big(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc *= BigInt::from(n - j);
        acc /= BigInt::from(j + 1);
    }
    acc
}

/// `ln k!`
pub fn ln_factorial(k: u64) -> f64 {
    if k < 2 {
        0.0
    } else {
        ln_gamma(k as f64 + 1.0)
    }
}

/// Log of the binomial atom `C(n,k) (k/n)^k ((n-k)/n)^(n-k)`, the mass that
/// `Bin(n, k/n)` puts on its own mean. Returns `-inf` for `k > n`; `0` for `n = 0`.
pub fn ln_mean_atom(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    if n == 0 {
        return 0.0;
    }
    let s = k as f64 / n as f64;
    ln_choose(n, k) + xlogy(k as f64, s) + xlogy((n - k) as f64, 1.0 - s)
}

/// `C(n,k) (k/n)^k ((n-k)/n)^(n-k)`.
pub fn mean_atom(n: u64, k: u64) -> f64 {
    ln_mean_atom(n, k).exp()
}

/// Exact conversion of a finite float to a rational.
pub fn rational_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Relative difference `|a - b| / max(|a|, |b|, floor)`.
pub fn rel_diff(a: f64, b: f64, floor: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(floor)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn choose_small_values() {
        assert_eq!(choose_f64(4, 2), 6.0);
        assert_eq!(choose_f64(30, 15), 155117520.0);
        assert_eq!(choose_f64(3, 5), 0.0);
        assert_eq!(choose_big(60, 30).to_string(), "118264581564861424");
        assert!((ln_choose(100, 50) - choose_big(100, 50).to_f64().unwrap().ln()).abs() < 1e-10);
    }

    #[test]
    fn mean_atom_conventions() {
        // 0^0 = 1 at both ends
        assert_eq!(mean_atom(3, 0), 1.0);
        assert_eq!(mean_atom(3, 3), 1.0);
        assert!((mean_atom(2, 1) - 0.5).abs() < 1e-15);
        assert!((mean_atom(4, 2) - 0.375).abs() < 1e-15);
        assert_eq!(mean_atom(2, 3), 0.0);
    }
}

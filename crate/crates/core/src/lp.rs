//! Exact linear programming over the rationals.
//!
//! Dense two-phase tableau simplex with Bland's rule, for desk-scale
//! problems in standard form: maximize `c·x` subject to `A x = b`, `x >= 0`.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: BigRational, x: Vec<BigRational> },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal_value(&self) -> Option<&BigRational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub a: Vec<Vec<BigRational>>,
    pub b: Vec<BigRational>,
    pub c: Vec<BigRational>,
}

struct Tableau {
    // rows × (cols + 1), last column is the right-hand side
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize) {
        let piv = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v /= &piv;
            }
        }
        let pivot_row = self.rows[r].clone();
        for (k, row) in self.rows.iter_mut().enumerate() {
            if k == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        self.basis[r] = col;
    }

    /// Maximizes `cost·x` over the current feasible basis, restricted to columns `< allowed`.
    fn optimize(&mut self, cost: &[BigRational], allowed: usize) -> bool {
        loop {
            // reduced cost d_j = c_j - c_B · column_j; enter the lowest index with d_j > 0
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut d = cost[j].clone();
                for (r, &bv) in self.basis.iter().enumerate() {
                    let a = &self.rows[r][j];
                    if !a.is_zero() && !cost[bv].is_zero() {
                        d -= &cost[bv] * a;
                    }
                }
                if d.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(col) = entering else { return true };
            let mut leave: Option<(usize, BigRational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[self.cols] / &row[col];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, col),
                None => return false,
            }
        }
    }
}

impl LinearProgram {
    pub fn solve(&self) -> LpOutcome {
        let m = self.a.len();
        let n = self.c.len();
        assert_eq!(self.b.len(), m, "rhs length");
        assert!(self.a.iter().all(|row| row.len() == n), "row length");

        // x columns 0..n, artificials n..n+m
        let cols = n + m;
        let mut rows = Vec::with_capacity(m);
        for (k, (row, rhs)) in self.a.iter().zip(&self.b).enumerate() {
            let flip = rhs.is_negative();
            let mut r: Vec<BigRational> = row
                .iter()
                .map(|v| if flip { -v.clone() } else { v.clone() })
                .collect();
            r.extend((0..m).map(|j| if j == k { one() } else { BigRational::zero() }));
            r.push(if flip { -rhs.clone() } else { rhs.clone() });
            rows.push(r);
        }
        let mut tab = Tableau { rows, basis: (n..n + m).collect(), cols };

        // phase 1: maximize -Σ artificials
        let mut phase1 = vec![BigRational::zero(); cols];
        for v in phase1.iter_mut().skip(n) {
            *v = -one();
        }
        tab.optimize(&phase1, cols);
        let infeasibility: BigRational = tab
            .basis
            .iter()
            .enumerate()
            .filter(|(_, &bv)| bv >= n)
            .map(|(r, _)| tab.rows[r][cols].clone())
            .sum();
        if infeasibility.is_positive() {
            return LpOutcome::Infeasible;
        }

        // drive zero-level artificials out; rows with no usable pivot are redundant
        let mut r = 0;
        while r < tab.rows.len() {
            if tab.basis[r] >= n {
                match (0..n).find(|&j| !tab.rows[r][j].is_zero()) {
                    Some(j) => tab.pivot(r, j),
                    None => {
                        tab.rows.remove(r);
                        tab.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }

        let mut cost = self.c.clone();
        cost.extend((0..m).map(|_| BigRational::zero()));
        if !tab.optimize(&cost, n) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![BigRational::zero(); n];
        for (r, &bv) in tab.basis.iter().enumerate() {
            if bv < n {
                x[bv] = tab.rows[r][cols].clone();
            }
        }
        let value = x.iter().zip(&self.c).map(|(xi, ci)| xi * ci).sum();
        LpOutcome::Optimal { value, x }
    }
}

fn one() -> BigRational {
    BigRational::from_integer(1.into())
}

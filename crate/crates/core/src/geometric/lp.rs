//! Dense exact-rational simplex for small linear programs.
//!
//! Solves `min c^T x  s.t.  A x = b, x >= 0` with a two-phase full tableau
//! and Bland's rule (smallest-index entering column; ratio ties broken by the
//! smallest basis variable), which guarantees termination. Everything is a
//! `BigRational`: feasibility answers and certificates are exact. Infeasible
//! programs return a Farkas vector `y` with `y^T A_j <= 0` for every column
//! and `y^T b > 0`.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rat = BigRational;

#[derive(Debug)]
pub enum LpOutcome {
    Optimal { x: Vec<Rat>, objective: Rat },
    Infeasible { farkas: Vec<Rat> },
    Unbounded,
}

struct Tableau {
    /// m rows of n real columns, m artificial columns, and the rhs.
    rows: Vec<Vec<Rat>>,
    cost: Vec<Rat>,
    basis: Vec<usize>,
    n: usize,
    m: usize,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.n + self.m
    }

    fn pivot(&mut self, r: usize, s: usize) {
        let piv = self.rows[r][s].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &piv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let factor = row[s].clone();
            if !factor.is_zero() {
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= &factor * pv;
                }
            }
        }
        let factor = self.cost[s].clone();
        if !factor.is_zero() {
            for (v, pv) in self.cost.iter_mut().zip(&pivot_row) {
                *v -= &factor * pv;
            }
        }
        self.basis[r] = s;
    }

    /// Bland iterations over the allowed columns; false means unbounded.
    fn iterate(&mut self, allowed_cols: usize) -> bool {
        let rhs = self.rhs();
        loop {
            let Some(s) = (0..allowed_cols).find(|&j| self.cost[j] < Rat::zero()) else {
                return true;
            };
            let mut leave: Option<usize> = None;
            let mut best_ratio = Rat::zero();
            for i in 0..self.m {
                if self.rows[i][s] > Rat::zero() {
                    let ratio = &self.rows[i][rhs] / &self.rows[i][s];
                    let better = match leave {
                        None => true,
                        Some(cur) => {
                            ratio < best_ratio
                                || (ratio == best_ratio && self.basis[i] < self.basis[cur])
                        }
                    };
                    if better {
                        leave = Some(i);
                        best_ratio = ratio;
                    }
                }
            }
            match leave {
                Some(r) => self.pivot(r, s),
                None => return false,
            }
        }
    }
}

/// Minimize `c^T x` subject to `A x = b`, `x >= 0`.
pub fn solve(a: &[Vec<Rat>], b: &[Rat], c: &[Rat]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(b.len(), m);

    // Normalize to b >= 0, remembering flipped rows for the Farkas vector.
    let mut flipped = vec![false; m];
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i] < Rat::zero();
        flipped[i] = flip;
        let mut row: Vec<Rat> = Vec::with_capacity(n + m + 1);
        row.extend(a[i].iter().map(|v| if flip { -v.clone() } else { v.clone() }));
        for k in 0..m {
            row.push(if k == i { Rat::one() } else { Rat::zero() });
        }
        row.push(if flip { -b[i].clone() } else { b[i].clone() });
        rows.push(row);
    }

    // Phase 1: minimize the sum of artificials. Reduced costs under the
    // all-artificial basis: 0 - column sum for real columns, 0 on artificials.
    let mut cost: Vec<Rat> = vec![Rat::zero(); n + m + 1];
    for j in 0..=n + m {
        let mut sum = Rat::zero();
        for row in rows.iter() {
            sum += &row[j];
        }
        let direct = if (n..n + m).contains(&j) { Rat::one() } else { Rat::zero() };
        cost[j] = direct - sum;
    }
    let mut t = Tableau { rows, cost, basis: (n..n + m).collect(), n, m };
    let optimal = t.iterate(n + m);
    debug_assert!(optimal, "phase 1 is bounded below by zero");
    let rhs = t.rhs();
    let phase1_obj = -t.cost[rhs].clone();
    if phase1_obj > Rat::zero() {
        // Farkas: y_i = 1 - reduced cost of the i-th artificial, unflipped.
        let farkas: Vec<Rat> = (0..m)
            .map(|i| {
                let y = Rat::one() - &t.cost[n + i];
                if flipped[i] {
                    -y
                } else {
                    y
                }
            })
            .collect();
        return LpOutcome::Infeasible { farkas };
    }

    // Drive basic artificials out where a real pivot exists; rows whose real
    // entries are all zero are redundant and stay inert.
    for i in 0..m {
        if t.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, j);
            }
        }
    }

    // Phase 2 cost row for the real objective.
    for j in 0..=n + m {
        let mut z = Rat::zero();
        for i in 0..m {
            if t.basis[i] < n {
                z += &t.rows[i][j] * &c[t.basis[i]];
            }
        }
        let direct = if j < n { c[j].clone() } else { Rat::zero() };
        t.cost[j] = direct - z;
    }
    if !t.iterate(n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rat::zero(); n];
    for i in 0..m {
        if t.basis[i] < n {
            x[t.basis[i]] = t.rows[i][rhs].clone();
        }
    }
    let objective = -t.cost[rhs].clone();
    LpOutcome::Optimal { x, objective }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(p: i64, q: i64) -> Rat {
        Rat::new(BigInt::from(p), BigInt::from(q))
    }

    fn int(p: i64) -> Rat {
        rat(p, 1)
    }

    #[test]
    fn solves_a_feasible_system() {
        // x1 + x2 = 1, x1 - x2 = 0 -> x = (1/2, 1/2).
        let a = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
        let b = vec![int(1), int(0)];
        let c = vec![int(0), int(0)];
        match solve(&a, &b, &c) {
            LpOutcome::Optimal { x, .. } => {
                assert_eq!(x, vec![rat(1, 2), rat(1, 2)]);
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn minimizes() {
        // min x2 s.t. x1 + x2 = 2, x1 <= 1 (as x1 + slack = 1).
        let a = vec![vec![int(1), int(1), int(0)], vec![int(1), int(0), int(1)]];
        let b = vec![int(2), int(1)];
        let c = vec![int(0), int(1), int(0)];
        match solve(&a, &b, &c) {
            LpOutcome::Optimal { x, objective } => {
                assert_eq!(objective, int(1));
                assert_eq!(x[0], int(1));
                assert_eq!(x[1], int(1));
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn farkas_certificate_is_valid() {
        // x1 + x2 = 1 and x1 + x2 = 2 simultaneously: infeasible.
        let a = vec![vec![int(1), int(1)], vec![int(1), int(1)]];
        let b = vec![int(1), int(2)];
        let c = vec![int(0), int(0)];
        match solve(&a, &b, &c) {
            LpOutcome::Infeasible { farkas } => {
                for j in 0..2 {
                    let dot: Rat = (0..2).map(|i| &farkas[i] * &a[i][j]).sum();
                    assert!(dot <= Rat::zero(), "column {j} not separated");
                }
                let dot: Rat = (0..2).map(|i| &farkas[i] * &b[i]).sum();
                assert!(dot > Rat::zero());
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn detects_unbounded() {
        // min -x1 with x1 - x2 = 0: both can grow forever.
        let a = vec![vec![int(1), int(-1)]];
        let b = vec![int(0)];
        let c = vec![int(-1), int(0)];
        assert!(matches!(solve(&a, &b, &c), LpOutcome::Unbounded));
    }

    #[test]
    fn redundant_rows_are_inert() {
        // Duplicate constraint leaves a basic artificial on a zeroed row.
        let a = vec![vec![int(1), int(1)], vec![int(1), int(1)], vec![int(1), int(-1)]];
        let b = vec![int(1), int(1), int(0)];
        let c = vec![int(-1), int(0)];
        match solve(&a, &b, &c) {
            LpOutcome::Optimal { x, objective } => {
                assert_eq!(x, vec![rat(1, 2), rat(1, 2)]);
                assert_eq!(objective, rat(-1, 2));
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }
}

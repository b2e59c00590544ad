use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
#[cfg(test)]
use num_traits::One;

use super::IntMatrix;

/// Smith normal form decomposition `U * M * V = D` with `U`, `V` unimodular
/// and `D` diagonal, `d_i | d_{i+1}`, `d_i >= 0`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        let n = self.d.rows().min(self.d.cols());
        (0..n).filter(|&i| !self.d[(i, i)].is_zero()).count()
    }

    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n)
            .map(|i| self.d[(i, i)].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }
}

/// Quotient minimizing |a - q*b|; keeps remainders at most |b|/2.
fn nearest_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q0, _) = a.div_rem(b);
    let mut best_q = q0.clone();
    let mut best_r = (a - &q0 * b).abs();
    for dq in [-1i32, 1] {
        let q = &q0 + BigInt::from(dq);
        let r = (a - &q * b).abs();
        if r < best_r {
            best_r = r;
            best_q = q;
        }
    }
    best_q
}

struct Worker {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl Worker {
    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.a.cols() {
            let t = self.a[(i, c)].clone();
            self.a[(i, c)] = self.a[(j, c)].clone();
            self.a[(j, c)] = t;
        }
        for c in 0..self.u.cols() {
            let t = self.u[(i, c)].clone();
            self.u[(i, c)] = self.u[(j, c)].clone();
            self.u[(j, c)] = t;
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.a.rows() {
            let t = self.a[(r, i)].clone();
            self.a[(r, i)] = self.a[(r, j)].clone();
            self.a[(r, j)] = t;
        }
        for r in 0..self.v.rows() {
            let t = self.v[(r, i)].clone();
            self.v[(r, i)] = self.v[(r, j)].clone();
            self.v[(r, j)] = t;
        }
    }

    /// row_i -= q * row_j
    fn row_sub(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.a.cols() {
            let t = q * &self.a[(j, c)];
            self.a[(i, c)] -= t;
        }
        for c in 0..self.u.cols() {
            let t = q * &self.u[(j, c)];
            self.u[(i, c)] -= t;
        }
    }

    /// col_i -= q * col_j
    fn col_sub(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.a.rows() {
            let t = q * &self.a[(r, j)];
            self.a[(r, i)] -= t;
        }
        for r in 0..self.v.rows() {
            let t = q * &self.v[(r, j)];
            self.v[(r, i)] -= t;
        }
    }

    fn row_negate(&mut self, i: usize) {
        for c in 0..self.a.cols() {
            let t = -&self.a[(i, c)];
            self.a[(i, c)] = t;
        }
        for c in 0..self.u.cols() {
            let t = -&self.u[(i, c)];
            self.u[(i, c)] = t;
        }
    }

    /// Smallest nonzero |entry| in the trailing block, ties broken by (i, j).
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut best_abs = BigInt::zero();
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let e = &self.a[(i, j)];
                if e.is_zero() {
                    continue;
                }
                let a = e.abs();
                if best.is_none() || a < best_abs {
                    best = Some((i, j));
                    best_abs = a;
                }
            }
        }
        best
    }
}

/// Smith normal form of an arbitrary rectangular integer matrix.
///
/// Pivoting always picks the smallest nonzero absolute value in the
/// remaining block, which keeps intermediate entries small at the matrix
/// sizes used here.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let mut w = Worker { a: m.clone(), u: IntMatrix::identity(m.rows()), v: IntMatrix::identity(m.cols()) };
    let steps = m.rows().min(m.cols());
    let mut t = 0;
    while t < steps {
        let Some((pi, pj)) = w.find_pivot(t) else { break };
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        // Clear row and column t.
        loop {
            let mut dirty = false;
            for i in t + 1..w.a.rows() {
                if !w.a[(i, t)].is_zero() {
                    let q = nearest_div(&w.a[(i, t)], &w.a[(t, t)]);
                    w.row_sub(i, t, &q);
                    if !w.a[(i, t)].is_zero() {
                        // remainder became the smaller pivot
                        w.row_swap(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..w.a.cols() {
                if !w.a[(t, j)].is_zero() {
                    let q = nearest_div(&w.a[(t, j)], &w.a[(t, t)]);
                    w.col_sub(j, t, &q);
                    if !w.a[(t, j)].is_zero() {
                        w.col_swap(t, j);
                        dirty = true;
                    }
                }
            }
            if !dirty
                && (t + 1..w.a.rows()).all(|i| w.a[(i, t)].is_zero())
                && (t + 1..w.a.cols()).all(|j| w.a[(t, j)].is_zero())
            {
                break;
            }
        }
        // Divisibility: pivot must divide every entry of the trailing block.
        let mut fixed = true;
        'outer: for i in t + 1..w.a.rows() {
            for j in t + 1..w.a.cols() {
                if !(&w.a[(i, j)] % &w.a[(t, t)]).is_zero() {
                    // Fold the offending row into row t and redo this step.
                    let one = BigInt::from(-1);
                    w.row_sub(t, i, &one);
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if !fixed {
            continue;
        }
        if w.a[(t, t)].is_negative() {
            w.row_negate(t);
        }
        t += 1;
    }
    let res = SnfResult { u: w.u, d: w.a, v: w.v };
    debug_assert!(res.u.mul(m).mul(&res.v) == res.d, "SNF reconstruction failed");
    res
}

/// Inverse of a unimodular square matrix (|det| = 1). Panics otherwise:
/// callers only use it on transformation matrices they constructed.
pub fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    m.require_square().expect("inverse needs a square matrix");
    let snf = smith_normal_form(m);
    assert!(
        snf.d.is_identity(),
        "matrix is not unimodular; cannot invert over the integers"
    );
    // U m V = I  =>  m^-1 = V U
    let inv = snf.v.mul(&snf.u);
    debug_assert!(inv.mul(m).is_identity());
    inv
}

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::snf::smith_normal_form;
use super::IntMatrix;
use crate::error::Result;

/// Basis of the saturated kernel `{v : Mv = 0}` as a direct summand of
/// `Z^cols`, in Hermite-reduced canonical form. Every basis vector is
/// primitive and the output is deterministic.
pub fn saturated_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    let n = m.cols();
    let k = snf.rank();
    // Columns of V past the rank span ker(M) saturated: for v = V w,
    // U M V w = D w = 0 forces w_j = 0 exactly where d_j != 0.
    let mut basis: Vec<Vec<BigInt>> = (k..n).map(|j| snf.v.column(j)).collect();
    basis = hermite_canonical(basis);
    for v in &basis {
        debug_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
    }
    basis
}

/// Row-style Hermite normal form of a full-rank list of integer vectors:
/// pivots positive, entries above each pivot reduced into `[0, pivot)`,
/// rows ordered by pivot column. Canonical for the lattice they span.
pub fn hermite_canonical(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return rows;
    }
    let n = rows[0].len();
    let mut pivot_rows: Vec<Vec<BigInt>> = Vec::new();
    let mut col = 0;
    while col < n && !rows.is_empty() {
        // Euclid on the current column across remaining rows.
        loop {
            let mut nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            if nz.len() == 1 {
                let i = nz[0];
                if rows[i][col].is_negative() {
                    for x in rows[i].iter_mut() {
                        *x = -&*x;
                    }
                }
                rows.swap(0, i);
                break;
            }
            // reduce the larger by the smaller
            nz.sort_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let (small, big) = (nz[0], nz[1]);
            let q = {
                let (q0, _) = rows[big][col].div_rem(&rows[small][col]);
                q0
            };
            for j in 0..n {
                let t = &q * &rows[small][j];
                rows[big][j] -= t;
            }
        }
        if !rows[0][col].is_zero() {
            let pivot = rows.remove(0);
            pivot_rows.push(pivot);
        }
        col += 1;
    }
    assert!(rows.is_empty(), "input rows were not linearly independent");
    // Reduce entries above each pivot.
    for p in (0..pivot_rows.len()).rev() {
        let pcol = pivot_rows[p].iter().position(|x| !x.is_zero()).unwrap();
        let pval = pivot_rows[p][pcol].clone();
        for q in 0..p {
            let e = pivot_rows[q][pcol].clone();
            let f = e.div_floor(&pval);
            if !f.is_zero() {
                for j in 0..n {
                    let t = &f * &pivot_rows[p][j];
                    pivot_rows[q][j] -= t;
                }
            }
        }
    }
    pivot_rows
}

/// Ranks of the fixed spaces of `M` for the eigenvalues +1 and -1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FixedLineReport {
    pub plus_rank: usize,
    pub minus_rank: usize,
}

impl FixedLineReport {
    /// An invariant integral line for a determinant-±1 integer matrix
    /// forces an eigenvalue ±1, so this decides line existence.
    pub fn has_line(&self) -> bool {
        self.plus_rank + self.minus_rank > 0
    }
}

/// Kernel ranks of `M - I` and `M + I`. Rejects non-square input.
///
/// The saturated kernel has the same rank as the rational kernel, so the
/// ranks come from fraction-free elimination, whose entries stay bounded
/// by minors even when M carries very large entries (long walk words).
pub fn fixed_line_report(m: &IntMatrix) -> Result<FixedLineReport> {
    m.require_square()?;
    let n = m.rows();
    let id = IntMatrix::identity(n);
    let plus = n - rank(&m.sub(&id));
    let minus = n - rank(&m.add(&id));
    Ok(FixedLineReport { plus_rank: plus, minus_rank: minus })
}

/// Rank over Q by Bareiss fraction-free Gaussian elimination.
pub fn rank(m: &IntMatrix) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut prev = BigInt::one();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division is exact");
                a[i][j] = q;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Solves `B x = c` for `x` integral, where the columns of `B` are a basis
/// of a saturated sublattice. Built once per basis, reused per column.
pub struct LatticeSolver {
    u: IntMatrix,
    v: IntMatrix,
    diag: Vec<BigInt>,
    rows: usize,
    cols: usize,
}

impl LatticeSolver {
    pub fn new(b: &IntMatrix) -> Self {
        let snf = smith_normal_form(b);
        let n = b.rows().min(b.cols());
        let diag: Vec<BigInt> = (0..n).map(|i| snf.d[(i, i)].clone()).collect();
        LatticeSolver { u: snf.u, v: snf.v, diag, rows: b.rows(), cols: b.cols() }
    }

    /// Returns `x` with `B x = c`, or `None` when `c` is outside the column
    /// span or the solution is not integral.
    pub fn solve(&self, c: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(c.len(), self.rows);
        let w = self.u.mul_vec(c);
        let mut y = vec![BigInt::zero(); self.cols];
        for (i, wi) in w.iter().enumerate() {
            if i < self.diag.len() && !self.diag[i].is_zero() {
                let (q, r) = wi.div_rem(&self.diag[i]);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !wi.is_zero() {
                return None;
            }
        }
        Some(self.v.mul_vec(&y))
    }
}

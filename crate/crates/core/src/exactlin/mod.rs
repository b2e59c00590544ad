//! Exact integer linear algebra: Smith normal form, saturated kernels,
//! division-free characteristic polynomials and fixed-line detection.
//!
//! Everything here is arbitrary precision; there is no floating point
//! anywhere in this module.

mod charpoly;
mod kernel;
mod snf;

pub use charpoly::char_poly;
pub use kernel::{fixed_line_report, hermite_canonical, rank, saturated_kernel, FixedLineReport, LatticeSolver};
pub use snf::{smith_normal_form, unimodular_inverse, SnfResult};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix in row-major order with arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        IntMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Build from small machine integers; convenient in tests and tables.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        IntMatrix { rows, cols, data: entries.iter().map(|&e| BigInt::from(e)).collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NonSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|e| -e).collect() }
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let t = a * b;
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|e| e * c).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == IntMatrix::identity(self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    /// True when every entry is congruent to the identity mod m.
    pub fn is_identity_mod(&self, m: u64) -> bool {
        if !self.is_square() {
            return false;
        }
        let m = BigInt::from(m);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { BigInt::one() } else { BigInt::zero() };
                if (&self[(i, j)] - want) % &m != BigInt::zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn set_column(&mut self, j: usize, v: &[BigInt]) {
        assert_eq!(v.len(), self.rows);
        for i in 0..self.rows {
            self[(i, j)] = v[i].clone();
        }
    }

    pub fn from_columns(rows: usize, cols: Vec<Vec<BigInt>>) -> IntMatrix {
        let n = cols.len();
        let mut m = IntMatrix::zero(rows, n);
        for (j, c) in cols.iter().enumerate() {
            m.set_column(j, c);
        }
        m
    }

    /// Submatrix keeping the given row and column ranges.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> IntMatrix {
        IntMatrix::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn pow(&self, mut e: u64) -> IntMatrix {
        self.require_square().expect("pow needs a square matrix");
        let mut base = self.clone();
        let mut acc = IntMatrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Determinant, exact, via the characteristic polynomial constant term.
    pub fn det(&self) -> BigInt {
        self.require_square().expect("det needs a square matrix");
        let cp = char_poly(self).expect("square by construction");
        let c0 = cp.coeff(0).clone();
        if self.rows % 2 == 1 {
            -c0
        } else {
            c0
        }
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.data.iter().map(|e| e.abs()).max().unwrap_or_else(BigInt::zero)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_identity() {
        let a = IntMatrix::from_i64(2, 2, &[1, 2, 3, 4]);
        let i = IntMatrix::identity(2);
        assert_eq!(a.mul(&i), a);
        assert_eq!(i.mul(&a), a);
        let b = IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]);
        assert_eq!(a.mul(&b), IntMatrix::from_i64(2, 2, &[2, 1, 4, 3]));
    }

    #[test]
    fn determinant_small() {
        let a = IntMatrix::from_i64(2, 2, &[2, 1, 1, 1]);
        assert_eq!(a.det(), BigInt::one());
        let b = IntMatrix::from_i64(3, 3, &[2, 0, 0, 0, 3, 0, 0, 0, 5]);
        assert_eq!(b.det(), BigInt::from(30));
        let c = IntMatrix::from_i64(2, 2, &[0, 1, -1, 0]);
        assert_eq!(c.det(), BigInt::one());
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let a = IntMatrix::from_i64(2, 2, &[1, 1, 1, 0]);
        let mut acc = IntMatrix::identity(2);
        for e in 0..8u64 {
            assert_eq!(a.pow(e), acc);
            acc = acc.mul(&a);
        }
    }
}

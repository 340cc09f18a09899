//! Dense exact matrices over a [`Ring`].
//!
//! A map of based free modules `R^m -> R^n` is an `n x m` matrix acting on
//! column vectors. Storage is dense and row-major; multiplication skips zero
//! entries, which keeps the block-permutation matrices produced by the bar
//! construction cheap without a separate sparse type.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::Error;
use crate::ring::Ring;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl Matrix {
    pub fn zero(ring: Ring, rows: usize, cols: usize) -> Self {
        Matrix { ring, rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = Matrix::zero(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = BigRational::one();
        }
        m
    }

    /// Builds a matrix from row data, normalizing every entry.
    pub fn from_rows(ring: Ring, rows: Vec<Vec<BigRational>>) -> Result<Self, Error> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
            for x in row {
                if !ring.contains(&x) {
                    return Err(Error::Shape(format!("entry {x} is not in {ring}")));
                }
                data.push(ring.normalize(x));
            }
        }
        Ok(Matrix { ring, rows: nrows, cols: ncols, data })
    }

    /// Convenience constructor for small literal matrices in tests and corpora.
    pub fn from_int_rows(ring: Ring, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| crate::ring::int(x)).collect())
            .collect();
        Matrix::from_rows(ring, rows).expect("literal matrix")
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigRational) {
        self.data[i * self.cols + j] = self.ring.normalize(x);
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.entry(i, j).is_one()
                    } else {
                        self.entry(i, j).is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.entry(i, j).clone();
            }
        }
        out
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(|x| self.ring.neg(x)).collect();
        Matrix { data, ..self.clone() }
    }

    pub fn scale(&self, c: &BigRational) -> Matrix {
        let data = self.data.iter().map(|x| self.ring.mul(x, c)).collect();
        Matrix { data, ..self.clone() }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ring, other.ring, "ring mismatch in matrix sum");
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in matrix sum");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Matrix { data, ..self.clone() }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    /// Matrix product; skips zero entries of `self`, so products with
    /// block-permutation maps cost `nnz(self) * cols(other)`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ring, other.ring, "ring mismatch in matrix product");
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = Matrix::zero(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.entry(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = &out.data[i * other.cols + j];
                    out.data[i * other.cols + j] = self.ring.add(cur, &self.ring.mul(a, b));
                }
            }
        }
        out
    }

    /// Writes `block` into `self` with upper-left corner at `(r0, c0)`.
    pub fn write_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert_eq!(self.ring, block.ring);
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + (c0 + j)] = block.entry(i, j).clone();
            }
        }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ring, other.ring);
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = Matrix::zero(self.ring, self.rows, self.cols + other.cols);
        out.write_block(0, 0, self);
        out.write_block(0, self.cols, other);
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ring, other.ring);
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut out = Matrix::zero(self.ring, self.rows + other.rows, self.cols);
        out.write_block(0, 0, self);
        out.write_block(self.rows, 0, other);
        out
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zero(self.ring, rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                out.data[i * out.cols + j] = self.entry(r, c).clone();
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Matrix {
        self.submatrix(0..self.rows, j..j + 1)
    }

    /// Kronecker product with basis order `(i, p)` lexicographic: entry at
    /// `((i, p), (j, q))` is `self[i, j] * other[p, q]`.
    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ring, other.ring);
        let mut out = Matrix::zero(self.ring, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.entry(i, j);
                if a.is_zero() {
                    continue;
                }
                out.write_block(i * other.rows, j * other.cols, &other.scale(a));
            }
        }
        out
    }

    /// Exact determinant via fraction Gaussian elimination with the ring's
    /// own division (mod-p arithmetic stays mod p).
    pub fn determinant(&self) -> BigRational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let field = if self.ring == Ring::Integers { Ring::Rationals } else { self.ring };
        let mut m = self.data.clone();
        let at = |m: &Vec<BigRational>, i: usize, j: usize| m[i * n + j].clone();
        let mut det = BigRational::one();
        for t in 0..n {
            let Some(p) = (t..n).find(|&i| !at(&m, i, t).is_zero()) else {
                return BigRational::zero();
            };
            if p != t {
                for j in 0..n {
                    m.swap(t * n + j, p * n + j);
                }
                det = -det;
            }
            let pivot = at(&m, t, t);
            det = field.mul(&det, &pivot);
            let inv = field.inv(&pivot).expect("field pivot is invertible");
            for i in t + 1..n {
                let factor = field.mul(&at(&m, i, t), &inv);
                if factor.is_zero() {
                    continue;
                }
                for j in t..n {
                    let upd = field.sub(&at(&m, i, j), &field.mul(&factor, &at(&m, t, j)));
                    m[i * n + j] = upd;
                }
            }
        }
        self.ring.normalize(det)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row_i += q * row_j`
    pub(crate) fn add_mul_row(&mut self, i: usize, j: usize, q: &BigRational) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let upd = self
                .ring
                .add(self.entry(i, c), &self.ring.mul(q, self.entry(j, c)));
            self.data[i * self.cols + c] = upd;
        }
    }

    /// `col_i += q * col_j`
    pub(crate) fn add_mul_col(&mut self, i: usize, j: usize, q: &BigRational) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let upd = self
                .ring
                .add(self.entry(r, i), &self.ring.mul(q, self.entry(r, j)));
            self.data[r * self.cols + i] = upd;
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: &BigRational) {
        for j in 0..self.cols {
            self.data[i * self.cols + j] = self.ring.mul(self.entry(i, j), c);
        }
    }

    pub(crate) fn scale_col(&mut self, j: usize, c: &BigRational) {
        for i in 0..self.rows {
            self.data[i * self.cols + j] = self.ring.mul(self.entry(i, j), c);
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} over {} {}", self.rows, self.cols, self.ring, self)
    }
}

pub(crate) fn abs_lt(a: &BigRational, b: &BigRational) -> bool {
    a.abs() < b.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;

    #[test]
    fn product_and_identity() {
        let a = Matrix::from_int_rows(Ring::Integers, &[&[1, 2], &[3, 4]]);
        let id = Matrix::identity(Ring::Integers, 2);
        assert_eq!(a.mul(&id), a);
        let b = Matrix::from_int_rows(Ring::Integers, &[&[0, 1], &[1, 0]]);
        let ab = a.mul(&b);
        assert_eq!(ab, Matrix::from_int_rows(Ring::Integers, &[&[2, 1], &[4, 3]]));
    }

    #[test]
    fn empty_shapes_compose() {
        let a = Matrix::zero(Ring::Integers, 0, 3);
        let b = Matrix::zero(Ring::Integers, 3, 2);
        assert_eq!(a.mul(&b), Matrix::zero(Ring::Integers, 0, 2));
        let c = Matrix::zero(Ring::Integers, 2, 0);
        assert_eq!(c.mul(&a), Matrix::zero(Ring::Integers, 2, 3));
    }

    #[test]
    fn kronecker_shape_and_entries() {
        let a = Matrix::from_int_rows(Ring::Integers, &[&[1, 2]]);
        let b = Matrix::from_int_rows(Ring::Integers, &[&[3], &[4]]);
        let k = a.kronecker(&b);
        assert_eq!((k.rows(), k.cols()), (2, 2));
        assert_eq!(k.entry(0, 1), &int(6));
        assert_eq!(k.entry(1, 0), &int(4));
    }

    #[test]
    fn determinant_over_rings() {
        let a = Matrix::from_int_rows(Ring::Integers, &[&[2, 4], &[6, 8]]);
        assert_eq!(a.determinant(), int(-8));
        let f5 = Matrix::from_int_rows(Ring::PrimeField(5), &[&[2, 4], &[6, 8]]);
        assert_eq!(f5.determinant(), int(2));
        assert_eq!(Matrix::identity(Ring::Rationals, 3).determinant(), int(1));
        assert_eq!(Matrix::zero(Ring::Integers, 0, 0).determinant(), int(1));
    }

    #[test]
    fn prime_field_entries_reduce() {
        let m = Matrix::from_int_rows(Ring::PrimeField(3), &[&[4, -1]]);
        assert_eq!(m.entry(0, 0), &int(1));
        assert_eq!(m.entry(0, 1), &int(2));
    }
}

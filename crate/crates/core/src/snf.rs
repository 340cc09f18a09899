//! Smith normal form and the kernel/image/solve routines built on it.
//!
//! Over the integers the decomposition `D = U * A * V` has unimodular `U`, `V`
//! and a nonnegative, divisibility-ordered diagonal. Over a field the same
//! interface degenerates to rank-revealing elimination with diagonal entries
//! in `{0, 1}`. Pivoting is minimal absolute value with lexicographic
//! tie-breaking (row, then column), so identical inputs produce bit-identical
//! decompositions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::matrix::{abs_lt, Matrix};


#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: Matrix,
    pub u_inv: Matrix,
    pub d: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        let n = self.d.rows().min(self.d.cols());
        (0..n).take_while(|&i| !self.d.entry(i, i).is_zero()).count()
    }

    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigRational> {
        let n = self.d.rows().min(self.d.cols());
        (0..n)
            .map(|i| self.d.entry(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }
}

struct Elimination {
    d: Matrix,
    u: Matrix,
    u_inv: Matrix,
    v: Matrix,
    v_inv: Matrix,
}

impl Elimination {
    fn new(a: &Matrix) -> Self {
        let ring = a.ring();
        Elimination {
            d: a.clone(),
            u: Matrix::identity(ring, a.rows()),
            u_inv: Matrix::identity(ring, a.rows()),
            v: Matrix::identity(ring, a.cols()),
            v_inv: Matrix::identity(ring, a.cols()),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// `row_i += q * row_j` on `D`, with the matching updates of `U`, `U^-1`.
    fn add_mul_row(&mut self, i: usize, j: usize, q: &BigRational) {
        self.d.add_mul_row(i, j, q);
        self.u.add_mul_row(i, j, q);
        let ring = self.d.ring();
        self.u_inv.add_mul_col(j, i, &ring.neg(q));
    }

    /// `col_i += q * col_j` on `D`, with the matching updates of `V`, `V^-1`.
    fn add_mul_col(&mut self, i: usize, j: usize, q: &BigRational) {
        self.d.add_mul_col(i, j, q);
        self.v.add_mul_col(i, j, q);
        let ring = self.d.ring();
        self.v_inv.add_mul_row(j, i, &ring.neg(q));
    }

    /// `row_i *= c` for a unit `c`.
    fn scale_row(&mut self, i: usize, c: &BigRational) {
        let inv = self.d.ring().inv(c).expect("scaling by a non-unit");
        self.d.scale_row(i, c);
        self.u.scale_row(i, c);
        self.u_inv.scale_col(i, &inv);
    }

    /// Smallest-|entry| nonzero position in `d[t.., t..]`, lexicographic ties.
    fn min_abs_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let x = self.d.entry(i, j);
                if x.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some(b) => {
                        if abs_lt(x, self.d.entry(b.0, b.1)) {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        best
    }

    fn first_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                if !self.d.entry(i, j).is_zero() {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// Quotient of `a / b` rounded so the remainder lies in `[-b/2, b/2)`;
/// requires `b > 0`.
fn symmetric_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_mod_floor(b);
    if &(&r * 2) >= b {
        q += 1;
    }
    q
}

fn as_int(x: &BigRational) -> BigInt {
    debug_assert!(x.is_integer());
    x.to_integer()
}

pub fn smith_normal_form(a: &Matrix) -> SmithDecomposition {
    let mut e = Elimination::new(a);
    if a.ring().is_field() {
        smith_field(&mut e);
    } else {
        smith_integers(&mut e);
    }
    SmithDecomposition { u: e.u, u_inv: e.u_inv, d: e.d, v: e.v, v_inv: e.v_inv }
}

fn smith_integers(e: &mut Elimination) {
    let stages = e.d.rows().min(e.d.cols());
    for t in 0..stages {
        if e.first_nonzero(t).is_none() {
            break;
        }
        loop {
            let (pi, pj) = e.min_abs_pivot(t).expect("nonzero submatrix");
            e.swap_rows(t, pi);
            e.swap_cols(t, pj);
            if e.d.entry(t, t).is_negative() {
                e.scale_row(t, &crate::ring::int(-1));
            }
            let pivot = as_int(e.d.entry(t, t));
            for i in t + 1..e.d.rows() {
                let x = e.d.entry(i, t);
                if x.is_zero() {
                    continue;
                }
                let q = symmetric_quotient(&as_int(x), &pivot);
                e.add_mul_row(i, t, &BigRational::from_integer(-q));
            }
            for j in t + 1..e.d.cols() {
                let x = e.d.entry(t, j);
                if x.is_zero() {
                    continue;
                }
                let q = symmetric_quotient(&as_int(x), &pivot);
                e.add_mul_col(j, t, &BigRational::from_integer(-q));
            }
            let col_clear = (t + 1..e.d.rows()).all(|i| e.d.entry(i, t).is_zero());
            let row_clear = (t + 1..e.d.cols()).all(|j| e.d.entry(t, j).is_zero());
            if !(col_clear && row_clear) {
                continue;
            }
            // Pivot must divide the rest of the submatrix for the diagonal to
            // come out divisibility-ordered; pull an offending row up and
            // keep reducing.
            let offender = (t + 1..e.d.rows())
                .flat_map(|i| (t + 1..e.d.cols()).map(move |j| (i, j)))
                .find(|&(i, j)| !as_int(e.d.entry(i, j)).is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => e.add_mul_row(t, i, &BigRational::one()),
                None => break,
            }
        }
    }
}

fn smith_field(e: &mut Elimination) {
    let stages = e.d.rows().min(e.d.cols());
    let ring = e.d.ring();
    for t in 0..stages {
        let Some((pi, pj)) = e.first_nonzero(t) else { break };
        e.swap_rows(t, pi);
        e.swap_cols(t, pj);
        let inv = ring.inv(e.d.entry(t, t)).expect("nonzero pivot");
        e.scale_row(t, &inv);
        for i in t + 1..e.d.rows() {
            let x = e.d.entry(i, t).clone();
            if !x.is_zero() {
                e.add_mul_row(i, t, &ring.neg(&x));
            }
        }
        for j in t + 1..e.d.cols() {
            let x = e.d.entry(t, j).clone();
            if !x.is_zero() {
                e.add_mul_col(j, t, &ring.neg(&x));
            }
        }
    }
}

/// Rank over the fraction field.
pub fn rank(a: &Matrix) -> usize {
    smith_normal_form(a).rank()
}

/// Columns form a basis of `ker(A)` as a free module; the matrix is
/// `cols(A) x k` and empty when the kernel vanishes.
pub fn kernel_basis(a: &Matrix) -> Matrix {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let n = a.cols();
    if r == n {
        return Matrix::zero(a.ring(), n, 0);
    }
    let mut out = Matrix::zero(a.ring(), n, n - r);
    for (k, j) in (r..n).enumerate() {
        out.write_block(0, k, &snf.v.column(j));
    }
    out
}

/// Columns form a basis of `im(A)` as a free module (scaled columns of
/// `U^-1`); the matrix is `rows(A) x rank(A)`.
pub fn image_basis(a: &Matrix) -> Matrix {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let mut out = Matrix::zero(a.ring(), a.rows(), r);
    for j in 0..r {
        out.write_block(0, j, &snf.u_inv.column(j).scale(snf.d.entry(j, j)));
    }
    out
}

/// Exact solution `X` of `A * X = B`, or `None` when no solution exists in
/// the ring. When the columns of `A` are independent the solution is unique.
pub fn solve_exact(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    assert_eq!(a.ring(), b.ring(), "ring mismatch in solve");
    assert_eq!(a.rows(), b.rows(), "shape mismatch in solve");
    let ring = a.ring();
    let snf = smith_normal_form(a);
    let c = snf.u.mul(b);
    let min = a.rows().min(a.cols());
    let mut y = Matrix::zero(ring, a.cols(), b.cols());
    for i in 0..a.rows() {
        let d_i = if i < min { snf.d.entry(i, i).clone() } else { BigRational::zero() };
        for j in 0..b.cols() {
            let rhs = c.entry(i, j);
            if d_i.is_zero() {
                if !rhs.is_zero() {
                    return None;
                }
            } else {
                y.set(i, j, ring.div_exact(rhs, &d_i)?);
            }
        }
    }
    Some(snf.v.mul(&y))
}

/// Inverse of a square matrix, when it is invertible over its ring.
pub fn inverse(a: &Matrix) -> Option<Matrix> {
    if a.rows() != a.cols() {
        return None;
    }
    let snf = smith_normal_form(a);
    snf.d.is_identity().then(|| snf.v.mul(&snf.u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::ring::{int, Ring};
    use num_traits::One;
    use rand::Rng;
    use rand::SeedableRng;

    fn check_decomposition(a: &Matrix) {
        let snf = smith_normal_form(a);
        assert_eq!(snf.u.mul(a).mul(&snf.v), snf.d, "D = U*A*V fails");
        assert!(snf.u.mul(&snf.u_inv).is_identity());
        assert!(snf.v.mul(&snf.v_inv).is_identity());
        if a.ring() == Ring::Integers {
            assert!(snf.u.determinant().abs().is_one());
            assert!(snf.v.determinant().abs().is_one());
        }
        let factors = snf.invariant_factors();
        for w in factors.windows(2) {
            let q = a.ring().div_exact(&w[1], &w[0]);
            assert!(q.is_some(), "diagonal not divisibility-ordered: {factors:?}");
        }
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    assert!(snf.d.entry(i, j).is_zero(), "off-diagonal entry");
                }
            }
        }
    }

    #[test]
    fn identity_is_its_own_smith_form() {
        let a = Matrix::identity(Ring::Integers, 3);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.d, a);
        check_decomposition(&a);
    }

    #[test]
    fn two_by_two_worked_example() {
        // d1 = gcd of the entries = 2, d1*d2 = |det| = 8, so D = diag(2, 4).
        let a = Matrix::from_int_rows(Ring::Integers, &[&[2, 4], &[6, 8]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.d.entry(0, 0), &int(2));
        assert_eq!(snf.d.entry(1, 1), &int(4));
        check_decomposition(&a);
        assert_eq!(rank(&a), 2);
    }

    #[test]
    fn zero_matrix_passes_through() {
        let a = Matrix::zero(Ring::Integers, 2, 3);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.d, a);
        assert_eq!(rank(&a), 0);
    }

    #[test]
    fn kernel_of_injective_map_is_empty() {
        let a = Matrix::from_int_rows(Ring::Integers, &[&[2]]);
        assert_eq!(kernel_basis(&a).cols(), 0);
    }

    #[test]
    fn kernel_of_sum_map() {
        let a = Matrix::from_int_rows(Ring::Integers, &[&[1, 1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero_matrix());
        assert!(k.entry(0, 0).abs().is_one());
        assert_eq!(k.entry(0, 0), &-k.entry(1, 0).clone());
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let a = Matrix::zero(Ring::Integers, 1, 2);
        assert_eq!(kernel_basis(&a).cols(), 2);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::identity(Ring::Integers, 4)), 4);
        assert_eq!(rank(&Matrix::zero(Ring::Rationals, 3, 2)), 0);
        let a = Matrix::from_int_rows(Ring::Integers, &[&[1, 2], &[2, 4]]);
        assert_eq!(rank(&a), 1);
    }

    #[test]
    fn solve_recovers_integer_combinations() {
        let a = Matrix::from_int_rows(Ring::Integers, &[&[2, 0], &[0, 3]]);
        let b = Matrix::from_int_rows(Ring::Integers, &[&[4], &[9]]);
        let x = solve_exact(&a, &b).unwrap();
        assert_eq!(a.mul(&x), b);
        let bad = Matrix::from_int_rows(Ring::Integers, &[&[1], &[0]]);
        assert!(solve_exact(&a, &bad).is_none());
    }

    #[test]
    fn inverse_of_unimodular() {
        let a = Matrix::from_int_rows(Ring::Integers, &[&[1, 2], &[0, 1]]);
        let inv = inverse(&a).unwrap();
        assert!(a.mul(&inv).is_identity());
        let not_unimodular = Matrix::from_int_rows(Ring::Integers, &[&[2]]);
        assert!(inverse(&not_unimodular).is_none());
        let f5 = Matrix::from_int_rows(Ring::PrimeField(5), &[&[2]]);
        assert_eq!(inverse(&f5).unwrap().entry(0, 0), &int(3));
    }

    #[test]
    fn image_basis_spans_image() {
        let a = Matrix::from_int_rows(Ring::Integers, &[&[2, 4], &[0, 0]]);
        let im = image_basis(&a);
        assert_eq!(im.cols(), 1);
        // 2*e1 generates the image.
        assert_eq!(im.entry(0, 0).abs(), int(2).abs());
        assert!(im.entry(1, 0).is_zero());
    }

    #[test]
    fn randomized_invariants_and_determinism() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let rows = rng.gen_range(0..=5);
            let cols = rng.gen_range(0..=5);
            let mut m = Matrix::zero(Ring::Integers, rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    m.set(i, j, int(rng.gen_range(-9..=9)));
                }
            }
            check_decomposition(&m);
            let first = smith_normal_form(&m);
            let second = smith_normal_form(&m);
            assert_eq!(first.d, second.d);
            assert_eq!(first.u, second.u);
            assert_eq!(first.v, second.v);
            let k = kernel_basis(&m);
            assert!(m.mul(&k).is_zero_matrix());
            assert_eq!(k.cols(), cols - rank(&m));
        }
    }

    #[test]
    fn field_elimination_gives_zero_one_diagonal() {
        for ring in [Ring::Rationals, Ring::PrimeField(7)] {
            let a = Matrix::from_int_rows(ring, &[&[2, 4], &[6, 8], &[1, 2]]);
            let snf = smith_normal_form(&a);
            check_decomposition(&a);
            for i in 0..2 {
                let d = snf.d.entry(i, i);
                assert!(d.is_zero() || d.is_one());
            }
        }
    }
}

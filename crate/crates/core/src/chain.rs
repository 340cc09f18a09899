//! Bounded chain complexes of finitely generated free modules.
//!
//! A complex stores ranks per degree and one differential matrix per degree;
//! the constructor rejects anything with a nonzero composite of consecutive
//! differentials, so `d . d = 0` is an invariant every other operation can
//! rely on. Homology is reported as an isomorphism class: free rank plus a
//! divisibility-ordered chain of torsion coefficients.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;
use crate::matrix::Matrix;
use crate::ring::Ring;
use crate::simplicial_set::FiniteSimplicialSet;
use crate::snf;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainComplex {
    ring: Ring,
    ranks: BTreeMap<i64, usize>,
    /// `diffs[n]` is the matrix of `d_n : C_n -> C_{n-1}`, stored only where
    /// both adjacent ranks are nonzero.
    diffs: BTreeMap<i64, Matrix>,
}

impl ChainComplex {
    pub fn new(
        ring: Ring,
        ranks: BTreeMap<i64, usize>,
        diffs: BTreeMap<i64, Matrix>,
    ) -> Result<Self, Error> {
        ring.validate()?;
        let ranks: BTreeMap<i64, usize> =
            ranks.into_iter().filter(|&(_, r)| r > 0).collect();
        let rank_of = |n: i64| ranks.get(&n).copied().unwrap_or(0);
        let mut kept = BTreeMap::new();
        for (n, m) in diffs {
            if m.ring() != ring {
                return Err(Error::RingMismatch(ring, m.ring()));
            }
            let (rows, cols) = (rank_of(n - 1), rank_of(n));
            if (m.rows(), m.cols()) != (rows, cols) {
                return Err(Error::Shape(format!(
                    "differential at degree {n} is {}x{}, expected {rows}x{cols}",
                    m.rows(),
                    m.cols()
                )));
            }
            if rows > 0 && cols > 0 {
                kept.insert(n, m);
            }
        }
        let complex = ChainComplex { ring, ranks, diffs: kept };
        for n in complex.ranks.keys() {
            let d_n = complex.differential(*n);
            let d_next = complex.differential(n + 1);
            if !d_n.mul(&d_next).is_zero_matrix() {
                return Err(Error::DifferentialSquare { upper: n + 1 });
            }
        }
        Ok(complex)
    }

    pub fn zero(ring: Ring) -> Self {
        ChainComplex { ring, ranks: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    /// Free module of the given rank concentrated in one degree.
    pub fn concentrated(ring: Ring, degree: i64, rank: usize) -> Self {
        let mut ranks = BTreeMap::new();
        if rank > 0 {
            ranks.insert(degree, rank);
        }
        ChainComplex { ring, ranks, diffs: BTreeMap::new() }
    }

    /// The two-term complex `R --(m)--> R` in degrees `degree+1 -> degree`.
    pub fn two_term(ring: Ring, degree: i64, m: i64) -> Self {
        let mut ranks = BTreeMap::new();
        ranks.insert(degree, 1);
        ranks.insert(degree + 1, 1);
        let mut diffs = BTreeMap::new();
        diffs.insert(degree + 1, Matrix::from_int_rows(ring, &[&[m]]));
        ChainComplex::new(ring, ranks, diffs).expect("two-term complex")
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self, n: i64) -> usize {
        self.ranks.get(&n).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &BTreeMap<i64, usize> {
        &self.ranks
    }

    /// The matrix of `d_n`, synthesizing a zero matrix off support.
    pub fn differential(&self, n: i64) -> Matrix {
        match self.diffs.get(&n) {
            Some(m) => m.clone(),
            None => Matrix::zero(self.ring, self.rank(n - 1), self.rank(n)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.ranks.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.ranks.keys().next_back().copied()
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.values().sum()
    }

    /// Degrees where homology can be nonzero.
    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.ranks.keys().copied()
    }

    /// Isomorphism class of `ker d_n / im d_{n+1}`.
    ///
    /// The kernel basis is computed first, the image of `d_{n+1}` is expressed
    /// in that basis, and the Smith normal form of the resulting presentation
    /// yields the free rank and torsion.
    pub fn homology(&self, n: i64) -> HomologyGroup {
        if self.rank(n) == 0 {
            return HomologyGroup::trivial();
        }
        let kernel = snf::kernel_basis(&self.differential(n));
        if kernel.cols() == 0 {
            return HomologyGroup::trivial();
        }
        let boundaries = self.differential(n + 1);
        let presentation = snf::solve_exact(&kernel, &boundaries)
            .expect("boundaries lie in the kernel since d.d = 0");
        HomologyGroup::from_presentation(self.ring, kernel.cols(), &presentation)
    }

    pub fn homology_range(&self, lo: i64, hi: i64) -> BTreeMap<i64, HomologyGroup> {
        (lo..=hi).map(|n| (n, self.homology(n))).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.support().all(|n| self.homology(n).is_trivial())
    }
}

/// A degreewise map of complexes commuting with the differentials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    components: BTreeMap<i64, Matrix>,
}

impl ChainMap {
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        components: BTreeMap<i64, Matrix>,
    ) -> Result<Self, Error> {
        if source.ring() != target.ring() {
            return Err(Error::RingMismatch(source.ring(), target.ring()));
        }
        let mut kept = BTreeMap::new();
        for (n, m) in components {
            let (rows, cols) = (target.rank(n), source.rank(n));
            if (m.rows(), m.cols()) != (rows, cols) {
                return Err(Error::Shape(format!(
                    "component at degree {n} is {}x{}, expected {rows}x{cols}",
                    m.rows(),
                    m.cols()
                )));
            }
            if rows > 0 && cols > 0 {
                kept.insert(n, m);
            }
        }
        let map = ChainMap { source, target, components: kept };
        for n in map.source.support().collect::<Vec<_>>() {
            let lhs = map.target.differential(n).mul(&map.component(n));
            let rhs = map.component(n - 1).mul(&map.source.differential(n));
            if lhs != rhs {
                return Err(Error::NotChainMap { degree: n });
            }
        }
        Ok(map)
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let components = c
            .ranks()
            .iter()
            .map(|(&n, &r)| (n, Matrix::identity(c.ring(), r)))
            .collect();
        ChainMap { source: c.clone(), target: c.clone(), components }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        ChainMap { source: source.clone(), target: target.clone(), components: BTreeMap::new() }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn component(&self, n: i64) -> Matrix {
        match self.components.get(&n) {
            Some(m) => m.clone(),
            None => Matrix::zero(self.source.ring(), self.target.rank(n), self.source.rank(n)),
        }
    }

    pub fn compose(&self, first: &ChainMap) -> Result<ChainMap, Error> {
        if first.target != self.source {
            return Err(Error::Shape("composition of non-composable chain maps".into()));
        }
        let degrees: std::collections::BTreeSet<i64> = self
            .components
            .keys()
            .chain(first.components.keys())
            .copied()
            .collect();
        let components = degrees
            .into_iter()
            .map(|n| (n, self.component(n).mul(&first.component(n))))
            .collect();
        ChainMap::new(first.source.clone(), self.target.clone(), components)
    }
}

/// Mapping cone of `f : S -> T`: degree `n` is `T_n (+) S_{n-1}` with
/// differential `[[d_T, f], [0, -d_S]]`.
pub fn cone(f: &ChainMap) -> ChainComplex {
    let ring = f.source().ring();
    let (s, t) = (f.source(), f.target());
    let mut ranks = BTreeMap::new();
    let degrees: std::collections::BTreeSet<i64> = t
        .support()
        .chain(s.support().map(|n| n + 1))
        .collect();
    for &n in &degrees {
        let r = t.rank(n) + s.rank(n - 1);
        if r > 0 {
            ranks.insert(n, r);
        }
    }
    let mut diffs = BTreeMap::new();
    for &n in &degrees {
        let rows = t.rank(n - 1) + s.rank(n - 2);
        let cols = t.rank(n) + s.rank(n - 1);
        if rows == 0 || cols == 0 {
            continue;
        }
        let mut m = Matrix::zero(ring, rows, cols);
        m.write_block(0, 0, &t.differential(n));
        m.write_block(0, t.rank(n), &f.component(n - 1));
        m.write_block(t.rank(n - 1), t.rank(n), &s.differential(n - 1).neg());
        diffs.insert(n, m);
    }
    ChainComplex::new(ring, ranks, diffs).expect("cone of a chain map is a complex")
}

/// Degree shift: degree `n` of the output is degree `n - k` of the input and
/// the differential picks up the sign `(-1)^k`.
pub fn shift(c: &ChainComplex, k: i64) -> ChainComplex {
    let ranks = c.ranks().iter().map(|(&n, &r)| (n + k, r)).collect();
    let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
    let diffs = c
        .ranks()
        .keys()
        .filter_map(|&n| {
            let d = c.differential(n);
            (d.rows() > 0 && d.cols() > 0).then(|| {
                (n + k, if sign == 1 { d } else { d.neg() })
            })
        })
        .collect();
    ChainComplex::new(c.ring(), ranks, diffs).expect("shift of a complex is a complex")
}

/// Tensor product with the Koszul sign rule
/// `d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy`; the summands of degree `n`
/// are ordered by ascending degree of the left factor.
pub fn tensor(c: &ChainComplex, d: &ChainComplex) -> Result<ChainComplex, Error> {
    if c.ring() != d.ring() {
        return Err(Error::RingMismatch(c.ring(), d.ring()));
    }
    let ring = c.ring();
    let blocks = |n: i64| -> Vec<(i64, i64, usize)> {
        c.ranks()
            .iter()
            .filter_map(|(&k, &rk)| {
                let l = n - k;
                let rl = d.rank(l);
                (rl > 0).then_some((k, l, rk * rl))
            })
            .collect()
    };
    let degrees: std::collections::BTreeSet<i64> = c
        .support()
        .flat_map(|k| d.support().map(move |l| k + l))
        .collect();
    let mut ranks = BTreeMap::new();
    for &n in &degrees {
        let r: usize = blocks(n).iter().map(|&(_, _, r)| r).sum();
        if r > 0 {
            ranks.insert(n, r);
        }
    }
    let mut diffs = BTreeMap::new();
    for &n in &degrees {
        let src = blocks(n);
        let tgt = blocks(n - 1);
        let rows: usize = tgt.iter().map(|&(_, _, r)| r).sum();
        let cols: usize = src.iter().map(|&(_, _, r)| r).sum();
        if rows == 0 || cols == 0 {
            continue;
        }
        let offset = |list: &[(i64, i64, usize)], k: i64| -> Option<usize> {
            let mut off = 0;
            for &(kk, _, r) in list {
                if kk == k {
                    return Some(off);
                }
                off += r;
            }
            None
        };
        let mut m = Matrix::zero(ring, rows, cols);
        let mut col = 0;
        for &(k, l, width) in &src {
            // d_C (x) id lands in the (k-1, l) block.
            if let Some(r0) = offset(&tgt, k - 1) {
                let block = c.differential(k).kronecker(&Matrix::identity(ring, d.rank(l)));
                m.write_block(r0, col, &block);
            }
            // (-1)^k id (x) d_D lands in the (k, l-1) block.
            if let Some(r0) = offset(&tgt, k) {
                let block = Matrix::identity(ring, c.rank(k)).kronecker(&d.differential(l));
                let block = if k.rem_euclid(2) == 0 { block } else { block.neg() };
                m.write_block(r0, col, &block);
            }
            col += width;
        }
        diffs.insert(n, m);
    }
    ChainComplex::new(ring, ranks, diffs)
}

/// Degreewise block sum, block order equal to input order.
pub fn direct_sum(cs: &[ChainComplex]) -> Result<ChainComplex, Error> {
    let Some(first) = cs.first() else {
        return Ok(ChainComplex::zero(Ring::Integers));
    };
    let ring = first.ring();
    for c in cs {
        if c.ring() != ring {
            return Err(Error::RingMismatch(ring, c.ring()));
        }
    }
    let degrees: std::collections::BTreeSet<i64> =
        cs.iter().flat_map(|c| c.support().collect::<Vec<_>>()).collect();
    let mut ranks = BTreeMap::new();
    for &n in &degrees {
        let r: usize = cs.iter().map(|c| c.rank(n)).sum();
        if r > 0 {
            ranks.insert(n, r);
        }
    }
    let mut diffs = BTreeMap::new();
    for &n in &degrees {
        let rows: usize = cs.iter().map(|c| c.rank(n - 1)).sum();
        let cols: usize = cs.iter().map(|c| c.rank(n)).sum();
        if rows == 0 || cols == 0 {
            continue;
        }
        let mut m = Matrix::zero(ring, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for c in cs {
            m.write_block(r0, c0, &c.differential(n));
            r0 += c.rank(n - 1);
            c0 += c.rank(n);
        }
        diffs.insert(n, m);
    }
    ChainComplex::new(ring, ranks, diffs)
}

/// A map is a quasi-isomorphism exactly when its cone is acyclic.
pub fn is_quasi_iso(f: &ChainMap) -> bool {
    cone(f).is_acyclic()
}

/// Quasi-isomorphism on a degree range: the cone homology vanishes there.
/// This is the right notion for maps between windowed totalizations, whose
/// top materialized degree carries truncation garbage by construction.
pub fn is_quasi_iso_on(f: &ChainMap, lo: i64, hi: i64) -> bool {
    let c = cone(f);
    (lo..=hi).all(|n| c.homology(n).is_trivial())
}

/// Isomorphism class of a finitely generated module: free rank plus a
/// divisibility-ordered chain of torsion coefficients (each `> 1`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomologyGroup {
    free_rank: usize,
    torsion: Vec<BigUint>,
}

impl HomologyGroup {
    pub fn trivial() -> Self {
        HomologyGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        HomologyGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Self {
        HomologyGroup::from_orders(free_rank, torsion.into_iter().map(BigUint::from).collect())
    }

    /// Quotient of `R^generators` by the column span of `presentation`.
    fn from_presentation(ring: Ring, generators: usize, presentation: &Matrix) -> Self {
        let snf = snf::smith_normal_form(presentation);
        let free_rank = generators - snf.rank();
        if ring.is_field() {
            return HomologyGroup::free(free_rank);
        }
        let torsion = snf
            .invariant_factors()
            .iter()
            .filter(|d| !d.is_one())
            .map(|d| d.to_integer().magnitude().clone())
            .collect();
        HomologyGroup { free_rank, torsion }
    }

    /// Canonical form of a direct sum of cyclic groups of the given orders.
    ///
    /// The orders are fed through integer Smith normal form (as a diagonal
    /// matrix), which renormalizes any multiset of cyclic orders into a
    /// divisibility chain without factoring anything.
    fn from_orders(free_rank: usize, orders: Vec<BigUint>) -> Self {
        let orders: Vec<BigUint> =
            orders.into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect();
        if orders.len() <= 1 {
            return HomologyGroup { free_rank, torsion: orders };
        }
        let n = orders.len();
        let mut diag = Matrix::zero(Ring::Integers, n, n);
        for (i, d) in orders.iter().enumerate() {
            diag.set(i, i, BigRational::from_integer(BigInt::from(d.clone())));
        }
        let snf = snf::smith_normal_form(&diag);
        let torsion = snf
            .invariant_factors()
            .iter()
            .filter(|d| !d.is_one())
            .map(|d| d.to_integer().magnitude().clone())
            .collect();
        HomologyGroup { free_rank, torsion }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigUint] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn sum(&self, other: &HomologyGroup) -> HomologyGroup {
        let mut orders = self.torsion.clone();
        orders.extend_from_slice(&other.torsion);
        HomologyGroup::from_orders(self.free_rank + other.free_rank, orders)
    }

    pub fn sum_of(groups: impl IntoIterator<Item = HomologyGroup>) -> HomologyGroup {
        groups
            .into_iter()
            .fold(HomologyGroup::trivial(), |acc, g| acc.sum(&g))
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" \u{2295} "))
    }
}

/// Tensor product of finitely generated modules:
/// `(Z^a + sum Z/d_i) (x) (Z^b + sum Z/e_j)` expands through
/// `Z/d (x) Z/e = Z/gcd(d, e)` and is renormalized to divisor-chain form.
pub fn tensor_groups(g: &HomologyGroup, h: &HomologyGroup) -> HomologyGroup {
    use num_integer::Integer as _;
    let free_rank = g.free_rank * h.free_rank;
    let mut orders: Vec<BigUint> = Vec::new();
    for d in &g.torsion {
        for _ in 0..h.free_rank {
            orders.push(d.clone());
        }
    }
    for e in &h.torsion {
        for _ in 0..g.free_rank {
            orders.push(e.clone());
        }
    }
    for d in &g.torsion {
        for e in &h.torsion {
            orders.push(d.gcd(e));
        }
    }
    HomologyGroup::from_orders(free_rank, orders)
}

/// The degree-`n` right-hand side of the Kunneth isomorphism for
/// `N(K) (x) C`: the sum over `k + l = n` of `H_k(K) (x) H_l(C)`.
///
/// Requires every integral homology group of `K` to be free; the simplicial
/// set is always measured over `Z`, whatever the ring of `C`.
pub fn kunneth_rhs(
    k: &FiniteSimplicialSet,
    c: &ChainComplex,
    n: i64,
) -> Result<HomologyGroup, Error> {
    let nk = k.normalized_chains(Ring::Integers, k.truncation())?;
    let mut result = HomologyGroup::trivial();
    for deg in nk.support().collect::<Vec<_>>() {
        let hk = nk.homology(deg);
        if !hk.torsion().is_empty() {
            return Err(Error::NonFreeHomology { degree: deg });
        }
        let hc = c.homology(n - deg);
        result = result.sum(&tensor_groups(&HomologyGroup::free(hk.free_rank()), &hc));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;

    fn z(ring: Ring, degree: i64) -> ChainComplex {
        ChainComplex::concentrated(ring, degree, 1)
    }

    #[test]
    fn rejects_nonzero_square() {
        let mut ranks = BTreeMap::new();
        ranks.insert(0, 1);
        ranks.insert(1, 1);
        ranks.insert(2, 1);
        let mut diffs = BTreeMap::new();
        diffs.insert(1, Matrix::from_int_rows(Ring::Integers, &[&[1]]));
        diffs.insert(2, Matrix::from_int_rows(Ring::Integers, &[&[1]]));
        let err = ChainComplex::new(Ring::Integers, ranks, diffs).unwrap_err();
        assert!(matches!(err, Error::DifferentialSquare { upper: 2 }));
    }

    #[test]
    fn homology_of_multiplication_by_two() {
        // Z --x2--> Z in degrees 1 -> 0.
        let c = ChainComplex::two_term(Ring::Integers, 0, 2);
        assert_eq!(c.homology(0), HomologyGroup::new(0, vec![2]));
        assert_eq!(c.homology(1), HomologyGroup::trivial());
    }

    #[test]
    fn homology_of_zero_complex_vanishes() {
        let c = ChainComplex::zero(Ring::Integers);
        assert!(c.homology(0).is_trivial());
        assert!(c.is_acyclic());
    }

    #[test]
    fn homology_over_a_field_has_no_torsion() {
        let c = ChainComplex::two_term(Ring::Rationals, 0, 2);
        assert!(c.homology(0).is_trivial());
        let c = ChainComplex::two_term(Ring::PrimeField(2), 0, 2);
        // x2 = 0 over F2, so both homology groups are one-dimensional.
        assert_eq!(c.homology(0), HomologyGroup::free(1));
        assert_eq!(c.homology(1), HomologyGroup::free(1));
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = z(Ring::Integers, 0);
        let cone = cone(&ChainMap::identity(&c));
        assert!(cone.is_acyclic());
    }

    #[test]
    fn cone_of_multiplication_by_two() {
        let c = z(Ring::Integers, 0);
        let mut components = BTreeMap::new();
        components.insert(0, Matrix::from_int_rows(Ring::Integers, &[&[2]]));
        let f = ChainMap::new(c.clone(), c.clone(), components).unwrap();
        let cone = cone(&f);
        assert_eq!(cone.homology(0), HomologyGroup::new(0, vec![2]));
        assert!(cone.homology(-1).is_trivial());
        assert!(cone.homology(1).is_trivial());
    }

    #[test]
    fn cone_of_map_to_zero_is_the_suspension() {
        let c = ChainComplex::two_term(Ring::Integers, 0, 3);
        let zero = ChainComplex::zero(Ring::Integers);
        let cone = cone(&ChainMap::zero(&c, &zero));
        assert_eq!(cone, shift(&c, 1));
    }

    #[test]
    fn shift_moves_degrees_and_signs() {
        let c = z(Ring::Integers, 0);
        assert_eq!(shift(&c, 1), z(Ring::Integers, 1));
        let two = ChainComplex::two_term(Ring::Integers, 0, 2);
        assert_eq!(shift(&shift(&two, 1), -1), two);
        let s = shift(&two, 1);
        assert_eq!(s.differential(2).entry(0, 0), &int(-2));
        assert_eq!(s.homology(1), HomologyGroup::new(0, vec![2]));
    }

    #[test]
    fn tensor_unit_and_ranks() {
        let c = ChainComplex::two_term(Ring::Integers, 0, 2);
        let unit = z(Ring::Integers, 0);
        assert_eq!(tensor(&unit, &c).unwrap(), c);
        let e = direct_sum(&[z(Ring::Integers, 0), z(Ring::Integers, 1)]).unwrap();
        let sq = tensor(&e, &e).unwrap();
        assert_eq!(sq.rank(0), 1);
        assert_eq!(sq.rank(1), 2);
        assert_eq!(sq.rank(2), 1);
    }

    #[test]
    fn tensor_ring_mismatch_is_rejected() {
        let a = z(Ring::Integers, 0);
        let b = z(Ring::Rationals, 0);
        assert!(matches!(tensor(&a, &b), Err(Error::RingMismatch(_, _))));
    }

    #[test]
    fn tensor_with_circle_matches_kunneth() {
        // N(circle) (x) (Z --x3--> Z) has H_0 = H_1 = Z/3 and H_2 = 0.
        let circle = FiniteSimplicialSet::circle();
        let n = circle.normalized_chains(Ring::Integers, 1).unwrap();
        let c = ChainComplex::two_term(Ring::Integers, 0, 3);
        let t = tensor(&n, &c).unwrap();
        assert_eq!(t.homology(0), HomologyGroup::new(0, vec![3]));
        assert_eq!(t.homology(1), HomologyGroup::new(0, vec![3]));
        assert!(t.homology(2).is_trivial());
        for deg in 0..=2 {
            assert_eq!(t.homology(deg), kunneth_rhs(&circle, &c, deg).unwrap());
        }
    }

    #[test]
    fn direct_sum_is_additive_on_homology() {
        let a = ChainComplex::two_term(Ring::Integers, 0, 4);
        let b = ChainComplex::two_term(Ring::Integers, -1, 6);
        let s = direct_sum(&[a.clone(), b.clone()]).unwrap();
        for n in -2..=2 {
            assert_eq!(s.homology(n), a.homology(n).sum(&b.homology(n)));
        }
        assert_eq!(direct_sum(&[a.clone()]).unwrap(), a);
    }

    #[test]
    fn quasi_iso_detection() {
        let c = z(Ring::Integers, 0);
        assert!(is_quasi_iso(&ChainMap::identity(&c)));
        let mut components = BTreeMap::new();
        components.insert(0, Matrix::from_int_rows(Ring::Integers, &[&[2]]));
        let times_two = ChainMap::new(c.clone(), c.clone(), components).unwrap();
        assert!(!is_quasi_iso(&times_two));
        // An acyclic source maps quasi-isomorphically to the zero complex.
        let disc = ChainComplex::two_term(Ring::Integers, 0, 1);
        let zero = ChainComplex::zero(Ring::Integers);
        assert!(is_quasi_iso(&ChainMap::zero(&disc, &zero)));
    }

    #[test]
    fn group_arithmetic() {
        let g = HomologyGroup::new(1, vec![2, 4]);
        assert_eq!(tensor_groups(&HomologyGroup::free(1), &g), g);
        assert_eq!(
            tensor_groups(&HomologyGroup::new(0, vec![2]), &HomologyGroup::new(0, vec![3])),
            HomologyGroup::trivial()
        );
        assert_eq!(
            tensor_groups(&HomologyGroup::new(0, vec![4]), &HomologyGroup::new(0, vec![6])),
            HomologyGroup::new(0, vec![2])
        );
        // Z/2 + Z/3 renormalizes to Z/6.
        let s = HomologyGroup::new(0, vec![2]).sum(&HomologyGroup::new(0, vec![3]));
        assert_eq!(s, HomologyGroup::new(0, vec![6]));
        assert_eq!(format!("{}", HomologyGroup::new(2, vec![3])), "Z^2 \u{2295} Z/3");
        assert_eq!(format!("{}", HomologyGroup::trivial()), "0");
    }

    #[test]
    fn kunneth_rhs_point_and_circle() {
        let point = FiniteSimplicialSet::simplex(0);
        let c = ChainComplex::two_term(Ring::Integers, 0, 5);
        for n in -1..=2 {
            assert_eq!(kunneth_rhs(&point, &c, n).unwrap(), c.homology(n));
        }
        let boundary = FiniteSimplicialSet::boundary(2);
        let unit = z(Ring::Integers, 0);
        assert_eq!(kunneth_rhs(&boundary, &unit, 0).unwrap(), HomologyGroup::free(1));
        assert_eq!(kunneth_rhs(&boundary, &unit, 1).unwrap(), HomologyGroup::free(1));
    }
}

//! Direct-sum and direct-product totalizations of double complexes.
//!
//! Degree `n` of the total complex collects the bidegrees on the antidiagonal
//! `k + l = n`, blocks ordered by ascending `k`. The raw double complex
//! stores commuting differentials; totalization twists the vertical
//! differential by `(-1)^k`, and the constructor's `d . d = 0` check is what
//! validates that sign convention. Degrees `[lo - 1, hi + 1]` are
//! materialized so homology is exact on `[lo, hi]`.

use std::collections::BTreeMap;

use crate::chain::{ChainComplex, ChainMap};
use crate::dold_kan::{DoubleComplex, DoubleComplexMap};
use crate::error::Error;
use crate::matrix::Matrix;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DegreeWindow {
    pub lo: i64,
    pub hi: i64,
}

impl DegreeWindow {
    pub fn new(lo: i64, hi: i64) -> Result<Self, Error> {
        if lo > hi {
            return Err(Error::Shape(format!("empty degree window [{lo}, {hi}]")));
        }
        Ok(DegreeWindow { lo, hi })
    }

    pub fn contains(&self, n: i64) -> bool {
        self.lo <= n && n <= self.hi
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

/// Block layout of one total degree: bidegrees ascending in `k` with their
/// offsets.
fn layout(x: &DoubleComplex, n: i64) -> Vec<((i64, i64), usize)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for (k, l) in x.antidiagonal(n) {
        out.push(((k, l), offset));
        offset += x.rank(k, l);
    }
    out
}

fn assemble(x: &DoubleComplex, w: DegreeWindow) -> ChainComplex {
    let ring = x.ring();
    let mut ranks = BTreeMap::new();
    for n in w.lo - 1..=w.hi + 1 {
        let r: usize = x.antidiagonal(n).iter().map(|&(k, l)| x.rank(k, l)).sum();
        if r > 0 {
            ranks.insert(n, r);
        }
    }
    let mut diffs = BTreeMap::new();
    for n in w.lo..=w.hi + 1 {
        let src = layout(x, n);
        let tgt = layout(x, n - 1);
        let rows: usize = tgt.iter().map(|&((k, l), _)| x.rank(k, l)).sum();
        let cols: usize = src.iter().map(|&((k, l), _)| x.rank(k, l)).sum();
        if rows == 0 || cols == 0 {
            continue;
        }
        let tgt_offset = |kk: i64| -> Option<usize> {
            tgt.iter().find(|&&((k, _), _)| k == kk).map(|&(_, o)| o)
        };
        let mut m = Matrix::zero(ring, rows, cols);
        for &((k, l), c0) in &src {
            if let Some(r0) = tgt_offset(k - 1) {
                m.write_block(r0, c0, &x.horiz(k, l));
            }
            if let Some(r0) = tgt_offset(k) {
                let v = x.vert(k, l);
                let v = if k.rem_euclid(2) == 0 { v } else { v.neg() };
                m.write_block(r0, c0, &v);
            }
        }
        diffs.insert(n, m);
    }
    ChainComplex::new(ring, ranks, diffs)
        .expect("totalization of a double complex squares to zero")
}

/// Direct-sum totalization on a window. The stored double complex has finite
/// support, so every antidiagonal is finite and the sum is exact as far as
/// the support allows.
pub fn tot_sum(x: &DoubleComplex, w: DegreeWindow) -> ChainComplex {
    assemble(x, w)
}

/// Direct-product totalization on a window. Finite antidiagonals make the
/// product degreewise equal to the sum; callers certify the finiteness
/// precondition (see `cosimplicial_totalization` and `holim`).
pub fn tot_prod(x: &DoubleComplex, w: DegreeWindow) -> ChainComplex {
    assemble(x, w)
}

/// Totalization of a morphism of double complexes, as a chain map between
/// the sum totalizations.
pub fn tot_sum_map(f: &DoubleComplexMap, w: DegreeWindow) -> ChainMap {
    let source = tot_sum(f.source(), w);
    let target = tot_sum(f.target(), w);
    let ring = source.ring();
    let mut components = BTreeMap::new();
    for n in w.lo - 1..=w.hi + 1 {
        let src = layout(f.source(), n);
        let tgt = layout(f.target(), n);
        let rows = target.rank(n);
        let cols = source.rank(n);
        if rows == 0 || cols == 0 {
            continue;
        }
        let mut m = Matrix::zero(ring, rows, cols);
        for &((k, l), c0) in &src {
            if let Some(&(_, r0)) = tgt.iter().find(|&&((kk, ll), _)| (kk, ll) == (k, l)) {
                m.write_block(r0, c0, &f.component(k, l));
            }
        }
        components.insert(n, m);
    }
    ChainMap::new(source, target, components)
        .expect("totalization of a double-complex morphism is a chain map")
}

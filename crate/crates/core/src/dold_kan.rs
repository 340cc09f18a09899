//! Simplicial and cosimplicial objects in chain complexes, their double
//! complexes, and the comparison maps between Moore, normalized, and reduced
//! Moore complexes.
//!
//! Double complexes here follow the commuting convention: horizontal and
//! vertical differentials square to zero and commute with each other (the
//! sign twist happens later, in totalization).
//!
//! Normalized and reduced complexes are kept free with explicit bases:
//! `N_n` is the kernel of the stacked faces `d_1..d_n` with its inclusion
//! into `M_n`, the degenerate part `D_n` is an explicit image basis of the
//! stacked degeneracies, and the reduced complex `M_n / D_n` is materialized
//! on the image of the `N` basis with the projection along `D` as quotient
//! map. The block matrix `[N | D]` being invertible over the ring is exactly
//! the classical splitting, and is asserted.

use std::collections::BTreeMap;

use crate::chain::{ChainComplex, ChainMap};
use crate::error::Error;
use crate::matrix::Matrix;
use crate::ring::Ring;
use crate::snf;

/// A simplicial object in chain complexes, truncated at some level.
#[derive(Clone, Debug)]
pub struct SimplicialChainComplex {
    levels: Vec<ChainComplex>,
    /// `faces[n - 1][i]` is `d_i : X_n -> X_{n-1}` for `0 <= i <= n`.
    faces: Vec<Vec<ChainMap>>,
    /// `degeneracies[n - 1][i]` is `s_i : X_{n-1} -> X_n` for `0 <= i <= n-1`.
    degeneracies: Vec<Vec<ChainMap>>,
}

impl SimplicialChainComplex {
    pub fn new(
        levels: Vec<ChainComplex>,
        faces: Vec<Vec<ChainMap>>,
        degeneracies: Vec<Vec<ChainMap>>,
    ) -> Result<Self, Error> {
        let x = SimplicialChainComplex { levels, faces, degeneracies };
        x.check_shapes()?;
        x.check_identities()?;
        Ok(x)
    }

    fn check_shapes(&self) -> Result<(), Error> {
        if self.levels.is_empty() {
            return Err(Error::Shape("a simplicial object needs at least level zero".into()));
        }
        let d = self.truncation();
        let ring = self.levels[0].ring();
        for l in &self.levels {
            if l.ring() != ring {
                return Err(Error::RingMismatch(ring, l.ring()));
            }
        }
        if self.faces.len() != d || self.degeneracies.len() != d {
            return Err(Error::Shape("face/degeneracy tables must cover levels 1..=d".into()));
        }
        for n in 1..=d {
            if self.faces[n - 1].len() != n + 1 {
                return Err(Error::Shape(format!("level {n} needs {} faces", n + 1)));
            }
            if self.degeneracies[n - 1].len() != n {
                return Err(Error::Shape(format!("level {n} needs {n} degeneracies")));
            }
            for (i, f) in self.faces[n - 1].iter().enumerate() {
                if f.source() != &self.levels[n] || f.target() != &self.levels[n - 1] {
                    return Err(Error::Shape(format!("face d_{i} at level {n} has wrong ends")));
                }
            }
            for (i, s) in self.degeneracies[n - 1].iter().enumerate() {
                if s.source() != &self.levels[n - 1] || s.target() != &self.levels[n] {
                    return Err(Error::Shape(format!(
                        "degeneracy s_{i} at level {n} has wrong ends"
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_identities(&self) -> Result<(), Error> {
        let d = self.truncation();
        let fail = |msg: String| Err(Error::SimplicialIdentity(msg));
        // d_i d_j = d_{j-1} d_i for i < j (maps X_n -> X_{n-2}).
        for n in 2..=d {
            for j in 1..=n {
                for i in 0..j {
                    let lhs = self.face(n - 1, i).compose(self.face(n, j)).unwrap();
                    let rhs = self.face(n - 1, j - 1).compose(self.face(n, i)).unwrap();
                    if lhs != rhs {
                        return fail(format!("d_{i} d_{j} != d_{} d_{i} at level {n}", j - 1));
                    }
                }
            }
        }
        // s_i s_j = s_{j+1} s_i for i <= j (maps X_{n-2} -> X_n).
        for n in 2..=d {
            for j in 0..n - 1 {
                for i in 0..=j {
                    let lhs = self.degeneracy(n, i).compose(self.degeneracy(n - 1, j)).unwrap();
                    let rhs = self.degeneracy(n, j + 1).compose(self.degeneracy(n - 1, i)).unwrap();
                    if lhs != rhs {
                        return fail(format!("s_{i} s_{j} != s_{} s_{i} at level {n}", j + 1));
                    }
                }
            }
        }
        // Mixed identities (maps X_{n-1} -> X_{n-1} or X_n, via level n).
        for n in 1..=d {
            for i in 0..=n {
                for j in 0..n {
                    let lhs = self.face(n, i).compose(self.degeneracy(n, j)).unwrap();
                    let rhs = if i < j {
                        if n >= 2 {
                            self.degeneracy(n - 1, j - 1).compose(self.face(n - 1, i)).unwrap()
                        } else {
                            continue;
                        }
                    } else if i == j || i == j + 1 {
                        ChainMap::identity(&self.levels[n - 1])
                    } else if n >= 2 {
                        self.degeneracy(n - 1, j).compose(self.face(n - 1, i - 1)).unwrap()
                    } else {
                        continue;
                    };
                    if lhs != rhs {
                        return fail(format!("d_{i} s_{j} law fails at level {n}"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> Ring {
        self.levels[0].ring()
    }

    /// The truncation level `d`; levels `0..=d` are present.
    pub fn truncation(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &ChainComplex {
        &self.levels[n]
    }

    /// `d_i : X_n -> X_{n-1}`.
    pub fn face(&self, n: usize, i: usize) -> &ChainMap {
        &self.faces[n - 1][i]
    }

    /// `s_i : X_{n-1} -> X_n`.
    pub fn degeneracy(&self, n: usize, i: usize) -> &ChainMap {
        &self.degeneracies[n - 1][i]
    }

    /// Smallest internal degree over all levels.
    pub fn min_internal_degree(&self) -> Option<i64> {
        self.levels.iter().filter_map(ChainComplex::min_degree).min()
    }
}

/// A cosimplicial object in chain complexes, truncated at some level.
#[derive(Clone, Debug)]
pub struct CosimplicialChainComplex {
    levels: Vec<ChainComplex>,
    /// `cofaces[n - 1][i]` is `delta^i : X^{n-1} -> X^n` for `0 <= i <= n`.
    cofaces: Vec<Vec<ChainMap>>,
    /// `codegeneracies[n - 1][i]` is `sigma^i : X^n -> X^{n-1}` for
    /// `0 <= i <= n-1`.
    codegeneracies: Vec<Vec<ChainMap>>,
}

impl CosimplicialChainComplex {
    pub fn new(
        levels: Vec<ChainComplex>,
        cofaces: Vec<Vec<ChainMap>>,
        codegeneracies: Vec<Vec<ChainMap>>,
    ) -> Result<Self, Error> {
        let x = CosimplicialChainComplex { levels, cofaces, codegeneracies };
        x.check_shapes()?;
        x.check_identities()?;
        Ok(x)
    }

    fn check_shapes(&self) -> Result<(), Error> {
        if self.levels.is_empty() {
            return Err(Error::Shape("a cosimplicial object needs at least level zero".into()));
        }
        let d = self.truncation();
        let ring = self.levels[0].ring();
        for l in &self.levels {
            if l.ring() != ring {
                return Err(Error::RingMismatch(ring, l.ring()));
            }
        }
        if self.cofaces.len() != d || self.codegeneracies.len() != d {
            return Err(Error::Shape("coface/codegeneracy tables must cover levels 1..=d".into()));
        }
        for n in 1..=d {
            if self.cofaces[n - 1].len() != n + 1 {
                return Err(Error::Shape(format!("level {n} needs {} cofaces", n + 1)));
            }
            if self.codegeneracies[n - 1].len() != n {
                return Err(Error::Shape(format!("level {n} needs {n} codegeneracies")));
            }
            for (i, f) in self.cofaces[n - 1].iter().enumerate() {
                if f.source() != &self.levels[n - 1] || f.target() != &self.levels[n] {
                    return Err(Error::Shape(format!("coface {i} at level {n} has wrong ends")));
                }
            }
            for (i, s) in self.codegeneracies[n - 1].iter().enumerate() {
                if s.source() != &self.levels[n] || s.target() != &self.levels[n - 1] {
                    return Err(Error::Shape(format!(
                        "codegeneracy {i} at level {n} has wrong ends"
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_identities(&self) -> Result<(), Error> {
        let d = self.truncation();
        let fail = |msg: String| Err(Error::CosimplicialIdentity(msg));
        // delta^j delta^i = delta^i delta^{j-1} for i < j.
        for n in 2..=d {
            for j in 1..=n {
                for i in 0..j {
                    let lhs = self.coface(n, j).compose(self.coface(n - 1, i)).unwrap();
                    let rhs = self.coface(n, i).compose(self.coface(n - 1, j - 1)).unwrap();
                    if lhs != rhs {
                        return fail(format!("coface identity ({i}, {j}) fails at level {n}"));
                    }
                }
            }
        }
        // sigma^j sigma^i = sigma^i sigma^{j+1} for i <= j.
        for n in 2..=d {
            for j in 0..n - 1 {
                for i in 0..=j {
                    let lhs =
                        self.codegeneracy(n - 1, j).compose(self.codegeneracy(n, i)).unwrap();
                    let rhs =
                        self.codegeneracy(n - 1, i).compose(self.codegeneracy(n, j + 1)).unwrap();
                    if lhs != rhs {
                        return fail(format!(
                            "codegeneracy identity ({i}, {j}) fails at level {n}"
                        ));
                    }
                }
            }
        }
        // sigma^j delta^i laws.
        for n in 1..=d {
            for j in 0..n {
                for i in 0..=n {
                    let lhs = self.codegeneracy(n, j).compose(self.coface(n, i)).unwrap();
                    let rhs = if i < j {
                        if n >= 2 {
                            self.coface(n - 1, i).compose(self.codegeneracy(n - 1, j - 1)).unwrap()
                        } else {
                            continue;
                        }
                    } else if i == j || i == j + 1 {
                        ChainMap::identity(&self.levels[n - 1])
                    } else if n >= 2 {
                        self.coface(n - 1, i - 1).compose(self.codegeneracy(n - 1, j)).unwrap()
                    } else {
                        continue;
                    };
                    if lhs != rhs {
                        return fail(format!("sigma^{j} delta^{i} law fails at level {n}"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> Ring {
        self.levels[0].ring()
    }

    pub fn truncation(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &ChainComplex {
        &self.levels[n]
    }

    /// `delta^i : X^{n-1} -> X^n`.
    pub fn coface(&self, n: usize, i: usize) -> &ChainMap {
        &self.cofaces[n - 1][i]
    }

    /// `sigma^i : X^n -> X^{n-1}`.
    pub fn codegeneracy(&self, n: usize, i: usize) -> &ChainMap {
        &self.codegeneracies[n - 1][i]
    }

    pub fn max_internal_degree(&self) -> Option<i64> {
        self.levels.iter().filter_map(ChainComplex::max_degree).max()
    }
}

/// A double complex with commuting differentials: `dh : (k, l) -> (k-1, l)`,
/// `dv : (k, l) -> (k, l-1)`, `dh dh = 0`, `dv dv = 0`, `dh dv = dv dh`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DoubleComplex {
    ring: Ring,
    ranks: BTreeMap<(i64, i64), usize>,
    horiz: BTreeMap<(i64, i64), Matrix>,
    vert: BTreeMap<(i64, i64), Matrix>,
}

impl DoubleComplex {
    pub fn new(
        ring: Ring,
        ranks: BTreeMap<(i64, i64), usize>,
        horiz: BTreeMap<(i64, i64), Matrix>,
        vert: BTreeMap<(i64, i64), Matrix>,
    ) -> Result<Self, Error> {
        ring.validate()?;
        let ranks: BTreeMap<(i64, i64), usize> =
            ranks.into_iter().filter(|&(_, r)| r > 0).collect();
        let rank_of = |k: i64, l: i64| ranks.get(&(k, l)).copied().unwrap_or(0);
        let mut kept_h = BTreeMap::new();
        for (&(k, l), m) in &horiz {
            let (rows, cols) = (rank_of(k - 1, l), rank_of(k, l));
            if (m.rows(), m.cols()) != (rows, cols) {
                return Err(Error::Shape(format!(
                    "horizontal differential at ({k}, {l}) is {}x{}, expected {rows}x{cols}",
                    m.rows(),
                    m.cols()
                )));
            }
            if rows > 0 && cols > 0 {
                kept_h.insert((k, l), m.clone());
            }
        }
        let mut kept_v = BTreeMap::new();
        for (&(k, l), m) in &vert {
            let (rows, cols) = (rank_of(k, l - 1), rank_of(k, l));
            if (m.rows(), m.cols()) != (rows, cols) {
                return Err(Error::Shape(format!(
                    "vertical differential at ({k}, {l}) is {}x{}, expected {rows}x{cols}",
                    m.rows(),
                    m.cols()
                )));
            }
            if rows > 0 && cols > 0 {
                kept_v.insert((k, l), m.clone());
            }
        }
        let x = DoubleComplex { ring, ranks, horiz: kept_h, vert: kept_v };
        // Check every composite out of a nonzero source.
        for &(k, l) in x.ranks.keys() {
            if !x.horiz(k - 1, l).mul(&x.horiz(k, l)).is_zero_matrix() {
                return Err(Error::Shape(format!(
                    "horizontal differentials do not square to zero out of ({k}, {l})"
                )));
            }
            if !x.vert(k, l - 1).mul(&x.vert(k, l)).is_zero_matrix() {
                return Err(Error::Shape(format!(
                    "vertical differentials do not square to zero out of ({k}, {l})"
                )));
            }
            let vh = x.vert(k - 1, l).mul(&x.horiz(k, l));
            let hv = x.horiz(k, l - 1).mul(&x.vert(k, l));
            if vh != hv {
                return Err(Error::Shape(format!(
                    "differentials do not commute on the square out of ({k}, {l})"
                )));
            }
        }
        Ok(x)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self, k: i64, l: i64) -> usize {
        self.ranks.get(&(k, l)).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &BTreeMap<(i64, i64), usize> {
        &self.ranks
    }

    pub fn horiz(&self, k: i64, l: i64) -> Matrix {
        match self.horiz.get(&(k, l)) {
            Some(m) => m.clone(),
            None => Matrix::zero(self.ring, self.rank(k - 1, l), self.rank(k, l)),
        }
    }

    pub fn vert(&self, k: i64, l: i64) -> Matrix {
        match self.vert.get(&(k, l)) {
            Some(m) => m.clone(),
            None => Matrix::zero(self.ring, self.rank(k, l - 1), self.rank(k, l)),
        }
    }

    /// Bidegrees on the antidiagonal `k + l = n`, ascending in `k`.
    pub fn antidiagonal(&self, n: i64) -> Vec<(i64, i64)> {
        self.ranks.keys().copied().filter(|&(k, l)| k + l == n).collect()
    }

    /// The column `X_{k, *}` as a chain complex in the internal degree.
    pub fn column(&self, k: i64) -> ChainComplex {
        let ranks = self
            .ranks
            .iter()
            .filter(|&(&(kk, _), _)| kk == k)
            .map(|(&(_, l), &r)| (l, r))
            .collect();
        let diffs = self
            .vert
            .iter()
            .filter(|&(&(kk, _), _)| kk == k)
            .map(|(&(_, l), m)| (l, m.clone()))
            .collect();
        ChainComplex::new(self.ring, ranks, diffs).expect("column of a double complex")
    }
}

/// A morphism of double complexes: componentwise matrices commuting with
/// both differentials.
#[derive(Clone, Debug)]
pub struct DoubleComplexMap {
    source: DoubleComplex,
    target: DoubleComplex,
    components: BTreeMap<(i64, i64), Matrix>,
}

impl DoubleComplexMap {
    pub fn new(
        source: DoubleComplex,
        target: DoubleComplex,
        components: BTreeMap<(i64, i64), Matrix>,
    ) -> Result<Self, Error> {
        if source.ring() != target.ring() {
            return Err(Error::RingMismatch(source.ring(), target.ring()));
        }
        let f = DoubleComplexMap { source, target, components };
        for (&(k, l), m) in &f.components {
            if (m.rows(), m.cols()) != (f.target.rank(k, l), f.source.rank(k, l)) {
                return Err(Error::Shape(format!("component at ({k}, {l}) has wrong shape")));
            }
        }
        let squares: Vec<(i64, i64)> = f.source.ranks().keys().copied().collect();
        for (k, l) in squares {
            let h = f.target.horiz(k, l).mul(&f.component(k, l));
            let h2 = f.component(k - 1, l).mul(&f.source.horiz(k, l));
            if h != h2 {
                return Err(Error::Shape(format!(
                    "map does not commute with the horizontal differential at ({k}, {l})"
                )));
            }
            let v = f.target.vert(k, l).mul(&f.component(k, l));
            let v2 = f.component(k, l - 1).mul(&f.source.vert(k, l));
            if v != v2 {
                return Err(Error::Shape(format!(
                    "map does not commute with the vertical differential at ({k}, {l})"
                )));
            }
        }
        Ok(f)
    }

    pub fn source(&self) -> &DoubleComplex {
        &self.source
    }

    pub fn target(&self) -> &DoubleComplex {
        &self.target
    }

    pub fn component(&self, k: i64, l: i64) -> Matrix {
        match self.components.get(&(k, l)) {
            Some(m) => m.clone(),
            None => Matrix::zero(self.source.ring(), self.target.rank(k, l), self.source.rank(k, l)),
        }
    }
}

/// Moore double complex of a simplicial object: bidegree `(k, l)` is the
/// internal degree-`l` part of `X_k`, the horizontal differential is the
/// alternating face sum, the vertical one is the internal differential.
pub fn moore(x: &SimplicialChainComplex) -> DoubleComplex {
    let ring = x.ring();
    let mut ranks = BTreeMap::new();
    let mut horiz = BTreeMap::new();
    let mut vert = BTreeMap::new();
    for k in 0..=x.truncation() {
        let level = x.level(k);
        for l in level.support() {
            ranks.insert((k as i64, l), level.rank(l));
        }
        for l in level.support() {
            let d = level.differential(l);
            if d.rows() > 0 && d.cols() > 0 {
                vert.insert((k as i64, l), d);
            }
        }
        if k >= 1 {
            let mut acc: BTreeMap<i64, Matrix> = BTreeMap::new();
            for i in 0..=k {
                for l in level.support() {
                    let m = x.face(k, i).component(l);
                    let signed = if i % 2 == 0 { m } else { m.neg() };
                    acc.entry(l)
                        .and_modify(|cur| *cur = cur.add(&signed))
                        .or_insert(signed);
                }
            }
            for (l, m) in acc {
                if m.rows() > 0 && m.cols() > 0 {
                    horiz.insert((k as i64, l), m);
                }
            }
        }
    }
    DoubleComplex::new(ring, ranks, horiz, vert)
        .expect("Moore complex of a validated simplicial object")
}

/// Moore double complex of a cosimplicial object, in nonpositive horizontal
/// degrees: bidegree `(-n, l)` is the degree-`l` part of `X^n` and the
/// horizontal differential `(-n, l) -> (-n-1, l)` is the alternating coface
/// sum `X^n -> X^{n+1}`.
pub fn moore_cosimplicial(x: &CosimplicialChainComplex) -> DoubleComplex {
    let ring = x.ring();
    let mut ranks = BTreeMap::new();
    let mut horiz = BTreeMap::new();
    let mut vert = BTreeMap::new();
    for n in 0..=x.truncation() {
        let level = x.level(n);
        for l in level.support() {
            ranks.insert((-(n as i64), l), level.rank(l));
        }
        for l in level.support() {
            let d = level.differential(l);
            if d.rows() > 0 && d.cols() > 0 {
                vert.insert((-(n as i64), l), d);
            }
        }
        if n >= 1 {
            // The map out of level n - 1 lands at horizontal degree -n.
            let mut acc: BTreeMap<i64, Matrix> = BTreeMap::new();
            for i in 0..=n {
                for l in x.level(n - 1).support() {
                    let m = x.coface(n, i).component(l);
                    let signed = if i % 2 == 0 { m } else { m.neg() };
                    acc.entry(l)
                        .and_modify(|cur| *cur = cur.add(&signed))
                        .or_insert(signed);
                }
            }
            for (l, m) in acc {
                if m.rows() > 0 && m.cols() > 0 {
                    horiz.insert((-(n as i64 - 1), l), m);
                }
            }
        }
    }
    DoubleComplex::new(ring, ranks, horiz, vert)
        .expect("Moore complex of a validated cosimplicial object")
}

/// The normalized part of a simplicial object: level `n` is the kernel of
/// the stacked faces `d_1..d_n`, with its basis inclusion into the Moore
/// complex; the horizontal differential is the restriction of `d_0`.
#[derive(Clone, Debug)]
pub struct NormalizedMoore {
    pub complex: DoubleComplex,
    /// Basis inclusion `N_{k,l} -> M_{k,l}` per bidegree.
    pub inclusion: BTreeMap<(i64, i64), Matrix>,
}

pub fn normalized(x: &SimplicialChainComplex) -> NormalizedMoore {
    let ring = x.ring();
    let mut inclusion = BTreeMap::new();
    let mut ranks = BTreeMap::new();
    // Kernel bases level by level.
    for k in 0..=x.truncation() {
        let level = x.level(k);
        for l in level.support() {
            let inc = if k == 0 {
                Matrix::identity(ring, level.rank(l))
            } else {
                let mut stacked = Matrix::zero(ring, 0, level.rank(l));
                for i in 1..=k {
                    stacked = stacked.vstack(&x.face(k, i).component(l));
                }
                snf::kernel_basis(&stacked)
            };
            if inc.cols() > 0 {
                ranks.insert((k as i64, l), inc.cols());
                inclusion.insert((k as i64, l), inc);
            }
        }
    }
    let zero_inc = |k: i64, l: i64, rows: usize| {
        inclusion.get(&(k, l)).cloned().unwrap_or_else(|| Matrix::zero(ring, rows, 0))
    };
    let mut horiz = BTreeMap::new();
    let mut vert = BTreeMap::new();
    for (&(k, l), inc) in &inclusion {
        // Restriction of the internal differential.
        let level = x.level(k as usize);
        let d_inc = level.differential(l).mul(inc);
        let target_inc = zero_inc(k, l - 1, level.rank(l - 1));
        if target_inc.cols() > 0 && d_inc.cols() > 0 {
            let restricted = snf::solve_exact(&target_inc, &d_inc)
                .expect("internal differential preserves the normalized part");
            vert.insert((k, l), restricted);
        } else {
            assert!(d_inc.is_zero_matrix(), "normalized part is not a subcomplex");
        }
        // Restriction of d_0.
        if k >= 1 {
            let d0_inc = x.face(k as usize, 0).component(l).mul(inc);
            let target_inc = zero_inc(k - 1, l, x.level(k as usize - 1).rank(l));
            if target_inc.cols() > 0 && d0_inc.cols() > 0 {
                let restricted = snf::solve_exact(&target_inc, &d0_inc)
                    .expect("d_0 preserves the normalized part");
                horiz.insert((k, l), restricted);
            } else {
                assert!(d0_inc.is_zero_matrix(), "d_0 exits the normalized part");
            }
        }
    }
    let complex = DoubleComplex::new(ring, ranks, horiz, vert)
        .expect("normalized part of a validated simplicial object");
    NormalizedMoore { complex, inclusion }
}

/// Explicit free basis of the degenerate part: level `n` is the image of the
/// stacked degeneracies `s_0..s_{n-1}`.
#[derive(Clone, Debug)]
pub struct DegenerateSub {
    /// Basis inclusion `D_{k,l} -> M_{k,l}` per bidegree (absent bidegrees
    /// are zero).
    pub inclusion: BTreeMap<(i64, i64), Matrix>,
}

impl DegenerateSub {
    pub fn rank(&self, k: i64, l: i64) -> usize {
        self.inclusion.get(&(k, l)).map_or(0, Matrix::cols)
    }
}

pub fn degenerate_sub(x: &SimplicialChainComplex) -> DegenerateSub {
    let ring = x.ring();
    let mut inclusion = BTreeMap::new();
    for k in 1..=x.truncation() {
        let level = x.level(k);
        for l in level.support() {
            let mut stacked = Matrix::zero(ring, level.rank(l), 0);
            for i in 0..k {
                stacked = stacked.hstack(&x.degeneracy(k, i).component(l));
            }
            let basis = snf::image_basis(&stacked);
            if basis.cols() > 0 {
                inclusion.insert((k as i64, l), basis);
            }
        }
    }
    DegenerateSub { inclusion }
}

/// The reduced Moore complex `M / D`, materialized on the image of the
/// normalized basis, together with the quotient map `M -> M/D` (projection
/// along the degenerate part).
#[derive(Clone, Debug)]
pub struct ReducedMoore {
    pub complex: DoubleComplex,
    /// Quotient `M_{k,l} -> (M/D)_{k,l}` per bidegree.
    pub quotient: BTreeMap<(i64, i64), Matrix>,
}

pub fn reduced_moore(x: &SimplicialChainComplex) -> ReducedMoore {
    let ring = x.ring();
    let n_part = normalized(x);
    let d_part = degenerate_sub(x);
    let moore_x = moore(x);
    let mut quotient = BTreeMap::new();
    for (&(k, l), &m_rank) in moore_x.ranks() {
        let n_inc = n_part
            .inclusion
            .get(&(k, l))
            .cloned()
            .unwrap_or_else(|| Matrix::zero(ring, m_rank, 0));
        let d_inc = d_part
            .inclusion
            .get(&(k, l))
            .cloned()
            .unwrap_or_else(|| Matrix::zero(ring, m_rank, 0));
        // The splitting M = N (+) D makes this block matrix invertible over
        // the ring; that is the substance of the normalized-vs-reduced
        // comparison and it is asserted here.
        let p = n_inc.hstack(&d_inc);
        assert_eq!(
            p.rows(),
            p.cols(),
            "rank of N plus rank of D must equal the rank of M at ({k}, {l})"
        );
        let p_inv = snf::inverse(&p).expect("[N | D] is invertible over the ring");
        quotient.insert((k, l), p_inv.submatrix(0..n_inc.cols(), 0..p.cols()));
    }
    // Differentials induced on the quotient, written on the reduced basis.
    let mut horiz = BTreeMap::new();
    let mut vert = BTreeMap::new();
    let ranks = n_part.complex.ranks().clone();
    for (&(k, l), inc) in &n_part.inclusion {
        if let Some(q) = quotient.get(&(k - 1, l)) {
            let m = q.mul(&moore_x.horiz(k, l)).mul(inc);
            if m.rows() > 0 && m.cols() > 0 {
                horiz.insert((k, l), m);
            }
        }
        if let Some(q) = quotient.get(&(k, l - 1)) {
            let m = q.mul(&moore_x.vert(k, l)).mul(inc);
            if m.rows() > 0 && m.cols() > 0 {
                vert.insert((k, l), m);
            }
        }
    }
    let complex =
        DoubleComplex::new(ring, ranks, horiz, vert).expect("reduced Moore complex is a complex");
    ReducedMoore { complex, quotient }
}

/// The reduced Moore complex of a cosimplicial object: level `n` is the
/// kernel of the stacked codegeneracies `sigma^0..sigma^{n-1}` (the fiber
/// product of `M` with zero over the codegenerate part), a free submodule
/// with explicit basis, placed at horizontal degree `-n`.
#[derive(Clone, Debug)]
pub struct ReducedMooreCosimplicial {
    pub complex: DoubleComplex,
    /// Basis inclusion `(M-bar)_{-n, l} -> M_{-n, l}` per bidegree.
    pub inclusion: BTreeMap<(i64, i64), Matrix>,
}

pub fn reduced_moore_cosimplicial(x: &CosimplicialChainComplex) -> ReducedMooreCosimplicial {
    let ring = x.ring();
    let mut inclusion = BTreeMap::new();
    let mut ranks = BTreeMap::new();
    for n in 0..=x.truncation() {
        let level = x.level(n);
        for l in level.support() {
            let inc = if n == 0 {
                Matrix::identity(ring, level.rank(l))
            } else {
                let mut stacked = Matrix::zero(ring, 0, level.rank(l));
                for i in 0..n {
                    stacked = stacked.vstack(&x.codegeneracy(n, i).component(l));
                }
                snf::kernel_basis(&stacked)
            };
            if inc.cols() > 0 {
                ranks.insert((-(n as i64), l), inc.cols());
                inclusion.insert((-(n as i64), l), inc);
            }
        }
    }
    let moore_x = moore_cosimplicial(x);
    let zero_inc = |k: i64, l: i64, rows: usize| {
        inclusion.get(&(k, l)).cloned().unwrap_or_else(|| Matrix::zero(ring, rows, 0))
    };
    let mut horiz = BTreeMap::new();
    let mut vert = BTreeMap::new();
    for (&(k, l), inc) in &inclusion {
        let level = x.level((-k) as usize);
        let d_inc = level.differential(l).mul(inc);
        let target_inc = zero_inc(k, l - 1, level.rank(l - 1));
        if target_inc.cols() > 0 && d_inc.cols() > 0 {
            let restricted = snf::solve_exact(&target_inc, &d_inc)
                .expect("internal differential preserves the reduced part");
            vert.insert((k, l), restricted);
        } else {
            assert!(d_inc.is_zero_matrix(), "reduced part is not a subcomplex");
        }
        // Horizontal: restriction of the alternating coface sum to the
        // kernel of the codegeneracies.
        let n = (-k) as usize;
        if n < x.truncation() {
            let h_inc = moore_x.horiz(k, l).mul(inc);
            let target_inc = zero_inc(k - 1, l, x.level(n + 1).rank(l));
            if target_inc.cols() > 0 && h_inc.cols() > 0 {
                let restricted = snf::solve_exact(&target_inc, &h_inc)
                    .expect("the Moore differential preserves the reduced part");
                horiz.insert((k, l), restricted);
            } else {
                assert!(h_inc.is_zero_matrix(), "Moore differential exits the reduced part");
            }
        }
    }
    let complex = DoubleComplex::new(ring, ranks, horiz, vert)
        .expect("reduced Moore complex of a cosimplicial object");
    ReducedMooreCosimplicial { complex, inclusion }
}

/// The normalized part of a cosimplicial object: the cokernel of the stacked
/// cofaces `delta^0..delta^{n-1}`, represented through the dual splitting
/// `X^n = ker(sigma stack) (+) im(delta stack)` with the quotient map
/// `M -> X^norm` written on the reduced basis.
#[derive(Clone, Debug)]
pub struct NormalizedCosimplicial {
    pub complex: DoubleComplex,
    /// Quotient `M_{-n, l} -> (X^norm)_{-n, l}` per bidegree.
    pub quotient: BTreeMap<(i64, i64), Matrix>,
}

pub fn normalized_cosimplicial(x: &CosimplicialChainComplex) -> NormalizedCosimplicial {
    let ring = x.ring();
    let reduced = reduced_moore_cosimplicial(x);
    let moore_x = moore_cosimplicial(x);
    let mut quotient = BTreeMap::new();
    for (&(k, l), &m_rank) in moore_x.ranks() {
        let n = (-k) as usize;
        let level = x.level(n);
        let red_inc = reduced
            .inclusion
            .get(&(k, l))
            .cloned()
            .unwrap_or_else(|| Matrix::zero(ring, m_rank, 0));
        let im_inc = if n == 0 {
            Matrix::zero(ring, level.rank(l), 0)
        } else {
            let mut stacked = Matrix::zero(ring, level.rank(l), 0);
            for i in 0..n {
                stacked = stacked.hstack(&x.coface(n, i).component(l));
            }
            snf::image_basis(&stacked)
        };
        let p = red_inc.hstack(&im_inc);
        assert_eq!(
            p.rows(),
            p.cols(),
            "reduced and coface-image parts must span level {n} at internal degree {l}"
        );
        let p_inv = snf::inverse(&p).expect("[reduced | image] is invertible over the ring");
        quotient.insert((k, l), p_inv.submatrix(0..red_inc.cols(), 0..p.cols()));
    }
    let ranks = reduced.complex.ranks().clone();
    let mut horiz = BTreeMap::new();
    let mut vert = BTreeMap::new();
    for (&(k, l), inc) in &reduced.inclusion {
        if let Some(q) = quotient.get(&(k - 1, l)) {
            let m = q.mul(&moore_x.horiz(k, l)).mul(inc);
            if m.rows() > 0 && m.cols() > 0 {
                horiz.insert((k, l), m);
            }
        }
        if let Some(q) = quotient.get(&(k, l - 1)) {
            let m = q.mul(&moore_x.vert(k, l)).mul(inc);
            if m.rows() > 0 && m.cols() > 0 {
                vert.insert((k, l), m);
            }
        }
    }
    let complex = DoubleComplex::new(ring, ranks, horiz, vert)
        .expect("normalized part of a cosimplicial object");
    NormalizedCosimplicial { complex, quotient }
}

/// A simplicial object with every level equal to `c` and every structure map
/// the identity.
pub fn constant_simplicial(c: &ChainComplex, d: usize) -> SimplicialChainComplex {
    let levels = vec![c.clone(); d + 1];
    let faces = (1..=d).map(|n| vec![ChainMap::identity(c); n + 1]).collect();
    let degeneracies = (1..=d).map(|n| vec![ChainMap::identity(c); n]).collect();
    SimplicialChainComplex::new(levels, faces, degeneracies)
        .expect("constant simplicial object is valid")
}

/// The constant cosimplicial object at `c`.
pub fn constant_cosimplicial(c: &ChainComplex, d: usize) -> CosimplicialChainComplex {
    let levels = vec![c.clone(); d + 1];
    let cofaces = (1..=d).map(|n| vec![ChainMap::identity(c); n + 1]).collect();
    let codegeneracies = (1..=d).map(|n| vec![ChainMap::identity(c); n]).collect();
    CosimplicialChainComplex::new(levels, cofaces, codegeneracies)
        .expect("constant cosimplicial object is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::HomologyGroup;
    use crate::ring::int;

    fn z0() -> ChainComplex {
        ChainComplex::concentrated(Ring::Integers, 0, 1)
    }

    #[test]
    fn moore_of_constant_alternates_zero_and_identity() {
        let x = constant_simplicial(&z0(), 3);
        let m = moore(&x);
        assert!(m.horiz(1, 0).is_zero_matrix());
        assert!(m.horiz(2, 0).is_identity());
        assert!(m.horiz(3, 0).is_zero_matrix());
    }

    #[test]
    fn normalized_of_constant_is_level_zero() {
        let c = ChainComplex::two_term(Ring::Integers, 0, 2);
        let x = constant_simplicial(&c, 3);
        let n = normalized(&x);
        assert_eq!(n.complex.rank(0, 0), 1);
        assert_eq!(n.complex.rank(0, 1), 1);
        for k in 1..=3i64 {
            assert_eq!(n.complex.rank(k, 0), 0);
            assert_eq!(n.complex.rank(k, 1), 0);
        }
    }

    #[test]
    fn degenerate_part_of_constant_is_everything_above_zero() {
        let x = constant_simplicial(&z0(), 3);
        let d = degenerate_sub(&x);
        assert_eq!(d.rank(0, 0), 0);
        for k in 1..=3i64 {
            assert_eq!(d.rank(k, 0), 1, "level {k}");
        }
    }

    #[test]
    fn reduced_moore_of_constant() {
        let x = constant_simplicial(&z0(), 3);
        let r = reduced_moore(&x);
        assert_eq!(r.complex.rank(0, 0), 1);
        for k in 1..=3i64 {
            assert_eq!(r.complex.rank(k, 0), 0);
        }
        // The composite of the quotient with the normalized inclusion is the
        // identity on the reduced basis.
        let n = normalized(&x);
        for (&(k, l), inc) in &n.inclusion {
            let q = &r.quotient[&(k, l)];
            assert!(q.mul(inc).is_identity(), "composite at ({k}, {l})");
        }
    }

    #[test]
    fn dold_kan_rank_additivity() {
        let c = ChainComplex::two_term(Ring::Integers, 0, 3);
        let x = constant_simplicial(&c, 3);
        let n = normalized(&x);
        let d = degenerate_sub(&x);
        let m = moore(&x);
        for (&(k, l), &rank) in m.ranks() {
            let nr = n.inclusion.get(&(k, l)).map_or(0, Matrix::cols);
            assert_eq!(nr + d.rank(k, l), rank, "at ({k}, {l})");
        }
    }

    #[test]
    fn constant_cosimplicial_reduced_part_is_level_zero() {
        let c = ChainComplex::two_term(Ring::Integers, 0, 2);
        let x = constant_cosimplicial(&c, 3);
        let r = reduced_moore_cosimplicial(&x);
        assert_eq!(r.complex.rank(0, 0), 1);
        assert_eq!(r.complex.rank(0, 1), 1);
        for n in 1..=3i64 {
            assert_eq!(r.complex.rank(-n, 0), 0);
            assert_eq!(r.complex.rank(-n, 1), 0);
        }
    }

    #[test]
    fn cosimplicial_moore_lives_in_nonpositive_degrees() {
        let x = constant_cosimplicial(&z0(), 2);
        let m = moore_cosimplicial(&x);
        assert!(m.ranks().keys().all(|&(k, _)| k <= 0));
        assert_eq!(m.rank(0, 0), 1);
        assert_eq!(m.rank(-1, 0), 1);
        // Alternating coface sums: 0, then the identity.
        assert!(m.horiz(0, 0).is_zero_matrix());
        assert!(m.horiz(-1, 0).is_identity());
    }

    #[test]
    fn normalized_and_reduced_cosimplicial_agree() {
        let c = ChainComplex::two_term(Ring::Integers, 0, 2);
        let x = constant_cosimplicial(&c, 2);
        let n = normalized_cosimplicial(&x);
        let r = reduced_moore_cosimplicial(&x);
        assert_eq!(n.complex, r.complex);
    }

    #[test]
    fn double_complex_rejects_noncommuting_squares() {
        let mut ranks = BTreeMap::new();
        for kl in [(0i64, 0i64), (0, 1), (1, 0), (1, 1)] {
            ranks.insert(kl, 1);
        }
        let mut horiz = BTreeMap::new();
        let mut vert = BTreeMap::new();
        let one = Matrix::from_int_rows(Ring::Integers, &[&[1]]);
        horiz.insert((1, 0), one.clone());
        horiz.insert((1, 1), one.clone());
        vert.insert((0, 1), one.clone());
        vert.insert((1, 1), one.scale(&int(2)));
        let err = DoubleComplex::new(Ring::Integers, ranks, horiz, vert);
        assert!(matches!(err, Err(Error::Shape(_))));
    }

    #[test]
    fn simplicial_identity_violation_is_reported() {
        // Constant levels but one face replaced by the zero map.
        let c = z0();
        let levels = vec![c.clone(); 3];
        let mut faces: Vec<Vec<ChainMap>> =
            (1..=2).map(|n| vec![ChainMap::identity(&c); n + 1]).collect();
        faces[1][2] = ChainMap::zero(&c, &c);
        let degeneracies = (1..=2).map(|n| vec![ChainMap::identity(&c); n]).collect();
        let err = SimplicialChainComplex::new(levels, faces, degeneracies);
        assert!(matches!(err, Err(Error::SimplicialIdentity(_))));
    }

    #[test]
    fn columns_of_moore_are_the_levels() {
        let c = ChainComplex::two_term(Ring::Integers, 0, 4);
        let x = constant_simplicial(&c, 2);
        let m = moore(&x);
        let col = m.column(1);
        assert_eq!(col.homology(0), HomologyGroup::new(0, vec![4]));
    }
}

//! Simplicial sets that are finite in every dimension.
//!
//! Only nondegenerate simplices are stored. Every simplex of the set is a
//! [`Cell`]: a strictly decreasing degeneracy word applied to a nondegenerate
//! simplex (the Eilenberg-Zilber canonical form). Faces of nondegenerate
//! simplices are stored explicitly; faces and degeneracies of arbitrary cells
//! are computed by pushing the operators through the word with the simplicial
//! identities.

use std::collections::BTreeMap;

use crate::chain::ChainComplex;
use crate::error::Error;
use crate::matrix::Matrix;
use crate::ring::{int, Ring};

/// A nondegenerate simplex, addressed by dimension and index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct SimplexId {
    pub dim: usize,
    pub idx: usize,
}

/// An arbitrary simplex in canonical form `s_{j_1} ... s_{j_r} base` with
/// `j_1 > j_2 > ... > j_r`; its dimension is `base.dim + degeneracies.len()`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Cell {
    pub degeneracies: Vec<usize>,
    pub base: SimplexId,
}

impl Cell {
    pub fn nondegenerate(base: SimplexId) -> Self {
        Cell { degeneracies: Vec::new(), base }
    }

    pub fn dim(&self) -> usize {
        self.base.dim + self.degeneracies.len()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.degeneracies.is_empty()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteSimplicialSet {
    /// `names[n]` lists the nondegenerate `n`-simplices in basis order.
    names: Vec<Vec<String>>,
    /// `faces[n - 1][s][i]` is `d_i` of the `s`-th nondegenerate `n`-simplex.
    faces: Vec<Vec<Vec<Cell>>>,
}

impl FiniteSimplicialSet {
    /// Builds and validates a simplicial set from its nondegenerate simplices
    /// and their faces. `faces[n - 1][s]` must list the `n + 1` faces of the
    /// `s`-th nondegenerate `n`-simplex.
    pub fn new(names: Vec<Vec<String>>, faces: Vec<Vec<Vec<Cell>>>) -> Result<Self, Error> {
        let set = FiniteSimplicialSet { names, faces };
        set.check_shapes()?;
        set.check_simplicial_identities()?;
        Ok(set)
    }

    fn check_shapes(&self) -> Result<(), Error> {
        if self.faces.len() + 1 != self.names.len().max(1) {
            return Err(Error::Shape(format!(
                "face table covers dimensions 1..={}, simplices go up to {}",
                self.faces.len(),
                self.names.len().saturating_sub(1)
            )));
        }
        for n in 1..self.names.len() {
            let table = &self.faces[n - 1];
            if table.len() != self.names[n].len() {
                return Err(Error::Shape(format!("face table size mismatch in dimension {n}")));
            }
            for (s, fs) in table.iter().enumerate() {
                if fs.len() != n + 1 {
                    return Err(Error::Shape(format!(
                        "simplex {} has {} faces, expected {}",
                        self.names[n][s],
                        fs.len(),
                        n + 1
                    )));
                }
                for f in fs {
                    if f.dim() != n - 1
                        || f.base.dim >= self.names.len()
                        || f.base.idx >= self.names[f.base.dim].len()
                    {
                        return Err(Error::Shape(format!(
                            "face of {} is not a valid {}-simplex",
                            self.names[n][s],
                            n - 1
                        )));
                    }
                    if !f.degeneracies.windows(2).all(|w| w[0] > w[1]) {
                        return Err(Error::Shape(format!(
                            "degeneracy word of a face of {} is not strictly decreasing",
                            self.names[n][s]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `d_i d_j = d_{j-1} d_i` for `i < j` on every stored simplex.
    fn check_simplicial_identities(&self) -> Result<(), Error> {
        for n in 2..self.names.len() {
            for s in 0..self.names[n].len() {
                let cell = Cell::nondegenerate(SimplexId { dim: n, idx: s });
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = self.face(&self.face(&cell, j), i);
                        let rhs = self.face(&self.face(&cell, i), j - 1);
                        if lhs != rhs {
                            return Err(Error::SimplicialIdentity(format!(
                                "d_{i} d_{j} != d_{} d_{i} on {}",
                                j - 1,
                                self.names[n][s]
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Top dimension carrying nondegenerate simplices.
    pub fn truncation(&self) -> usize {
        self.names.len().saturating_sub(1)
    }

    pub fn simplex_count(&self, dim: usize) -> usize {
        self.names.get(dim).map_or(0, Vec::len)
    }

    pub fn simplex_name(&self, id: SimplexId) -> &str {
        &self.names[id.dim][id.idx]
    }

    /// `d_i` of an arbitrary cell, in canonical form.
    pub fn face(&self, cell: &Cell, i: usize) -> Cell {
        debug_assert!(cell.dim() >= 1 && i <= cell.dim());
        match cell.degeneracies.split_first() {
            None => self.faces[cell.base.dim - 1][cell.base.idx][i].clone(),
            Some((&j, rest)) => {
                let inner = Cell { degeneracies: rest.to_vec(), base: cell.base };
                if i < j {
                    self.degeneracy(&self.face(&inner, i), j - 1)
                } else if i == j || i == j + 1 {
                    inner
                } else {
                    self.degeneracy(&self.face(&inner, i - 1), j)
                }
            }
        }
    }

    /// `s_i` of an arbitrary cell, in canonical form.
    pub fn degeneracy(&self, cell: &Cell, i: usize) -> Cell {
        debug_assert!(i <= cell.dim());
        match cell.degeneracies.split_first() {
            Some((&j, rest)) if i <= j => {
                let inner = Cell { degeneracies: rest.to_vec(), base: cell.base };
                let pushed = self.degeneracy(&inner, i);
                let mut word = vec![j + 1];
                word.extend(pushed.degeneracies);
                Cell { degeneracies: word, base: pushed.base }
            }
            _ => {
                let mut word = vec![i];
                word.extend(cell.degeneracies.clone());
                Cell { degeneracies: word, base: cell.base }
            }
        }
    }

    /// All cells of dimension `n`, degenerate ones included, in a fixed order
    /// (by base dimension, then base index, then degeneracy word).
    pub fn cells(&self, n: usize) -> Vec<Cell> {
        let mut out = Vec::new();
        for dim in 0..=n.min(self.truncation()) {
            for idx in 0..self.simplex_count(dim) {
                for word in degeneracy_words(n, dim) {
                    out.push(Cell { degeneracies: word, base: SimplexId { dim, idx } });
                }
            }
        }
        out
    }

    /// Normalized chains: degree-`n` rank is the number of nondegenerate
    /// `n`-simplices for `n <= d`, the differential is the alternating face
    /// sum with degenerate faces contributing zero.
    pub fn normalized_chains(&self, ring: Ring, d: usize) -> Result<ChainComplex, Error> {
        if d > self.truncation() {
            return Err(Error::TruncationExceeded { requested: d, max: self.truncation() });
        }
        let mut ranks = BTreeMap::new();
        for n in 0..=d {
            if self.simplex_count(n) > 0 {
                ranks.insert(n as i64, self.simplex_count(n));
            }
        }
        let mut diffs = BTreeMap::new();
        for n in 1..=d {
            let (rows, cols) = (self.simplex_count(n - 1), self.simplex_count(n));
            if rows == 0 || cols == 0 {
                continue;
            }
            let mut m = Matrix::zero(ring, rows, cols);
            for s in 0..cols {
                let cell = Cell::nondegenerate(SimplexId { dim: n, idx: s });
                for i in 0..=n {
                    let f = self.face(&cell, i);
                    if f.is_nondegenerate() {
                        let sign = if i % 2 == 0 { int(1) } else { int(-1) };
                        let cur = m.entry(f.base.idx, s).clone();
                        m.set(f.base.idx, s, cur + sign);
                    }
                }
            }
            diffs.insert(n as i64, m);
        }
        ChainComplex::new(ring, ranks, diffs)
    }

    /// The standard `n`-simplex; nondegenerate `k`-simplices are the strictly
    /// increasing vertex lists, named by their vertices.
    pub fn simplex(n: usize) -> Self {
        Self::from_vertex_complex(n, |_| true)
    }

    /// The boundary of the `n`-simplex (drop the top face).
    pub fn boundary(n: usize) -> Self {
        Self::from_vertex_complex(n, |verts| verts.len() <= n)
    }

    /// The horn with the `k`-th face removed (drop the top face and the face
    /// opposite vertex `k`).
    pub fn horn(n: usize, k: usize) -> Result<Self, Error> {
        if k > n {
            return Err(Error::IndexOutOfRange(format!("horn({n}, {k}) needs k <= n")));
        }
        Ok(Self::from_vertex_complex(n, |verts| {
            verts.len() <= n && !(verts.len() == n && !verts.contains(&k))
        }))
    }

    /// The circle as the interval with both endpoints identified: one vertex,
    /// one nondegenerate edge whose faces coincide.
    pub fn circle() -> Self {
        let names = vec![vec!["v".to_string()], vec!["e".to_string()]];
        let v = Cell::nondegenerate(SimplexId { dim: 0, idx: 0 });
        let faces = vec![vec![vec![v.clone(), v]]];
        FiniteSimplicialSet::new(names, faces).expect("circle is a simplicial set")
    }

    /// Subcomplex of the `n`-simplex spanned by the vertex subsets accepted
    /// by `keep` (which must be closed under passing to subsets).
    fn from_vertex_complex(n: usize, keep: impl Fn(&[usize]) -> bool) -> Self {
        let mut levels: Vec<Vec<Vec<usize>>> = Vec::new();
        for size in 1..=n + 1 {
            let mut level = Vec::new();
            subsets(n + 1, size, &mut |verts| {
                if keep(verts) {
                    level.push(verts.to_vec());
                }
            });
            if level.is_empty() {
                break;
            }
            levels.push(level);
        }
        let index: BTreeMap<Vec<usize>, usize> = levels
            .iter()
            .flat_map(|level| level.iter().enumerate().map(|(i, v)| (v.clone(), i)))
            .collect();
        let names = levels
            .iter()
            .map(|level| level.iter().map(|v| vertex_name(v)).collect())
            .collect();
        let mut faces = Vec::new();
        for (dim, level) in levels.iter().enumerate().skip(1) {
            let mut table = Vec::new();
            for verts in level {
                let mut fs = Vec::new();
                for i in 0..=dim {
                    let mut face_verts = verts.clone();
                    face_verts.remove(i);
                    let idx = index[&face_verts];
                    fs.push(Cell::nondegenerate(SimplexId { dim: dim - 1, idx }));
                }
                table.push(fs);
            }
            faces.push(table);
        }
        FiniteSimplicialSet::new(names, faces).expect("vertex complex is a simplicial set")
    }
}

fn vertex_name(verts: &[usize]) -> String {
    if verts.iter().all(|&v| v < 10) {
        verts.iter().map(|v| v.to_string()).collect()
    } else {
        verts.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("-")
    }
}

fn subsets(n: usize, size: usize, f: &mut impl FnMut(&[usize])) {
    fn go(start: usize, n: usize, size: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if acc.len() == size {
            f(acc);
            return;
        }
        for v in start..n {
            acc.push(v);
            go(v + 1, n, size, acc, f);
            acc.pop();
        }
    }
    go(0, n, size, &mut Vec::new(), f);
}

/// Strictly decreasing degeneracy words turning a `base`-simplex into an
/// `n`-simplex. Strict decrease plus a leading index of at most `n - 1`
/// already forces every operator into its legal range, so the canonical
/// words are exactly the `(n - base)`-element subsets of `0..n` written in
/// decreasing order.
fn degeneracy_words(n: usize, base: usize) -> Vec<Vec<usize>> {
    fn go(next_max: i64, remaining: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(acc.clone());
            return;
        }
        let mut j = next_max;
        while j + 1 >= remaining as i64 {
            acc.push(j as usize);
            go(j - 1, remaining - 1, acc, out);
            acc.pop();
            j -= 1;
        }
    }
    let mut out = Vec::new();
    go(n as i64 - 1, n - base, &mut Vec::new(), &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::HomologyGroup;

    #[test]
    fn standard_simplex_counts() {
        let d1 = FiniteSimplicialSet::simplex(1);
        assert_eq!(d1.simplex_count(0), 2);
        assert_eq!(d1.simplex_count(1), 1);
        let b2 = FiniteSimplicialSet::boundary(2);
        assert_eq!(b2.simplex_count(0), 3);
        assert_eq!(b2.simplex_count(1), 3);
        assert_eq!(b2.simplex_count(2), 0);
        let h21 = FiniteSimplicialSet::horn(2, 1).unwrap();
        assert_eq!(h21.simplex_count(0), 3);
        assert_eq!(h21.simplex_count(1), 2);
        assert!(FiniteSimplicialSet::horn(2, 3).is_err());
    }

    #[test]
    fn point_chains() {
        let pt = FiniteSimplicialSet::simplex(0);
        let c = pt.normalized_chains(Ring::Integers, 0).unwrap();
        assert_eq!(c.rank(0), 1);
        assert_eq!(c.homology(0), HomologyGroup::free(1));
    }

    #[test]
    fn circle_chains_have_zero_differential() {
        let s1 = FiniteSimplicialSet::circle();
        let c = s1.normalized_chains(Ring::Integers, 1).unwrap();
        assert_eq!(c.rank(0), 1);
        assert_eq!(c.rank(1), 1);
        assert!(c.differential(1).is_zero_matrix());
        assert_eq!(c.homology(0), HomologyGroup::free(1));
        assert_eq!(c.homology(1), HomologyGroup::free(1));
    }

    #[test]
    fn boundary_of_triangle_is_a_circle() {
        let b2 = FiniteSimplicialSet::boundary(2);
        // No nondegenerate 2-simplices, so the stored truncation is 1.
        assert_eq!(b2.truncation(), 1);
        let c = b2.normalized_chains(Ring::Integers, b2.truncation()).unwrap();
        assert_eq!(c.homology(0), HomologyGroup::free(1));
        assert_eq!(c.homology(1), HomologyGroup::free(1));
    }

    #[test]
    fn truncation_is_enforced() {
        let b2 = FiniteSimplicialSet::boundary(2);
        assert!(matches!(
            b2.normalized_chains(Ring::Integers, 3),
            Err(Error::TruncationExceeded { requested: 3, max: 1 })
        ));
    }

    #[test]
    fn horns_are_contractible() {
        for n in 1..=3usize {
            for k in 0..=n {
                let horn = FiniteSimplicialSet::horn(n, k).unwrap();
                let c = horn.normalized_chains(Ring::Integers, horn.truncation()).unwrap();
                assert_eq!(c.homology(0), HomologyGroup::free(1), "horn({n},{k})");
                for deg in 1..=horn.truncation() as i64 {
                    assert!(c.homology(deg).is_trivial(), "horn({n},{k}) degree {deg}");
                }
            }
        }
    }

    #[test]
    fn degeneracy_words_enumerate_cells() {
        // One cell per dimension over a point.
        let pt = FiniteSimplicialSet::simplex(0);
        for n in 0..5 {
            assert_eq!(pt.cells(n).len(), 1, "dimension {n}");
        }
        // Circle: cells in dimension n are v-degeneracies plus degenerate
        // copies of e; counts 1, 2, 3, 4 in dimensions 0..4.
        let s1 = FiniteSimplicialSet::circle();
        for n in 0..4 {
            assert_eq!(s1.cells(n).len(), n + 1, "dimension {n}");
        }
    }

    #[test]
    fn face_degeneracy_calculus_satisfies_identities() {
        let s1 = FiniteSimplicialSet::circle();
        for n in 2..4usize {
            for cell in s1.cells(n) {
                for j in 1..=n {
                    for i in 0..j {
                        assert_eq!(
                            s1.face(&s1.face(&cell, j), i),
                            s1.face(&s1.face(&cell, i), j - 1)
                        );
                    }
                }
            }
        }
        for n in 0..4usize {
            for cell in s1.cells(n) {
                for i in 0..=n {
                    // d_i s_i = id and d_{i+1} s_i = id.
                    assert_eq!(s1.face(&s1.degeneracy(&cell, i), i), cell);
                    assert_eq!(s1.face(&s1.degeneracy(&cell, i), i + 1), cell);
                }
            }
        }
    }
}

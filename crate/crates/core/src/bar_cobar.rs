//! Bar and cobar constructions and the homotopy (co)limit pipeline.
//!
//! Level `n` of the bar construction of a diagram `F` is the direct sum,
//! over length-`n` composable chains, of the value of `F` at the chain's
//! start. The simplicial structure maps come from reindexing chains; only
//! `d_0` acts through `F` (it drops the starting object, pushing the summand
//! forward along the first morphism). An orientation mistake here would break
//! `d . d = 0` in the Moore complex, so the convention is self-checking.
//!
//! The homotopy colimit of `F` on a window is the direct-sum totalization of
//! the Moore complex of the bar construction, with enough bar levels that
//! every bidegree meeting the window is present; because all values are
//! bounded this is exact, not an approximation. Homotopy limits use the
//! product totalization of the reduced Moore complex of the cobar
//! construction and are only offered over loop-free index categories, where
//! the reduced part vanishes above the nerve dimension and each antidiagonal
//! is certifiably finite. On categories with loops a truncated product
//! totalization can be silently wrong, so `holim` refuses them.

use std::collections::BTreeMap;

use crate::category::{
    is_loop_free, loop_witness, nerve_simplices, validate, Diagram, FiniteCategory, NerveSimplex,
};
use crate::chain::{direct_sum, ChainComplex, ChainMap, HomologyGroup};
use crate::dold_kan::{
    moore, normalized, normalized_cosimplicial, reduced_moore_cosimplicial,
    CosimplicialChainComplex, SimplicialChainComplex,
};
use crate::error::Error;
use crate::matrix::Matrix;
use crate::ring::Ring;
use crate::simplicial_set::FiniteSimplicialSet;
use crate::totalization::{tot_prod, tot_sum, DegreeWindow};

/// Objects `x_0, ..., x_n` along a chain.
fn chain_objects(cat: &FiniteCategory, chain: &NerveSimplex) -> Vec<usize> {
    let mut out = vec![chain.start()];
    for &m in chain.morphisms() {
        out.push(cat.morphism(m).target);
    }
    out
}

/// `d_i` on nerve chains; the second component is the morphism the summand
/// map must travel along (only `d_0` produces one).
fn chain_face(
    cat: &FiniteCategory,
    chain: &NerveSimplex,
    i: usize,
) -> (NerveSimplex, Option<usize>) {
    let n = chain.len();
    debug_assert!(n >= 1 && i <= n);
    let ms = chain.morphisms();
    if i == 0 {
        let rest = if n == 1 {
            NerveSimplex::of_object(cat.morphism(ms[0]).target)
        } else {
            NerveSimplex::new(cat, ms[1..].to_vec())
        };
        (rest, Some(ms[0]))
    } else if i == n {
        let init = if n == 1 {
            NerveSimplex::of_object(chain.start())
        } else {
            NerveSimplex::new(cat, ms[..n - 1].to_vec())
        };
        (init, None)
    } else {
        let mut new_ms = ms[..i - 1].to_vec();
        let composed = cat
            .compose(ms[i], ms[i - 1])
            .expect("consecutive chain entries compose");
        new_ms.push(composed);
        new_ms.extend_from_slice(&ms[i + 1..]);
        (NerveSimplex::new(cat, new_ms), None)
    }
}

/// `s_i` on nerve chains: insert the identity of the `i`-th object.
fn chain_degeneracy(cat: &FiniteCategory, chain: &NerveSimplex, i: usize) -> NerveSimplex {
    let objects = chain_objects(cat, chain);
    let mut ms = chain.morphisms()[..i].to_vec();
    ms.push(cat.identity_of(objects[i]));
    ms.extend_from_slice(&chain.morphisms()[i..]);
    NerveSimplex::new(cat, ms)
}

/// Offsets of each summand inside the level's degree-`l` piece.
fn offsets(values: &[&ChainComplex], l: i64) -> Vec<usize> {
    let mut out = Vec::with_capacity(values.len());
    let mut acc = 0;
    for v in values {
        out.push(acc);
        acc += v.rank(l);
    }
    out
}

/// Assembles a degreewise block map between direct sums of complexes. Each
/// entry `(source summand, target summand, component)` writes one block;
/// `None` components are identities.
fn block_map(
    source: &ChainComplex,
    target: &ChainComplex,
    source_values: &[&ChainComplex],
    target_values: &[&ChainComplex],
    assignments: &[(usize, usize, Option<&ChainMap>)],
) -> ChainMap {
    let ring = source.ring();
    let mut components = BTreeMap::new();
    for l in source.support() {
        let src_off = offsets(source_values, l);
        let tgt_off = offsets(target_values, l);
        let mut m = Matrix::zero(ring, target.rank(l), source.rank(l));
        for &(sj, tj, comp) in assignments {
            let block = match comp {
                Some(f) => f.component(l),
                None => Matrix::identity(ring, source_values[sj].rank(l)),
            };
            if block.rows() > 0 && block.cols() > 0 {
                m.write_block(tgt_off[tj], src_off[sj], &block);
            }
        }
        components.insert(l, m);
    }
    ChainMap::new(source.clone(), target.clone(), components)
        .expect("block map commutes with the differentials")
}

/// The simplicial bar construction of a diagram, truncated at level `d`.
pub fn bar_simplicial(
    cat: &FiniteCategory,
    f: &Diagram,
    d: usize,
) -> Result<SimplicialChainComplex, Error> {
    let violations = validate(f);
    if !violations.is_empty() {
        return Err(Error::InvalidDiagram(violations));
    }
    let chains: Vec<Vec<NerveSimplex>> = (0..=d).map(|n| nerve_simplices(cat, n)).collect();
    let chain_index: Vec<BTreeMap<&NerveSimplex, usize>> = chains
        .iter()
        .map(|cs| cs.iter().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();
    let summands: Vec<Vec<&ChainComplex>> = chains
        .iter()
        .map(|cs| cs.iter().map(|c| f.on_object(c.start())).collect())
        .collect();
    let levels: Vec<ChainComplex> = summands
        .iter()
        .map(|vs| direct_sum(&vs.iter().map(|&c| c.clone()).collect::<Vec<_>>()))
        .collect::<Result<_, _>>()?;
    let mut faces = Vec::new();
    let mut degeneracies = Vec::new();
    for n in 1..=d {
        let mut level_faces = Vec::new();
        for i in 0..=n {
            let assignments: Vec<(usize, usize, Option<&ChainMap>)> = chains[n]
                .iter()
                .enumerate()
                .map(|(sj, c)| {
                    let (target, along) = chain_face(cat, c, i);
                    let tj = chain_index[n - 1][&target];
                    (sj, tj, along.map(|m| f.on_morphism(m)))
                })
                .collect();
            level_faces.push(block_map(
                &levels[n],
                &levels[n - 1],
                &summands[n],
                &summands[n - 1],
                &assignments,
            ));
        }
        faces.push(level_faces);
        let mut level_degens = Vec::new();
        for i in 0..n {
            let assignments: Vec<(usize, usize, Option<&ChainMap>)> = chains[n - 1]
                .iter()
                .enumerate()
                .map(|(sj, c)| {
                    let target = chain_degeneracy(cat, c, i);
                    (sj, chain_index[n][&target], None)
                })
                .collect();
            level_degens.push(block_map(
                &levels[n - 1],
                &levels[n],
                &summands[n - 1],
                &summands[n],
                &assignments,
            ));
        }
        degeneracies.push(level_degens);
    }
    SimplicialChainComplex::new(levels, faces, degeneracies)
}

/// The cosimplicial cobar construction of a diagram, truncated at level `d`.
/// Level `n` is the (finite) product of the values at the chain ends; the
/// top coface travels along the last morphism, everything else reindexes.
pub fn cobar_cosimplicial(
    cat: &FiniteCategory,
    f: &Diagram,
    d: usize,
) -> Result<CosimplicialChainComplex, Error> {
    let violations = validate(f);
    if !violations.is_empty() {
        return Err(Error::InvalidDiagram(violations));
    }
    let chains: Vec<Vec<NerveSimplex>> = (0..=d).map(|n| nerve_simplices(cat, n)).collect();
    let chain_index: Vec<BTreeMap<&NerveSimplex, usize>> = chains
        .iter()
        .map(|cs| cs.iter().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();
    let summands: Vec<Vec<&ChainComplex>> = chains
        .iter()
        .map(|cs| cs.iter().map(|c| f.on_object(c.end(cat))).collect())
        .collect();
    let levels: Vec<ChainComplex> = summands
        .iter()
        .map(|vs| direct_sum(&vs.iter().map(|&c| c.clone()).collect::<Vec<_>>()))
        .collect::<Result<_, _>>()?;
    let mut cofaces = Vec::new();
    let mut codegeneracies = Vec::new();
    for n in 1..=d {
        let mut level_cofaces = Vec::new();
        for i in 0..=n {
            // delta^i : C^{n-1} -> C^n; the target summand at a chain c reads
            // from the source summand at c . delta^i.
            let assignments: Vec<(usize, usize, Option<&ChainMap>)> = chains[n]
                .iter()
                .enumerate()
                .map(|(tj, c)| {
                    let (source, _) = chain_face(cat, c, i);
                    let sj = chain_index[n - 1][&source];
                    // Dropping the 0th vertex leaves the chain's end alone;
                    // dropping the last vertex forces travel along the final
                    // morphism.
                    let comp = if i == n {
                        let last = *c.morphisms().last().expect("level n >= 1");
                        Some(f.on_morphism(last))
                    } else {
                        None
                    };
                    (sj, tj, comp)
                })
                .collect();
            level_cofaces.push(block_map(
                &levels[n - 1],
                &levels[n],
                &summands[n - 1],
                &summands[n],
                &assignments,
            ));
        }
        cofaces.push(level_cofaces);
        let mut level_codegens = Vec::new();
        for i in 0..n {
            // sigma^i : C^n -> C^{n-1}; the target summand at c reads from
            // the source summand at c . sigma^i.
            let assignments: Vec<(usize, usize, Option<&ChainMap>)> = chains[n - 1]
                .iter()
                .enumerate()
                .map(|(tj, c)| {
                    let source = chain_degeneracy(cat, c, i);
                    (chain_index[n][&source], tj, None)
                })
                .collect();
            level_codegens.push(block_map(
                &levels[n],
                &levels[n - 1],
                &summands[n],
                &summands[n - 1],
                &assignments,
            ));
        }
        codegeneracies.push(level_codegens);
    }
    CosimplicialChainComplex::new(levels, cofaces, codegeneracies)
}

/// Replaces a simplicial set by a simplicial chain complex with one copy of
/// `c` per simplex (degenerate simplices included); structure maps permute
/// and merge summands along the face and degeneracy maps of `k`. Its
/// realization is quasi-isomorphic to the tensor of the normalized chains of
/// `k` with `c`.
pub fn linearize(k: &FiniteSimplicialSet, c: &ChainComplex, d: usize) -> SimplicialChainComplex {
    let cells: Vec<Vec<crate::simplicial_set::Cell>> = (0..=d).map(|n| k.cells(n)).collect();
    let cell_index: Vec<BTreeMap<&crate::simplicial_set::Cell, usize>> = cells
        .iter()
        .map(|cs| cs.iter().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();
    let levels: Vec<ChainComplex> = cells
        .iter()
        .map(|cs| direct_sum(&vec![c.clone(); cs.len()]).expect("one ring"))
        .collect();
    let summand_refs: Vec<Vec<&ChainComplex>> =
        cells.iter().map(|cs| cs.iter().map(|_| c).collect()).collect();
    let mut faces = Vec::new();
    let mut degeneracies = Vec::new();
    for n in 1..=d {
        let mut level_faces = Vec::new();
        for i in 0..=n {
            let assignments: Vec<(usize, usize, Option<&ChainMap>)> = cells[n]
                .iter()
                .enumerate()
                .map(|(sj, cell)| (sj, cell_index[n - 1][&k.face(cell, i)], None))
                .collect();
            level_faces.push(block_map(
                &levels[n],
                &levels[n - 1],
                &summand_refs[n],
                &summand_refs[n - 1],
                &assignments,
            ));
        }
        faces.push(level_faces);
        let mut level_degens = Vec::new();
        for i in 0..n {
            let assignments: Vec<(usize, usize, Option<&ChainMap>)> = cells[n - 1]
                .iter()
                .enumerate()
                .map(|(sj, cell)| (sj, cell_index[n][&k.degeneracy(cell, i)], None))
                .collect();
            level_degens.push(block_map(
                &levels[n - 1],
                &levels[n],
                &summand_refs[n - 1],
                &summand_refs[n],
                &assignments,
            ));
        }
        degeneracies.push(level_degens);
    }
    SimplicialChainComplex::new(levels, faces, degeneracies)
        .expect("linearization of a simplicial set")
}

/// Levels needed so that every bidegree reaching the window is materialized:
/// internal degrees are bounded below, so level `k` only contributes to
/// total degrees `>= k + min_internal`.
fn simplicial_levels_needed(x: &SimplicialChainComplex, w: DegreeWindow) -> usize {
    match x.min_internal_degree() {
        Some(min) => (w.hi + 1 - min).max(0) as usize,
        None => 0,
    }
}

fn guard_truncation(x: &SimplicialChainComplex, w: DegreeWindow) -> Result<(), Error> {
    let needed = simplicial_levels_needed(x, w);
    if x.truncation() < needed {
        return Err(Error::InsufficientTruncation { needed, have: x.truncation() });
    }
    Ok(())
}

/// Geometric realization: the direct-sum totalization of the normalized
/// part. Exact on the window provided levels beyond the truncation stay
/// within the stored internal bounds.
pub fn realization(x: &SimplicialChainComplex, w: DegreeWindow) -> Result<ChainComplex, Error> {
    guard_truncation(x, w)?;
    Ok(tot_sum(&normalized(x).complex, w))
}

/// Fat realization: the direct-sum totalization of the full Moore complex.
pub fn fat_realization(x: &SimplicialChainComplex, w: DegreeWindow) -> Result<ChainComplex, Error> {
    guard_truncation(x, w)?;
    Ok(tot_sum(&moore(x), w))
}

/// The homotopy colimit of a simplicial chain complex over the simplex
/// category is its fat realization.
pub fn simplicial_hocolim(
    x: &SimplicialChainComplex,
    w: DegreeWindow,
) -> Result<ChainComplex, Error> {
    fat_realization(x, w)
}

/// Totalization of a cosimplicial chain complex: the product totalization of
/// its normalized part.
///
/// Exactness on the window needs the levels beyond the truncation to be
/// invisible there. That is certified in either of two ways: the truncation
/// reaches `max_internal - lo + 1` (levels above it can only land below the
/// window, given the stored internal bounds), or the normalized part already
/// vanishes at the top stored level (the cobar of a loop-free category and
/// constant objects both terminate this way). Otherwise the truncated
/// product would be untrustworthy and the call is refused.
pub fn cosimplicial_totalization(
    x: &CosimplicialChainComplex,
    w: DegreeWindow,
) -> Result<ChainComplex, Error> {
    let norm = normalized_cosimplicial(x);
    let d = x.truncation();
    let deep_enough = match x.max_internal_degree() {
        Some(max) => (d as i64) >= max - w.lo + 1,
        None => true,
    };
    let top_vanishes = norm.complex.ranks().keys().all(|&(k, _)| -k < d as i64);
    if !deep_enough && !top_vanishes {
        return Err(Error::InfiniteAntidiagonal(format!(
            "normalized part is nonzero at the top truncation level {d} and the window \
             [{}, {}] may see deeper levels",
            w.lo, w.hi
        )));
    }
    Ok(tot_prod(&norm.complex, w))
}

#[derive(Clone, Debug)]
pub struct HocolimResult {
    pub complex: ChainComplex,
    pub window: DegreeWindow,
    pub bar_levels_used: usize,
    pub homology: BTreeMap<i64, HomologyGroup>,
}

#[derive(Clone, Debug)]
pub struct HolimResult {
    pub complex: ChainComplex,
    pub window: DegreeWindow,
    pub cobar_levels_used: usize,
    pub homology: BTreeMap<i64, HomologyGroup>,
}

/// Bar levels needed for exactness of the homotopy colimit on the window.
pub fn hocolim_levels_needed(f: &Diagram, w: DegreeWindow) -> usize {
    let min = (0..f.index().object_count())
        .filter_map(|x| f.on_object(x).min_degree())
        .min();
    match min {
        Some(min) => (w.hi + 1 - min).max(0) as usize,
        None => 0,
    }
}

/// Homotopy colimit computed with an explicit number of bar levels; the
/// level count must be at least [`hocolim_levels_needed`].
pub fn hocolim_at_level(
    cat: &FiniteCategory,
    f: &Diagram,
    w: DegreeWindow,
    levels: usize,
) -> Result<HocolimResult, Error> {
    let needed = hocolim_levels_needed(f, w);
    if levels < needed {
        return Err(Error::InsufficientTruncation { needed, have: levels });
    }
    let bar = bar_simplicial(cat, f, levels)?;
    let complex = tot_sum(&moore(&bar), w);
    let homology = complex.homology_range(w.lo, w.hi);
    Ok(HocolimResult { complex, window: w, bar_levels_used: levels, homology })
}

/// Homotopy colimit of a diagram on a window, exact on the window.
///
/// The result is certified by recomputation with one extra bar level: the
/// reported homology must be identical, and a discrepancy is an engine bug,
/// not an input error.
pub fn hocolim(cat: &FiniteCategory, f: &Diagram, w: DegreeWindow) -> Result<HocolimResult, Error> {
    let needed = hocolim_levels_needed(f, w);
    let result = hocolim_at_level(cat, f, w, needed)?;
    let recheck = hocolim_at_level(cat, f, w, needed + 1)?;
    assert_eq!(
        result.homology, recheck.homology,
        "window stability certification failed for hocolim"
    );
    Ok(result)
}

/// Largest dimension of a nondegenerate nerve simplex; for loop-free
/// categories this is at most `object_count - 1`.
pub fn nondegenerate_nerve_dimension(cat: &FiniteCategory) -> usize {
    let bound = cat.object_count().saturating_sub(1);
    (0..=bound)
        .rev()
        .find(|&n| nerve_simplices(cat, n).iter().any(|c| !c.is_degenerate(cat)))
        .unwrap_or(0)
}

/// Homotopy limit with an explicit cobar truncation. Refuses index
/// categories with loops, where no finite truncation is trustworthy.
pub fn holim_at_level(
    cat: &FiniteCategory,
    f: &Diagram,
    w: DegreeWindow,
    levels: usize,
) -> Result<HolimResult, Error> {
    let violations = validate(f);
    if !violations.is_empty() {
        return Err(Error::InvalidDiagram(violations));
    }
    if !is_loop_free(cat) {
        let witness = loop_witness(cat).unwrap_or_else(|| "a loop".to_string());
        return Err(Error::LoopsInIndexCategory(witness));
    }
    let dim = nondegenerate_nerve_dimension(cat);
    if levels < dim + 1 {
        return Err(Error::InsufficientTruncation { needed: dim + 1, have: levels });
    }
    let cobar = cobar_cosimplicial(cat, f, levels)?;
    let reduced = reduced_moore_cosimplicial(&cobar);
    // Loop-freeness makes the reduced part vanish above the nerve dimension;
    // assert it rather than assume it.
    for &(k, l) in reduced.complex.ranks().keys() {
        assert!(
            -k <= dim as i64,
            "reduced cobar part survives at level {} (internal degree {l}) in a loop-free category",
            -k
        );
    }
    let complex = tot_prod(&reduced.complex, w);
    let homology = complex.homology_range(w.lo, w.hi);
    Ok(HolimResult { complex, window: w, cobar_levels_used: levels, homology })
}

/// Homotopy limit of a diagram over a loop-free category, exact on the
/// window. Certified by recomputation with one extra cobar level.
pub fn holim(cat: &FiniteCategory, f: &Diagram, w: DegreeWindow) -> Result<HolimResult, Error> {
    if !is_loop_free(cat) {
        let witness = loop_witness(cat).unwrap_or_else(|| "a loop".to_string());
        return Err(Error::LoopsInIndexCategory(witness));
    }
    let levels = nondegenerate_nerve_dimension(cat) + 1;
    let result = holim_at_level(cat, f, w, levels)?;
    let recheck = holim_at_level(cat, f, w, levels + 1)?;
    assert_eq!(
        result.homology, recheck.homology,
        "window stability certification failed for holim"
    );
    Ok(result)
}

/// Convenience: the ring of a diagram (rings of all values agree once the
/// diagram validates).
pub fn diagram_ring(f: &Diagram) -> Ring {
    f.on_object(0).ring()
}

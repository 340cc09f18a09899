//! Standard categories, diagrams, and seeded random generators used by the
//! property-verification suites.
//!
//! Everything here is deterministic for a fixed seed: random complexes are
//! direct sums of elementary pieces (spheres and two-term complexes, so
//! their homology is known by construction) conjugated by random unimodular
//! basis changes, and random double complexes are external products of two
//! random complexes.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::category::{CategoryBuilder, Diagram, FiniteCategory};
use crate::chain::{cone, direct_sum, ChainComplex, ChainMap, HomologyGroup};
use crate::dold_kan::{moore, DoubleComplex, DoubleComplexMap, SimplicialChainComplex};
use crate::error::Error;
use crate::matrix::Matrix;
use crate::ring::{int, Ring};
use crate::snf;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// Standard categories and diagrams.

/// One object, no nonidentity morphisms.
pub fn terminal() -> FiniteCategory {
    CategoryBuilder::new(&["x"]).build().expect("terminal category")
}

/// `a <- c -> b` via `u : c -> a` and `v : c -> b`.
pub fn span() -> FiniteCategory {
    let mut b = CategoryBuilder::new(&["a", "b", "c"]);
    b.morphism("u", "c", "a").expect("fresh name");
    b.morphism("v", "c", "b").expect("fresh name");
    b.build().expect("span category")
}

/// `a -> c <- b` via `u : a -> c` and `v : b -> c`.
pub fn cospan() -> FiniteCategory {
    let mut b = CategoryBuilder::new(&["a", "b", "c"]);
    b.morphism("u", "a", "c").expect("fresh name");
    b.morphism("v", "b", "c").expect("fresh name");
    b.build().expect("cospan category")
}

/// The linear poset `p0 -> p1 -> ... -> p{n-1}` with all composites named.
pub fn poset_chain(n: usize) -> FiniteCategory {
    assert!(n >= 1);
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut b = CategoryBuilder::new(&refs);
    for i in 0..n {
        for j in i + 1..n {
            b.morphism(&format!("f{i}{j}"), &names[i], &names[j]).expect("fresh name");
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                b.composite(&format!("f{j}{k}"), &format!("f{i}{j}"), &format!("f{i}{k}"))
                    .expect("declared morphisms");
            }
        }
    }
    b.build().expect("poset chain")
}

/// The cyclic group of order `k` as a one-object category; the nonidentity
/// morphisms are `g, g2, ..., g{k-1}`.
pub fn cyclic_group_category(k: usize) -> FiniteCategory {
    assert!(k >= 2);
    let mut b = CategoryBuilder::new(&["x"]);
    let name = |p: usize| {
        if p == 0 {
            "id_x".to_string()
        } else if p == 1 {
            "g".to_string()
        } else {
            format!("g{p}")
        }
    };
    for p in 1..k {
        b.morphism(&name(p), "x", "x").expect("fresh name");
    }
    for p in 1..k {
        for q in 1..k {
            b.composite(&name(q), &name(p), &name((p + q) % k)).expect("declared");
        }
    }
    b.build().expect("cyclic group category")
}

fn z0() -> ChainComplex {
    ChainComplex::concentrated(Ring::Integers, 0, 1)
}

fn times(c: &ChainComplex, m: i64) -> ChainMap {
    let mut components = BTreeMap::new();
    components.insert(0, Matrix::from_int_rows(c.ring(), &[&[m]]));
    ChainMap::new(c.clone(), c.clone(), components).expect("multiplication map")
}

/// The span diagram `0 <- Z[0] -> 0`, whose homotopy pushout is the
/// suspension.
pub fn span_suspension_diagram() -> (FiniteCategory, Diagram) {
    let cat = span();
    let zero = ChainComplex::zero(Ring::Integers);
    let on_objects = vec![zero.clone(), zero.clone(), z0()];
    let mut on_morphisms: Vec<ChainMap> = Vec::new();
    for m in 0..cat.morphism_count() {
        let mor = cat.morphism(m);
        on_morphisms.push(if cat.is_identity(m) {
            ChainMap::identity(&on_objects[mor.source])
        } else {
            ChainMap::zero(&on_objects[mor.source], &on_objects[mor.target])
        });
    }
    let d = Diagram::new(cat.clone(), on_objects, on_morphisms).expect("suspension diagram");
    (cat, d)
}

/// The span diagram `0 <- Z[0] --xm--> Z[0]`, whose homotopy pushout is the
/// cofiber of multiplication by `m`.
pub fn span_cofiber_diagram(m: i64) -> (FiniteCategory, Diagram) {
    let cat = span();
    let zero = ChainComplex::zero(Ring::Integers);
    let (a, b, c) = (
        cat.object_index("a").unwrap(),
        cat.object_index("b").unwrap(),
        cat.object_index("c").unwrap(),
    );
    let mut on_objects = vec![zero.clone(); 3];
    on_objects[b] = z0();
    on_objects[c] = z0();
    on_objects[a] = zero;
    let mut on_morphisms: Vec<ChainMap> = Vec::new();
    for mi in 0..cat.morphism_count() {
        let mor = cat.morphism(mi);
        on_morphisms.push(if cat.is_identity(mi) {
            ChainMap::identity(&on_objects[mor.source])
        } else if mor.name == "v" {
            times(&z0(), m)
        } else {
            ChainMap::zero(&on_objects[mor.source], &on_objects[mor.target])
        });
    }
    let d = Diagram::new(cat.clone(), on_objects, on_morphisms).expect("cofiber diagram");
    (cat, d)
}

/// The cospan diagram `0 -> Z[0] <--xm-- Z[0]`, whose homotopy pullback is
/// the fiber of multiplication by `m`.
pub fn cospan_fiber_diagram(m: i64) -> (FiniteCategory, Diagram) {
    let cat = cospan();
    let zero = ChainComplex::zero(Ring::Integers);
    let (a, b, c) = (
        cat.object_index("a").unwrap(),
        cat.object_index("b").unwrap(),
        cat.object_index("c").unwrap(),
    );
    let mut on_objects = vec![zero.clone(); 3];
    on_objects[a] = zero;
    on_objects[b] = z0();
    on_objects[c] = z0();
    let mut on_morphisms: Vec<ChainMap> = Vec::new();
    for mi in 0..cat.morphism_count() {
        let mor = cat.morphism(mi);
        on_morphisms.push(if cat.is_identity(mi) {
            ChainMap::identity(&on_objects[mor.source])
        } else if mor.name == "v" {
            times(&z0(), m)
        } else {
            ChainMap::zero(&on_objects[mor.source], &on_objects[mor.target])
        });
    }
    let d = Diagram::new(cat.clone(), on_objects, on_morphisms).expect("fiber diagram");
    (cat, d)
}

/// A diagram over the arrow category `p0 -> p1` with a nonzero map; the
/// homotopy limit is the value at the initial object, returned separately.
pub fn arrow_diagram() -> (FiniteCategory, Diagram, ChainComplex) {
    let cat = poset_chain(2);
    let c0 = z0();
    let on_objects = vec![c0.clone(), z0()];
    let mut on_morphisms: Vec<ChainMap> = Vec::new();
    for mi in 0..cat.morphism_count() {
        let mor = cat.morphism(mi);
        on_morphisms.push(if cat.is_identity(mi) {
            ChainMap::identity(&on_objects[mor.source])
        } else {
            times(&z0(), 7)
        });
    }
    let d = Diagram::new(cat.clone(), on_objects, on_morphisms).expect("arrow diagram");
    (cat, d, c0)
}

/// The one-object category of the cyclic group of order two acting on `Z[0]`
/// by `-1`.
pub fn sign_action_diagram() -> (FiniteCategory, Diagram) {
    let cat = cyclic_group_category(2);
    let c = z0();
    let mut on_morphisms = Vec::new();
    for mi in 0..cat.morphism_count() {
        on_morphisms.push(if cat.is_identity(mi) {
            ChainMap::identity(&c)
        } else {
            times(&c, -1)
        });
    }
    let d = Diagram::new(cat.clone(), vec![c], on_morphisms).expect("sign action");
    (cat, d)
}

/// Corpus categories that have an initial object (so the homotopy colimit of
/// a constant diagram is the value itself).
pub fn categories_with_initial_object() -> Vec<(String, FiniteCategory)> {
    vec![
        ("terminal".into(), terminal()),
        ("span".into(), span()),
        ("poset3".into(), poset_chain(3)),
    ]
}

// ---------------------------------------------------------------------------
// Oracles.

/// The two-periodic complex in degrees `0..=top`: `d_n = m` when `n` has the
/// selected parity, zero otherwise.
pub fn two_periodic_complex(m: i64, mult_on_even: bool, top: i64) -> ChainComplex {
    let mut ranks = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for n in 0..=top {
        ranks.insert(n, 1);
    }
    for n in 1..=top {
        let active = (n % 2 == 0) == mult_on_even;
        if active {
            diffs.insert(n, Matrix::from_int_rows(Ring::Integers, &[&[m]]));
        }
    }
    ChainComplex::new(Ring::Integers, ranks, diffs).expect("periodic complex")
}

/// Homology of the two-periodic resolution of the trivial module: the
/// homology of a cyclic group of order `m` with integer coefficients,
/// `(Z, Z/m, 0, Z/m, 0, ...)` on `[lo, hi]`.
pub fn periodic_resolution_homology(m: i64, lo: i64, hi: i64) -> BTreeMap<i64, HomologyGroup> {
    two_periodic_complex(m, true, hi + 1).homology_range(lo, hi)
}

// ---------------------------------------------------------------------------
// Random generators with known structure.

/// A random unimodular matrix: a short product of elementary operations.
pub fn random_unimodular(ring: Ring, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut m = Matrix::identity(ring, n);
    if n == 0 {
        return m;
    }
    for _ in 0..2 * n {
        match rng.gen_range(0..3) {
            0 => {
                let i = rng.gen_range(0..n);
                let j = rng.gen_range(0..n);
                if i != j {
                    let q = int(*[-2, -1, 1, 2].get(rng.gen_range(0..4)).unwrap());
                    m.add_mul_row(i, j, &q);
                }
            }
            1 => {
                let i = rng.gen_range(0..n);
                let j = rng.gen_range(0..n);
                m.swap_rows(i, j);
            }
            _ => {
                let i = rng.gen_range(0..n);
                m.scale_row(i, &int(-1));
            }
        }
    }
    m
}

pub struct RandomComplexSpec {
    pub pieces: usize,
    pub deg_lo: i64,
    pub deg_hi: i64,
    pub max_rank_per_degree: usize,
    pub max_torsion: i64,
}

impl Default for RandomComplexSpec {
    fn default() -> Self {
        RandomComplexSpec {
            pieces: 4,
            deg_lo: -2,
            deg_hi: 3,
            max_rank_per_degree: 3,
            max_torsion: 6,
        }
    }
}

/// A random bounded complex over `Z`: a direct sum of spheres and two-term
/// complexes, conjugated degreewise by random unimodular matrices (which
/// changes nothing about its homology, so the generator's output always has
/// homology known from the pieces).
pub fn random_complex(spec: &RandomComplexSpec, rng: &mut ChaCha8Rng) -> ChainComplex {
    let ring = Ring::Integers;
    let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
    let mut pieces: Vec<ChainComplex> = Vec::new();
    for _ in 0..spec.pieces {
        if rng.gen_bool(0.3) {
            let d = rng.gen_range(spec.deg_lo..=spec.deg_hi);
            if ranks.get(&d).copied().unwrap_or(0) + 1 > spec.max_rank_per_degree {
                continue;
            }
            *ranks.entry(d).or_insert(0) += 1;
            pieces.push(ChainComplex::concentrated(ring, d, 1));
        } else {
            let d = rng.gen_range(spec.deg_lo..spec.deg_hi);
            if ranks.get(&d).copied().unwrap_or(0) + 1 > spec.max_rank_per_degree
                || ranks.get(&(d + 1)).copied().unwrap_or(0) + 1 > spec.max_rank_per_degree
            {
                continue;
            }
            *ranks.entry(d).or_insert(0) += 1;
            *ranks.entry(d + 1).or_insert(0) += 1;
            let m = rng.gen_range(0..=spec.max_torsion);
            pieces.push(ChainComplex::two_term(ring, d, m));
        }
    }
    let plain = direct_sum(&pieces).expect("one ring");
    conjugate(&plain, rng)
}

/// Conjugates a complex by random unimodular basis changes per degree.
pub fn conjugate(c: &ChainComplex, rng: &mut ChaCha8Rng) -> ChainComplex {
    let ring = c.ring();
    let basis: BTreeMap<i64, Matrix> = c
        .ranks()
        .iter()
        .map(|(&n, &r)| (n, random_unimodular(ring, r, rng)))
        .collect();
    let inv: BTreeMap<i64, Matrix> = basis
        .iter()
        .map(|(&n, u)| (n, snf::inverse(u).expect("unimodular")))
        .collect();
    let diffs = c
        .ranks()
        .keys()
        .filter_map(|&n| {
            let d = c.differential(n);
            if d.rows() == 0 || d.cols() == 0 {
                return None;
            }
            let u_out = basis.get(&(n - 1)).cloned().unwrap_or_else(|| Matrix::identity(ring, 0));
            let u_in = inv.get(&n).cloned().unwrap_or_else(|| Matrix::identity(ring, 0));
            Some((n, u_out.mul(&d).mul(&u_in)))
        })
        .collect();
    ChainComplex::new(ring, c.ranks().clone(), diffs).expect("conjugation preserves d.d = 0")
}

/// A quasi-isomorphism out of `c` with known structure: the inclusion
/// `C -> C (+) cone(id_A)` for a random `A`.
pub fn random_quasi_iso(
    c: &ChainComplex,
    rng: &mut ChaCha8Rng,
) -> (ChainComplex, ChainMap) {
    let spec = RandomComplexSpec { pieces: 2, ..Default::default() };
    let a = random_complex(&spec, rng);
    let acyclic = cone(&ChainMap::identity(&a));
    let target = direct_sum(&[c.clone(), acyclic]).expect("one ring");
    let mut components = BTreeMap::new();
    for (&n, &r) in c.ranks() {
        let mut m = Matrix::zero(c.ring(), target.rank(n), r);
        m.write_block(0, 0, &Matrix::identity(c.ring(), r));
        components.insert(n, m);
    }
    let f = ChainMap::new(c.clone(), target.clone(), components).expect("inclusion is a chain map");
    (target, f)
}

// ---------------------------------------------------------------------------
// Double complexes.

/// External product of two complexes: `W_{k,l} = C_k (x) D_l` with
/// `dh = dC (x) id` and `dv = id (x) dD` (commuting, untwisted).
pub fn external_product(c: &ChainComplex, d: &ChainComplex) -> DoubleComplex {
    let ring = c.ring();
    let mut ranks = BTreeMap::new();
    let mut horiz = BTreeMap::new();
    let mut vert = BTreeMap::new();
    for (&k, &rk) in c.ranks() {
        for (&l, &rl) in d.ranks() {
            ranks.insert((k, l), rk * rl);
        }
    }
    for k in c.support() {
        for l in d.support() {
            let h = c.differential(k).kronecker(&Matrix::identity(ring, d.rank(l)));
            if h.rows() > 0 && h.cols() > 0 {
                horiz.insert((k, l), h);
            }
            let v = Matrix::identity(ring, c.rank(k)).kronecker(&d.differential(l));
            if v.rows() > 0 && v.cols() > 0 {
                vert.insert((k, l), v);
            }
        }
    }
    DoubleComplex::new(ring, ranks, horiz, vert).expect("external product is a double complex")
}

/// A random double complex supported in `k >= 0`.
pub fn random_double_complex(rng: &mut ChaCha8Rng) -> DoubleComplex {
    let hspec = RandomComplexSpec {
        pieces: 2,
        deg_lo: 0,
        deg_hi: 3,
        max_rank_per_degree: 2,
        max_torsion: 4,
    };
    let vspec = RandomComplexSpec {
        pieces: 2,
        deg_lo: -1,
        deg_hi: 2,
        max_rank_per_degree: 2,
        max_torsion: 4,
    };
    external_product(&random_complex(&hspec, rng), &random_complex(&vspec, rng))
}

/// The horizontal mapping cone of the identity of `w`: every row becomes the
/// cone of the identity of the original row, so all rows are acyclic.
pub fn horizontal_identity_cone(w: &DoubleComplex) -> DoubleComplex {
    let ring = w.ring();
    let mut ranks = BTreeMap::new();
    let keys: Vec<(i64, i64)> = w.ranks().keys().copied().collect();
    for &(k, l) in &keys {
        let r = w.rank(k, l) + w.rank(k - 1, l);
        ranks.insert((k, l), r);
        let r1 = w.rank(k + 1, l) + w.rank(k, l);
        if r1 > 0 {
            ranks.insert((k + 1, l), r1);
        }
    }
    let bidegrees: Vec<(i64, i64)> = ranks.keys().copied().collect();
    let mut horiz = BTreeMap::new();
    let mut vert = BTreeMap::new();
    for &(k, l) in &bidegrees {
        let (rk, rk1) = (w.rank(k, l), w.rank(k - 1, l));
        // Horizontal cone differential [[dh, id], [0, -dh]].
        let rows = w.rank(k - 1, l) + w.rank(k - 2, l);
        if rows > 0 && rk + rk1 > 0 {
            let mut m = Matrix::zero(ring, rows, rk + rk1);
            m.write_block(0, 0, &w.horiz(k, l));
            m.write_block(0, rk, &Matrix::identity(ring, rk1));
            m.write_block(w.rank(k - 1, l), rk, &w.horiz(k - 1, l).neg());
            horiz.insert((k, l), m);
        }
        // Vertical differential diag(dv, dv).
        let vrows = w.rank(k, l - 1) + w.rank(k - 1, l - 1);
        if vrows > 0 && rk + rk1 > 0 {
            let mut m = Matrix::zero(ring, vrows, rk + rk1);
            m.write_block(0, 0, &w.vert(k, l));
            m.write_block(w.rank(k, l - 1), rk, &w.vert(k - 1, l));
            vert.insert((k, l), m);
        }
    }
    DoubleComplex::new(ring, ranks, horiz, vert).expect("identity cone is a double complex")
}

/// Direct sum of two double complexes (blockwise).
pub fn double_sum(x: &DoubleComplex, y: &DoubleComplex) -> DoubleComplex {
    let ring = x.ring();
    assert_eq!(ring, y.ring());
    let mut ranks = BTreeMap::new();
    let keys: std::collections::BTreeSet<(i64, i64)> =
        x.ranks().keys().chain(y.ranks().keys()).copied().collect();
    for &(k, l) in &keys {
        let r = x.rank(k, l) + y.rank(k, l);
        if r > 0 {
            ranks.insert((k, l), r);
        }
    }
    let mut horiz = BTreeMap::new();
    let mut vert = BTreeMap::new();
    for &(k, l) in &keys {
        let rows = x.rank(k - 1, l) + y.rank(k - 1, l);
        let cols = x.rank(k, l) + y.rank(k, l);
        if rows > 0 && cols > 0 {
            let mut m = Matrix::zero(ring, rows, cols);
            m.write_block(0, 0, &x.horiz(k, l));
            m.write_block(x.rank(k - 1, l), x.rank(k, l), &y.horiz(k, l));
            horiz.insert((k, l), m);
        }
        let vrows = x.rank(k, l - 1) + y.rank(k, l - 1);
        if vrows > 0 && cols > 0 {
            let mut m = Matrix::zero(ring, vrows, cols);
            m.write_block(0, 0, &x.vert(k, l));
            m.write_block(x.rank(k, l - 1), x.rank(k, l), &y.vert(k, l));
            vert.insert((k, l), m);
        }
    }
    DoubleComplex::new(ring, ranks, horiz, vert).expect("sum of double complexes")
}

/// The inclusion `X -> X (+) Z` as a morphism of double complexes. When the
/// rows of `Z` are acyclic the map is a rowwise quasi-isomorphism by
/// construction.
pub fn double_inclusion(x: &DoubleComplex, z: &DoubleComplex) -> DoubleComplexMap {
    let target = double_sum(x, z);
    let mut components = BTreeMap::new();
    for (&(k, l), &r) in x.ranks() {
        let mut m = Matrix::zero(x.ring(), target.rank(k, l), r);
        m.write_block(0, 0, &Matrix::identity(x.ring(), r));
        components.insert((k, l), m);
    }
    DoubleComplexMap::new(x.clone(), target, components).expect("inclusion commutes")
}

/// The projection `X (+) Z -> X` as a morphism of double complexes.
pub fn double_projection(x: &DoubleComplex, z: &DoubleComplex) -> DoubleComplexMap {
    let source = double_sum(x, z);
    let mut components = BTreeMap::new();
    for (&(k, l), &r) in source.ranks() {
        let mut m = Matrix::zero(x.ring(), x.rank(k, l), r);
        m.write_block(0, 0, &Matrix::identity(x.ring(), x.rank(k, l)));
        components.insert((k, l), m);
    }
    DoubleComplexMap::new(source.clone(), x.clone(), components).expect("projection commutes")
}

/// The staircase double complex truncated to its first `steps` slots.
///
/// The slots walk up and to the left: `(0,0), (0,1), (-1,1), (-1,2), ...`,
/// alternating between `(-k, k)` and `(-k, k+1)`, every differential an
/// identity. Full columns are two-term identity complexes, hence acyclic.
/// The homology of the product totalization of the truncation NEVER
/// stabilizes as `steps` grows: `H_0` alternates between `Z` (odd steps) and
/// `0` (even steps). A truncated product totalization therefore certifies
/// nothing without a vanishing precondition, which is exactly why `holim`
/// refuses index categories with loops.
pub fn staircase(steps: usize) -> DoubleComplex {
    let ring = Ring::Integers;
    let mut ranks = BTreeMap::new();
    let mut horiz = BTreeMap::new();
    let mut vert = BTreeMap::new();
    let slot = |t: usize| -> (i64, i64) {
        let k = (t / 2) as i64;
        if t % 2 == 0 {
            (-k, k)
        } else {
            (-k, k + 1)
        }
    };
    for t in 0..steps {
        ranks.insert(slot(t), 1);
    }
    let one = Matrix::from_int_rows(ring, &[&[1]]);
    for t in 0..steps {
        if t % 2 == 1 {
            let (k, l) = slot(t);
            // Vertical: (-k, k+1) -> (-k, k), always present with its source.
            vert.insert((k, l), one.clone());
            // Horizontal: (-k, k+1) -> (-k-1, k+1) when the next slot exists.
            if t + 1 < steps {
                horiz.insert((k, l), one.clone());
            }
        }
    }
    DoubleComplex::new(ring, ranks, horiz, vert).expect("staircase is a double complex")
}

// ---------------------------------------------------------------------------
// Natural transformations and the induced map on homotopy colimits.

/// The diagram `x -> F(x) (+) cone(id_{F(x)})` together with the inclusion
/// transformation from `F`; every component is a quasi-isomorphism.
pub fn diagram_with_acyclic_padding(f: &Diagram) -> (Diagram, Vec<ChainMap>) {
    let cat = f.index().clone();
    let mut on_objects = Vec::new();
    let mut eta = Vec::new();
    for x in 0..cat.object_count() {
        let fx = f.on_object(x);
        let acyclic = cone(&ChainMap::identity(fx));
        let gx = direct_sum(&[fx.clone(), acyclic]).expect("one ring");
        let mut components = BTreeMap::new();
        for (&n, &r) in fx.ranks() {
            let mut m = Matrix::zero(fx.ring(), gx.rank(n), r);
            m.write_block(0, 0, &Matrix::identity(fx.ring(), r));
            components.insert(n, m);
        }
        eta.push(ChainMap::new(fx.clone(), gx.clone(), components).expect("inclusion"));
        on_objects.push(gx);
    }
    let mut on_morphisms = Vec::new();
    for mi in 0..cat.morphism_count() {
        let mor = cat.morphism(mi);
        let fm = f.on_morphism(mi);
        let (src, tgt) = (&on_objects[mor.source], &on_objects[mor.target]);
        let fs = f.on_object(mor.source);
        let ft = f.on_object(mor.target);
        let mut components = BTreeMap::new();
        for n in src.support() {
            let mut m = Matrix::zero(src.ring(), tgt.rank(n), src.rank(n));
            // Block structure: F(m) on the F part, then diag(F(m)_n,
            // F(m)_{n-1}) on the cone padding, whose degree-n piece is
            // laid out as [F_n | F_{n-1}].
            m.write_block(0, 0, &fm.component(n));
            m.write_block(ft.rank(n), fs.rank(n), &fm.component(n));
            m.write_block(2 * ft.rank(n), 2 * fs.rank(n), &fm.component(n - 1));
            components.insert(n, m);
        }
        on_morphisms.push(
            ChainMap::new(src.clone(), tgt.clone(), components).expect("padded morphism"),
        );
    }
    let g = Diagram::new(cat, on_objects, on_morphisms).expect("padded diagram is a functor");
    (g, eta)
}

/// The chain map induced on homotopy-colimit complexes by a natural
/// transformation (bar levels chosen to cover the window for both diagrams).
pub fn hocolim_comparison_map(
    cat: &FiniteCategory,
    f: &Diagram,
    g: &Diagram,
    eta: &[ChainMap],
    w: crate::totalization::DegreeWindow,
) -> Result<ChainMap, Error> {
    use crate::bar_cobar::{bar_simplicial, hocolim_levels_needed};
    use crate::category::nerve_simplices;
    let levels = hocolim_levels_needed(f, w).max(hocolim_levels_needed(g, w));
    let bar_f = bar_simplicial(cat, f, levels)?;
    let bar_g = bar_simplicial(cat, g, levels)?;
    let mf = moore(&bar_f);
    let mg = moore(&bar_g);
    let mut components = BTreeMap::new();
    for n in 0..=levels {
        let chains = nerve_simplices(cat, n);
        let degrees: std::collections::BTreeSet<i64> = chains
            .iter()
            .flat_map(|c| f.on_object(c.start()).support().chain(g.on_object(c.start()).support()))
            .collect();
        for &l in &degrees {
            let rows: usize = chains.iter().map(|c| g.on_object(c.start()).rank(l)).sum();
            let cols: usize = chains.iter().map(|c| f.on_object(c.start()).rank(l)).sum();
            if rows == 0 || cols == 0 {
                continue;
            }
            let mut m = Matrix::zero(f.on_object(0).ring(), rows, cols);
            let (mut r0, mut c0) = (0, 0);
            for c in &chains {
                let x = c.start();
                m.write_block(r0, c0, &eta[x].component(l));
                r0 += g.on_object(x).rank(l);
                c0 += f.on_object(x).rank(l);
            }
            components.insert((n as i64, l), m);
        }
    }
    let map = DoubleComplexMap::new(mf, mg, components)?;
    Ok(crate::totalization::tot_sum_map(&map, w))
}

// ---------------------------------------------------------------------------
// Simplicial corpus for the normalized/fat/thin comparisons.

/// Named simplicial chain complexes exercised by the comparison suites.
pub fn simplicial_corpus(truncation: usize) -> Vec<(String, SimplicialChainComplex)> {
    use crate::bar_cobar::{bar_simplicial, linearize};
    use crate::dold_kan::constant_simplicial;
    use crate::simplicial_set::FiniteSimplicialSet;
    let mut out = Vec::new();
    out.push((
        "constant".to_string(),
        constant_simplicial(&ChainComplex::two_term(Ring::Integers, 0, 2), truncation),
    ));
    let span = span();
    let f = Diagram::constant(span.clone(), z0());
    out.push(("bar_span_constant".to_string(), bar_simplicial(&span, &f, truncation).unwrap()));
    let (span2, susp) = span_suspension_diagram();
    out.push(("bar_span_suspension".to_string(), bar_simplicial(&span2, &susp, truncation).unwrap()));
    let poset = poset_chain(3);
    let f = Diagram::constant(poset.clone(), ChainComplex::two_term(Ring::Integers, 0, 2));
    out.push(("bar_poset_two_term".to_string(), bar_simplicial(&poset, &f, truncation).unwrap()));
    let b2 = cyclic_group_category(2);
    let f = Diagram::constant(b2.clone(), z0());
    out.push(("bar_cyclic2_constant".to_string(), bar_simplicial(&b2, &f, truncation).unwrap()));
    out.push((
        "linearized_circle".to_string(),
        linearize(&FiniteSimplicialSet::circle(), &z0(), truncation),
    ));
    out.push((
        "linearized_boundary2".to_string(),
        linearize(
            &FiniteSimplicialSet::boundary(2),
            &ChainComplex::two_term(Ring::Integers, 0, 3),
            truncation,
        ),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::totalization::{tot_sum, DegreeWindow};

    #[test]
    fn random_complexes_are_valid_and_bounded() {
        let mut rng = seeded_rng(3);
        let spec = RandomComplexSpec::default();
        for _ in 0..30 {
            let c = random_complex(&spec, &mut rng);
            for (&n, &r) in c.ranks() {
                assert!((spec.deg_lo..=spec.deg_hi).contains(&n));
                assert!(r <= spec.max_rank_per_degree);
            }
        }
    }

    #[test]
    fn conjugation_preserves_homology() {
        let mut rng = seeded_rng(5);
        let c = ChainComplex::two_term(Ring::Integers, 0, 6);
        let c2 = conjugate(&c, &mut rng);
        for n in 0..=1 {
            assert_eq!(c.homology(n), c2.homology(n));
        }
    }

    #[test]
    fn staircase_columns_are_acyclic_at_even_truncations() {
        let x = staircase(8);
        for k in 0..4 {
            assert!(x.column(-k).is_acyclic(), "column {}", -k);
        }
    }

    #[test]
    fn staircase_truncations_never_stabilize() {
        let w = DegreeWindow::new(0, 0).unwrap();
        for steps in 1..=9usize {
            let tot = tot_sum(&staircase(steps), w);
            let h0 = tot.homology(0);
            if steps % 2 == 1 {
                assert_eq!(h0, HomologyGroup::free(1), "steps {steps}");
            } else {
                assert!(h0.is_trivial(), "steps {steps}");
            }
        }
    }

    #[test]
    fn identity_cone_rows_are_acyclic() {
        let mut rng = seeded_rng(9);
        let w = random_double_complex(&mut rng);
        let z = horizontal_identity_cone(&w);
        // Rows of z: fix internal degree, walk horizontally.
        let ls: std::collections::BTreeSet<i64> = z.ranks().keys().map(|&(_, l)| l).collect();
        for l in ls {
            let ranks: BTreeMap<i64, usize> = z
                .ranks()
                .iter()
                .filter(|&(&(_, ll), _)| ll == l)
                .map(|(&(k, _), &r)| (k, r))
                .collect();
            let diffs: BTreeMap<i64, Matrix> = ranks
                .keys()
                .filter_map(|&k| {
                    let m = z.horiz(k, l);
                    (m.rows() > 0 && m.cols() > 0).then_some((k, m))
                })
                .collect();
            let row = ChainComplex::new(Ring::Integers, ranks, diffs).unwrap();
            assert!(row.is_acyclic(), "row {l}");
        }
    }
}

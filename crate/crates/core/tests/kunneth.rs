//! Tensor-product comparisons: the Kunneth isomorphism against the direct
//! homology of the tensor complex, the unit isomorphism, the pushout-product
//! monomorphism, and the two independent characterizations of
//! quasi-isomorphisms.

use std::collections::BTreeMap;

use hocolim::corpus::{self, RandomComplexSpec};
use hocolim::{
    cone, direct_sum, is_quasi_iso, kernel_basis, kunneth_rhs, smith_normal_form, solve_exact,
    tensor, ChainComplex, ChainMap, FiniteSimplicialSet, Matrix, Ring,
};
use num_traits::One;

fn sset_corpus() -> Vec<(&'static str, FiniteSimplicialSet)> {
    vec![
        ("point", FiniteSimplicialSet::simplex(0)),
        ("interval", FiniteSimplicialSet::simplex(1)),
        ("boundary2", FiniteSimplicialSet::boundary(2)),
        ("horn21", FiniteSimplicialSet::horn(2, 1).unwrap()),
        ("circle", FiniteSimplicialSet::circle()),
    ]
}

#[test]
fn kunneth_on_corpus_with_random_complexes() {
    let mut rng = corpus::seeded_rng(17);
    let spec = RandomComplexSpec::default();
    for _ in 0..12 {
        let c = corpus::random_complex(&spec, &mut rng);
        for (name, k) in sset_corpus() {
            let nk = k.normalized_chains(Ring::Integers, k.truncation()).unwrap();
            let t = tensor(&nk, &c).unwrap();
            for n in -4..=7 {
                let lhs = t.homology(n);
                let rhs = kunneth_rhs(&k, &c, n).unwrap();
                assert_eq!(lhs, rhs, "{name}, degree {n}");
            }
        }
    }
}

#[test]
fn tensor_unit_is_the_identity() {
    let mut rng = corpus::seeded_rng(23);
    let point = FiniteSimplicialSet::simplex(0)
        .normalized_chains(Ring::Integers, 0)
        .unwrap();
    for _ in 0..10 {
        let c = corpus::random_complex(&RandomComplexSpec::default(), &mut rng);
        // The canonical map sends the single tensor basis vector to the
        // corresponding basis vector of C; with the block ordering used by
        // `tensor` that map is literally the identity matrix.
        assert_eq!(tensor(&point, &c).unwrap(), c);
    }
}

/// Inclusion of normalized chains induced by a simplex-name-preserving
/// inclusion of simplicial sets.
fn chain_inclusion(k: &FiniteSimplicialSet, l: &FiniteSimplicialSet, dim: usize) -> Matrix {
    let rows = l.simplex_count(dim);
    let cols = k.simplex_count(dim);
    let mut m = Matrix::zero(Ring::Integers, rows, cols);
    for j in 0..cols {
        let name = k.simplex_name(hocolim::simplicial_set::SimplexId { dim, idx: j });
        let i = (0..rows)
            .find(|&i| {
                l.simplex_name(hocolim::simplicial_set::SimplexId { dim, idx: i }) == name
            })
            .expect("simplex of the subcomplex exists in the ambient complex");
        m.set(i, j, hocolim::ring::int(1));
    }
    m
}

#[test]
fn pushout_product_map_is_degreewise_injective() {
    // For a monomorphism K -> L of simplicial sets and a degreewise split
    // injection C -> D, the induced map out of the pushout
    // (K (x) D) u_{K (x) C} (L (x) C) -> L (x) D is degreewise injective.
    let pairs = vec![
        (FiniteSimplicialSet::boundary(2), FiniteSimplicialSet::simplex(2)),
        (FiniteSimplicialSet::horn(2, 1).unwrap(), FiniteSimplicialSet::simplex(2)),
        (FiniteSimplicialSet::boundary(1), FiniteSimplicialSet::simplex(1)),
    ];
    let mut rng = corpus::seeded_rng(31);
    let spec = RandomComplexSpec { pieces: 3, ..Default::default() };
    for (k, l) in pairs {
        let c = corpus::random_complex(&spec, &mut rng);
        let extra = corpus::random_complex(&spec, &mut rng);
        let d = direct_sum(&[c.clone(), extra]).unwrap();
        // j : C -> D is the split inclusion of the first summand.
        let top = l.truncation();
        for n in -3..=(top as i64 + 4) {
            // Assemble theta_n block by block.
            let mut blocks: Vec<Matrix> = Vec::new();
            let mut total_cols = 0;
            let rows: usize = (0..=top)
                .map(|dim| l.simplex_count(dim) * d.rank(n - dim as i64))
                .sum();
            for dim in 0..=top {
                let deg = n - dim as i64;
                let inc = chain_inclusion(&k, &l, dim);
                // Block K_dim (x) D_deg -> L_dim (x) D_deg.
                let b1 = inc.kronecker(&Matrix::identity(Ring::Integers, d.rank(deg)));
                // Complement simplices of L tensor C, included via j.
                let comp_cols: Vec<usize> = (0..l.simplex_count(dim))
                    .filter(|&i| {
                        let name =
                            l.simplex_name(hocolim::simplicial_set::SimplexId { dim, idx: i });
                        (0..k.simplex_count(dim)).all(|j| {
                            k.simplex_name(hocolim::simplicial_set::SimplexId { dim, idx: j })
                                != name
                        })
                    })
                    .collect();
                let mut comp_inc = Matrix::zero(Ring::Integers, l.simplex_count(dim), comp_cols.len());
                for (col, &i) in comp_cols.iter().enumerate() {
                    comp_inc.set(i, col, hocolim::ring::int(1));
                }
                let mut j_map = Matrix::zero(Ring::Integers, d.rank(deg), c.rank(deg));
                j_map.write_block(0, 0, &Matrix::identity(Ring::Integers, c.rank(deg)));
                let b2 = comp_inc.kronecker(&j_map);
                total_cols += b1.cols() + b2.cols();
                blocks.push(b1);
                blocks.push(b2);
            }
            if rows == 0 || total_cols == 0 {
                continue;
            }
            // Stack the blocks side by side, aligning rows per dimension.
            let mut theta = Matrix::zero(Ring::Integers, rows, total_cols);
            let mut col = 0;
            let row_offset: Vec<usize> = {
                let mut acc = 0;
                (0..=top)
                    .map(|dim| {
                        let here = acc;
                        acc += l.simplex_count(dim) * d.rank(n - dim as i64);
                        here
                    })
                    .collect()
            };
            for (b, block) in blocks.iter().enumerate() {
                let dim = b / 2;
                theta.write_block(row_offset[dim], col, block);
                col += block.cols();
            }
            assert_eq!(
                kernel_basis(&theta).cols(),
                0,
                "pushout-product map has a kernel in degree {n}"
            );
        }
    }
}

#[test]
fn homology_is_additive_on_random_pairs() {
    let mut rng = corpus::seeded_rng(41);
    let spec = RandomComplexSpec::default();
    for _ in 0..15 {
        let a = corpus::random_complex(&spec, &mut rng);
        let b = corpus::random_complex(&spec, &mut rng);
        let s = direct_sum(&[a.clone(), b.clone()]).unwrap();
        for n in -4..=5 {
            assert_eq!(s.homology(n), a.homology(n).sum(&b.homology(n)));
        }
    }
}

/// Independent characterization: `f` induces isomorphisms on homology in
/// every degree. For finitely generated groups it is enough that the groups
/// are abstractly isomorphic and the induced map is surjective.
fn quasi_iso_degreewise(f: &ChainMap) -> bool {
    let (c, d) = (f.source(), f.target());
    let degrees: std::collections::BTreeSet<i64> =
        c.support().chain(d.support()).collect();
    for &n in &degrees {
        if c.homology(n) != d.homology(n) {
            return false;
        }
        // Surjectivity of the induced map.
        let kc = kernel_basis(&c.differential(n));
        let kd = kernel_basis(&d.differential(n));
        if kd.cols() == 0 {
            continue;
        }
        let image_in_kd = solve_exact(&kd, &f.component(n).mul(&kc))
            .expect("cycles map to cycles");
        let boundaries_in_kd = solve_exact(&kd, &d.differential(n + 1))
            .expect("boundaries are cycles");
        let generated = image_in_kd.hstack(&boundaries_in_kd);
        let snf = smith_normal_form(&generated);
        if snf.rank() < kd.cols() || !snf.invariant_factors().iter().all(One::is_one) {
            return false;
        }
    }
    true
}

#[test]
fn quasi_iso_routes_agree() {
    let mut rng = corpus::seeded_rng(53);
    let spec = RandomComplexSpec { pieces: 3, ..Default::default() };
    let mut seen_true = 0;
    let mut seen_false = 0;
    for trial in 0..25 {
        let c = corpus::random_complex(&spec, &mut rng);
        if c.total_rank() > 12 {
            continue;
        }
        // Scalar multiplication maps: chain maps for every m, and quasi-iso
        // exactly when m acts invertibly on all homology.
        for m in [-2i64, 0, 1, 2, 3] {
            let components: BTreeMap<i64, Matrix> = c
                .ranks()
                .iter()
                .map(|(&n, &r)| {
                    (n, Matrix::identity(Ring::Integers, r).scale(&hocolim::ring::int(m)))
                })
                .collect();
            let f = ChainMap::new(c.clone(), c.clone(), components).unwrap();
            let via_cone = is_quasi_iso(&f);
            let via_degrees = quasi_iso_degreewise(&f);
            assert_eq!(via_cone, via_degrees, "trial {trial}, scalar {m}");
            if via_cone {
                seen_true += 1;
            } else {
                seen_false += 1;
            }
        }
        // A known quasi-isomorphism through an acyclic summand.
        let (_, f) = corpus::random_quasi_iso(&c, &mut rng);
        assert!(is_quasi_iso(&f), "trial {trial}");
        assert!(quasi_iso_degreewise(&f), "trial {trial}");
    }
    assert!(seen_true > 0 && seen_false > 0, "the scalar family must exercise both outcomes");
}

#[test]
fn cone_detects_failure_of_quasi_iso() {
    let c = ChainComplex::concentrated(Ring::Integers, 0, 1);
    let mut components = BTreeMap::new();
    components.insert(0, Matrix::from_int_rows(Ring::Integers, &[&[2]]));
    let f = ChainMap::new(c.clone(), c.clone(), components).unwrap();
    assert!(!is_quasi_iso(&f));
    assert!(!quasi_iso_degreewise(&f));
    assert_eq!(cone(&f).homology(0), hocolim::HomologyGroup::new(0, vec![2]));
}

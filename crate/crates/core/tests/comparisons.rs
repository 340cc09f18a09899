//! Comparisons between the Moore, normalized, and reduced complexes, and
//! between fat and thin realizations, on the simplicial corpus.

use std::collections::BTreeMap;

use hocolim::corpus;
use hocolim::dold_kan::{
    constant_cosimplicial, degenerate_sub, moore, moore_cosimplicial, normalized,
    normalized_cosimplicial, reduced_moore, reduced_moore_cosimplicial,
};
use hocolim::{
    cobar_cosimplicial, cosimplicial_totalization, fat_realization, inverse, is_quasi_iso_on,
    realization, tot_sum_map, ChainComplex, DegreeWindow, Diagram, DoubleComplexMap, Matrix, Ring,
};
use num_traits::Signed;

fn window(lo: i64, hi: i64) -> DegreeWindow {
    DegreeWindow::new(lo, hi).unwrap()
}

#[test]
fn normalized_to_reduced_composite_is_a_unimodular_isomorphism() {
    for (name, x) in corpus::simplicial_corpus(4) {
        let n = normalized(&x);
        let d = degenerate_sub(&x);
        let m = moore(&x);
        let r = reduced_moore(&x);
        for (&(k, l), &m_rank) in m.ranks() {
            let n_rank = n.inclusion.get(&(k, l)).map_or(0, Matrix::cols);
            let d_rank = d.rank(k, l);
            // Dold-Kan splitting: rank additivity.
            assert_eq!(n_rank + d_rank, m_rank, "{name} at ({k}, {l})");
            // The block matrix [N | D] is invertible over the ring, so the
            // splitting is a direct sum decomposition, not just a rank count.
            if m_rank > 0 {
                let n_inc = n
                    .inclusion
                    .get(&(k, l))
                    .cloned()
                    .unwrap_or_else(|| Matrix::zero(Ring::Integers, m_rank, 0));
                let d_inc = d
                    .inclusion
                    .get(&(k, l))
                    .cloned()
                    .unwrap_or_else(|| Matrix::zero(Ring::Integers, m_rank, 0));
                let p = n_inc.hstack(&d_inc);
                assert!(
                    p.determinant().abs() == num_rational::BigRational::from_integer(1.into()),
                    "{name}: [N | D] is not unimodular at ({k}, {l})"
                );
                assert!(inverse(&p).is_some());
                // Composite N -> M -> M/D on the chosen bases.
                let q = &r.quotient[&(k, l)];
                assert!(q.mul(&n_inc).is_identity(), "{name} composite at ({k}, {l})");
            }
        }
    }
}

#[test]
fn total_normalized_to_total_moore_is_a_quasi_iso_on_the_window() {
    let w = window(0, 4);
    for (name, x) in corpus::simplicial_corpus(5) {
        let n = normalized(&x);
        let m = moore(&x);
        let inc = DoubleComplexMap::new(n.complex.clone(), m.clone(), n.inclusion.clone())
            .unwrap_or_else(|e| panic!("{name}: inclusion is not a map of double complexes: {e}"));
        let tot_inc = tot_sum_map(&inc, w);
        // Quasi-isomorphism on the window: the top materialized degree of a
        // truncated Moore complex carries truncation garbage by design.
        assert!(is_quasi_iso_on(&tot_inc, w.lo, w.hi), "{name}");
    }
}

#[test]
fn fat_and_thin_realizations_have_the_same_homology() {
    let w = window(0, 4);
    for (name, x) in corpus::simplicial_corpus(5) {
        let fat = fat_realization(&x, w).unwrap();
        let thin = realization(&x, w).unwrap();
        for n in 0..=4 {
            assert_eq!(fat.homology(n), thin.homology(n), "{name} degree {n}");
        }
    }
}

#[test]
fn reduced_quotient_kills_the_degenerate_part() {
    for (name, x) in corpus::simplicial_corpus(3) {
        let d = degenerate_sub(&x);
        let r = reduced_moore(&x);
        for (&(k, l), inc) in &d.inclusion {
            if let Some(q) = r.quotient.get(&(k, l)) {
                assert!(q.mul(inc).is_zero_matrix(), "{name} at ({k}, {l})");
            }
        }
    }
}

#[test]
fn cosimplicial_normalized_and_reduced_routes_agree() {
    let cospan = corpus::cospan();
    let z0 = ChainComplex::concentrated(Ring::Integers, 0, 1);
    let diagrams = vec![
        ("constant", Diagram::constant(cospan.clone(), z0.clone())),
        ("fiber", corpus::cospan_fiber_diagram(2).1),
    ];
    for (name, f) in diagrams {
        let cobar = cobar_cosimplicial(&cospan, &f, 3).unwrap();
        let n = normalized_cosimplicial(&cobar);
        let r = reduced_moore_cosimplicial(&cobar);
        assert_eq!(n.complex, r.complex, "{name}");
        // The quotient composed with the inclusion is the identity.
        for (&(k, l), inc) in &r.inclusion {
            let q = &n.quotient[&(k, l)];
            assert!(q.mul(inc).is_identity(), "{name} at ({k}, {l})");
        }
    }
}

#[test]
fn cosimplicial_totalization_matches_the_reduced_route() {
    // The product totalization of the normalized part agrees with the
    // reduced Moore complex route on homology.
    let cospan = corpus::cospan();
    let z0 = ChainComplex::concentrated(Ring::Integers, 0, 1);
    let f = Diagram::constant(cospan.clone(), z0);
    let cobar = cobar_cosimplicial(&cospan, &f, 2).unwrap();
    let w = window(-2, 1);
    let via_normalized = cosimplicial_totalization(&cobar, w).unwrap();
    let via_reduced =
        hocolim::tot_prod(&reduced_moore_cosimplicial(&cobar).complex, w);
    for n in -2..=1 {
        assert_eq!(via_normalized.homology(n), via_reduced.homology(n), "degree {n}");
    }
}

#[test]
fn constant_cosimplicial_totalizes_to_the_value() {
    let c = ChainComplex::two_term(Ring::Integers, 0, 6);
    let x = constant_cosimplicial(&c, 3);
    let t = cosimplicial_totalization(&x, window(-2, 2)).unwrap();
    for n in -2..=2 {
        assert_eq!(t.homology(n), c.homology(n), "degree {n}");
    }
}

#[test]
fn moore_of_cosimplicial_cobar_has_negative_support() {
    let cospan = corpus::cospan();
    let z0 = ChainComplex::concentrated(Ring::Integers, 0, 1);
    let f = Diagram::constant(cospan.clone(), z0);
    let cobar = cobar_cosimplicial(&cospan, &f, 2).unwrap();
    let m = moore_cosimplicial(&cobar);
    assert!(m.ranks().keys().all(|&(k, _)| (-2..=0).contains(&k)));
    assert_eq!(m.rank(0, 0), 3);
    assert_eq!(m.rank(-1, 0), 5);
    assert_eq!(m.rank(-2, 0), 7);
    // Reduced ranks are the nondegenerate nerve counts: 3, 2, 0.
    let r = reduced_moore_cosimplicial(&cobar);
    assert_eq!(r.complex.rank(0, 0), 3);
    assert_eq!(r.complex.rank(-1, 0), 2);
    assert_eq!(r.complex.rank(-2, 0), 0);
}

#[test]
fn reduced_bar_ranks_are_nondegenerate_nerve_counts() {
    let span = corpus::span();
    let z0 = ChainComplex::concentrated(Ring::Integers, 0, 1);
    let f = Diagram::constant(span.clone(), z0);
    let bar = hocolim::bar_simplicial(&span, &f, 3).unwrap();
    let n = normalized(&bar);
    assert_eq!(n.complex.rank(0, 0), 3);
    assert_eq!(n.complex.rank(1, 0), 2);
    assert_eq!(n.complex.rank(2, 0), 0);
    let d = degenerate_sub(&bar);
    // Degenerate 1-simplices of the nerve are the three identities.
    assert_eq!(d.rank(1, 0), 3);
    let r = reduced_moore(&bar);
    assert_eq!(r.complex.rank(0, 0), 3);
    assert_eq!(r.complex.rank(1, 0), 2);
    assert_eq!(r.complex.rank(2, 0), 0);
}

#[test]
fn cosimplicial_identities_reject_planted_errors() {
    use hocolim::{ChainMap, CosimplicialChainComplex};
    let c = ChainComplex::concentrated(Ring::Integers, 0, 1);
    let levels = vec![c.clone(); 3];
    let mut cofaces: Vec<Vec<ChainMap>> = (1..=2)
        .map(|n: usize| vec![ChainMap::identity(&c); n + 1])
        .collect();
    let mut scale = BTreeMap::new();
    scale.insert(0i64, Matrix::from_int_rows(Ring::Integers, &[&[2]]));
    cofaces[1][1] = ChainMap::new(c.clone(), c.clone(), scale).unwrap();
    let codegens = (1..=2).map(|n: usize| vec![ChainMap::identity(&c); n]).collect();
    let err = CosimplicialChainComplex::new(levels, cofaces, codegens);
    assert!(matches!(err, Err(hocolim::Error::CosimplicialIdentity(_))));
}

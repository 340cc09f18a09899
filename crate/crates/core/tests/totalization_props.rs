//! Homotopical behavior of the totalizations: the direct-sum totalization
//! preserves quasi-isomorphisms of double complexes concentrated in
//! nonnegative horizontal degrees, and the staircase truncations document
//! why the product totalization offers no such guarantee.

use hocolim::corpus;
use hocolim::{is_quasi_iso, tot_prod, tot_sum, tot_sum_map, DegreeWindow, HomologyGroup};

fn window(lo: i64, hi: i64) -> DegreeWindow {
    DegreeWindow::new(lo, hi).unwrap()
}

#[test]
fn sum_totalization_preserves_rowwise_quasi_isos() {
    let mut rng = corpus::seeded_rng(71);
    let w = window(-2, 6);
    for trial in 0..50 {
        let x = corpus::random_double_complex(&mut rng);
        let pad = corpus::horizontal_identity_cone(&corpus::random_double_complex(&mut rng));
        // Alternate inclusions and projections; both are rowwise
        // quasi-isomorphisms because the padding has acyclic rows.
        let f = if trial % 2 == 0 {
            corpus::double_inclusion(&x, &pad)
        } else {
            corpus::double_projection(&x, &pad)
        };
        let tot_f = tot_sum_map(&f, w);
        assert!(is_quasi_iso(&tot_f), "trial {trial}");
    }
}

#[test]
fn sum_totalization_of_rowwise_acyclic_is_acyclic() {
    let mut rng = corpus::seeded_rng(73);
    let w = window(-2, 6);
    for trial in 0..20 {
        let z = corpus::horizontal_identity_cone(&corpus::random_double_complex(&mut rng));
        let tot = tot_sum(&z, w);
        for n in -2..=6 {
            assert!(tot.homology(n).is_trivial(), "trial {trial}, degree {n}");
        }
    }
}

#[test]
fn staircase_truncations_alternate_and_never_stabilize() {
    // Columns of the staircase are acyclic, yet the homology of the product
    // totalization of its truncations flips between Z and 0 forever as the
    // truncation deepens. Without a vanishing precondition, a truncated
    // product totalization certifies nothing.
    let w = window(0, 0);
    for steps in 1..=10usize {
        let x = corpus::staircase(steps);
        if steps % 2 == 0 {
            // Full columns only at even step counts.
            for k in 0..(steps / 2) as i64 {
                assert!(x.column(-k).is_acyclic(), "column {} at {steps} steps", -k);
            }
        }
        let h0 = tot_prod(&x, w).homology(0);
        if steps % 2 == 1 {
            assert_eq!(h0, HomologyGroup::free(1), "{steps} steps");
        } else {
            assert!(h0.is_trivial(), "{steps} steps");
        }
    }
}

#[test]
fn window_stability_for_sum_totalization() {
    let mut rng = corpus::seeded_rng(79);
    for _ in 0..10 {
        let x = corpus::random_double_complex(&mut rng);
        let small = tot_sum(&x, window(0, 2));
        let large = tot_sum(&x, window(-3, 5));
        for n in 0..=2 {
            assert_eq!(small.homology(n), large.homology(n), "degree {n}");
        }
    }
}

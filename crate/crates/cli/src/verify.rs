//! The `verify-props` suite: machine checks of the engine's structural
//! properties, seeded and deterministic, one pass/fail line per property.

use std::fmt::Write;

use hocolim::corpus::{self, RandomComplexSpec};
use hocolim::dold_kan::{degenerate_sub, moore, normalized, reduced_moore};
use hocolim::{
    fat_realization, hocolim_at_level, hocolim_levels_needed, holim, holim_at_level,
    is_quasi_iso_on, kunneth_rhs, realization, tensor, tot_prod, tot_sum_map, ChainComplex,
    DegreeWindow, Diagram, DoubleComplexMap, FiniteSimplicialSet, HomologyGroup, Matrix, Ring,
};

pub struct VerifyOutcome {
    pub text: String,
    pub all_passed: bool,
}

struct Suite {
    text: String,
    all_passed: bool,
}

impl Suite {
    fn record(&mut self, name: &str, failures: Vec<String>, detail: String) {
        if failures.is_empty() {
            writeln!(self.text, "PASS {name} ({detail})").unwrap();
        } else {
            self.all_passed = false;
            writeln!(self.text, "FAIL {name} ({detail})").unwrap();
            for f in failures {
                writeln!(self.text, "  - {f}").unwrap();
            }
        }
    }
}

pub fn verify_props(seed: u64, trials: usize) -> VerifyOutcome {
    let mut suite = Suite { text: String::new(), all_passed: true };
    writeln!(suite.text, "verify-props: seed={seed} trials={trials}").unwrap();
    kunneth(&mut suite, seed, trials);
    normalization_comparison(&mut suite);
    sum_totalization(&mut suite, seed, trials);
    fat_vs_thin(&mut suite);
    window_stability(&mut suite);
    writeln!(
        suite.text,
        "{}",
        if suite.all_passed { "all properties hold" } else { "some properties FAILED" }
    )
    .unwrap();
    VerifyOutcome { text: suite.text, all_passed: suite.all_passed }
}

fn sset_corpus() -> Vec<(&'static str, FiniteSimplicialSet)> {
    vec![
        ("point", FiniteSimplicialSet::simplex(0)),
        ("interval", FiniteSimplicialSet::simplex(1)),
        ("boundary2", FiniteSimplicialSet::boundary(2)),
        ("horn21", FiniteSimplicialSet::horn(2, 1).expect("valid horn")),
        ("circle", FiniteSimplicialSet::circle()),
    ]
}

/// Homology of a tensor with normalized chains against the Kunneth sum.
fn kunneth(suite: &mut Suite, seed: u64, trials: usize) {
    let mut rng = corpus::seeded_rng(seed);
    let spec = RandomComplexSpec::default();
    let mut checks = 0usize;
    let mut failures = Vec::new();
    for trial in 0..trials {
        let c = corpus::random_complex(&spec, &mut rng);
        for (name, k) in sset_corpus() {
            let nk = k
                .normalized_chains(Ring::Integers, k.truncation())
                .expect("corpus truncations are valid");
            let t = tensor(&nk, &c).expect("same ring");
            for n in -4..=7 {
                checks += 1;
                if t.homology(n) != kunneth_rhs(&k, &c, n).expect("free homology") {
                    failures.push(format!("trial {trial}, {name}, degree {n}"));
                }
            }
        }
    }
    suite.record("kunneth", failures, format!("{checks} checks"));
}

/// The composite of the normalized inclusion with the reduced quotient is an
/// isomorphism, the splitting block matrix is unimodular, and the induced
/// map of sum totalizations is a quasi-isomorphism on the window.
fn normalization_comparison(suite: &mut Suite) {
    let w = DegreeWindow::new(0, 3).expect("window");
    let mut objects = 0usize;
    let mut failures = Vec::new();
    for (name, x) in corpus::simplicial_corpus(4) {
        objects += 1;
        let n = normalized(&x);
        let d = degenerate_sub(&x);
        let m = moore(&x);
        let r = reduced_moore(&x);
        for (&(k, l), &m_rank) in m.ranks() {
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
            if n_inc.cols() + d_inc.cols() != m_rank {
                failures.push(format!("{name}: rank additivity fails at ({k}, {l})"));
                continue;
            }
            let p = n_inc.hstack(&d_inc);
            if hocolim::inverse(&p).is_none() {
                failures.push(format!("{name}: [N | D] not invertible at ({k}, {l})"));
            }
            if !r.quotient[&(k, l)].mul(&n_inc).is_identity() {
                failures.push(format!("{name}: composite not the identity at ({k}, {l})"));
            }
        }
        match DoubleComplexMap::new(n.complex.clone(), m.clone(), n.inclusion.clone()) {
            Ok(inc) => {
                if !is_quasi_iso_on(&tot_sum_map(&inc, w), w.lo, w.hi) {
                    failures.push(format!("{name}: total inclusion is not a quasi-iso"));
                }
            }
            Err(e) => failures.push(format!("{name}: inclusion not a map of double complexes: {e}")),
        }
    }
    suite.record("normalization-comparison", failures, format!("{objects} objects"));
}

/// Sum totalization preserves rowwise quasi-isomorphisms; the staircase
/// truncations alternate, demonstrating that the product totalization of a
/// truncation certifies nothing without a vanishing precondition.
fn sum_totalization(suite: &mut Suite, seed: u64, trials: usize) {
    let mut rng = corpus::seeded_rng(seed.wrapping_add(1));
    let w = DegreeWindow::new(-2, 6).expect("window");
    let mut failures = Vec::new();
    for trial in 0..trials {
        let x = corpus::random_double_complex(&mut rng);
        let pad = corpus::horizontal_identity_cone(&corpus::random_double_complex(&mut rng));
        let f = if trial % 2 == 0 {
            corpus::double_inclusion(&x, &pad)
        } else {
            corpus::double_projection(&x, &pad)
        };
        if !is_quasi_iso_on(&tot_sum_map(&f, w), w.lo, w.hi) {
            failures.push(format!("map {trial} not sent to a quasi-iso"));
        }
    }
    let mut alternation_ok = true;
    let w0 = DegreeWindow::new(0, 0).expect("window");
    for steps in 1..=8usize {
        let h0 = tot_prod(&corpus::staircase(steps), w0).homology(0);
        let expected_nonzero = steps % 2 == 1;
        if (h0 == HomologyGroup::free(1)) != expected_nonzero {
            alternation_ok = false;
            failures.push(format!("staircase truncation at {steps} steps"));
        }
    }
    let detail = format!(
        "{trials} maps, staircase alternation {}",
        if alternation_ok { "confirmed" } else { "BROKEN" }
    );
    suite.record("sum-totalization-preserves-quasi-isos", failures, detail);
}

/// Fat and thin realizations have the same homology on the window.
fn fat_vs_thin(suite: &mut Suite) {
    let w = DegreeWindow::new(0, 4).expect("window");
    let mut objects = 0usize;
    let mut failures = Vec::new();
    for (name, x) in corpus::simplicial_corpus(5) {
        objects += 1;
        let fat = fat_realization(&x, w).expect("truncation suffices");
        let thin = realization(&x, w).expect("truncation suffices");
        for n in 0..=4 {
            if fat.homology(n) != thin.homology(n) {
                failures.push(format!("{name} at degree {n}"));
            }
        }
    }
    suite.record("fat-vs-thin", failures, format!("{objects} objects"));
}

/// Recomputing with one extra bar or cobar level leaves the reported
/// homology unchanged.
fn window_stability(suite: &mut Suite) {
    let mut cases = 0usize;
    let mut failures = Vec::new();
    let w = DegreeWindow::new(0, 4).expect("window");
    let z0 = ChainComplex::concentrated(Ring::Integers, 0, 1);
    let hocolim_cases: Vec<(&str, _, Diagram)> = vec![
        ("span-constant", corpus::span(), Diagram::constant(corpus::span(), z0.clone())),
        ("suspension", corpus::span_suspension_diagram().0, corpus::span_suspension_diagram().1),
        ("cofiber2", corpus::span_cofiber_diagram(2).0, corpus::span_cofiber_diagram(2).1),
        (
            "cyclic2-constant",
            corpus::cyclic_group_category(2),
            Diagram::constant(corpus::cyclic_group_category(2), z0.clone()),
        ),
    ];
    for (name, cat, f) in hocolim_cases {
        cases += 1;
        let needed = hocolim_levels_needed(&f, w);
        let base = hocolim_at_level(&cat, &f, w, needed).expect("levels suffice");
        let extra = hocolim_at_level(&cat, &f, w, needed + 1).expect("levels suffice");
        if base.homology != extra.homology {
            failures.push(format!("hocolim {name}"));
        }
    }
    let wl = DegreeWindow::new(-2, 1).expect("window");
    let holim_cases = vec![
        ("fiber2", corpus::cospan_fiber_diagram(2)),
        ("cospan-constant", (corpus::cospan(), Diagram::constant(corpus::cospan(), z0))),
    ];
    for (name, (cat, f)) in holim_cases {
        cases += 1;
        let base = holim(&cat, &f, wl).expect("loop-free");
        let extra = holim_at_level(&cat, &f, wl, base.cobar_levels_used + 1).expect("loop-free");
        if base.homology != extra.homology {
            failures.push(format!("holim {name}"));
        }
    }
    suite.record("window-stability", failures, format!("{cases} cases"));
}

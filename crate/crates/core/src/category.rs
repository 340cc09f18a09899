//! Finite categories, their nerves, and diagrams of chain complexes.
//!
//! Composition is an explicit total table, validated for associativity and
//! identity laws at construction. Nerve simplices are composable chains of
//! morphisms ordered lexicographically by morphism names; that order is the
//! basis order of every bar and cobar level downstream, so it is part of the
//! public contract.

use std::collections::BTreeMap;
use std::fmt;

use crate::chain::{ChainComplex, ChainMap};
use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Morphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    /// `identities[x]` is the index of `id_x`.
    identities: Vec<usize>,
    /// `(f, g) -> g . f` for `target(f) = source(g)`.
    composition: BTreeMap<(usize, usize), usize>,
}

impl FiniteCategory {
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        composition: BTreeMap<(usize, usize), usize>,
    ) -> Result<Self, Error> {
        let cat = FiniteCategory { objects, morphisms, identities, composition };
        cat.check()?;
        Ok(cat)
    }

    fn check(&self) -> Result<(), Error> {
        let law = |msg: String| Err(Error::CategoryLaw(msg));
        if self.identities.len() != self.objects.len() {
            return law("one identity morphism per object is required".into());
        }
        for m in &self.morphisms {
            if m.source >= self.objects.len() || m.target >= self.objects.len() {
                return law(format!("morphism {} has an out-of-range endpoint", m.name));
            }
        }
        for (x, &id) in self.identities.iter().enumerate() {
            let m = self.morphisms.get(id).ok_or_else(|| {
                Error::CategoryLaw(format!("identity of {} is out of range", self.objects[x]))
            })?;
            if m.source != x || m.target != x {
                return law(format!("identity of {} is not an endomorphism", self.objects[x]));
            }
        }
        // Totality and endpoint consistency of the composition table.
        for (f, mf) in self.morphisms.iter().enumerate() {
            for (g, mg) in self.morphisms.iter().enumerate() {
                if mf.target != mg.source {
                    if self.composition.contains_key(&(f, g)) {
                        return law(format!(
                            "table defines {} . {} on a non-composable pair",
                            mg.name, mf.name
                        ));
                    }
                    continue;
                }
                let Some(&h) = self.composition.get(&(f, g)) else {
                    return law(format!("missing composite {} . {}", mg.name, mf.name));
                };
                let mh = &self.morphisms[h];
                if mh.source != mf.source || mh.target != mg.target {
                    return law(format!(
                        "composite {} . {} = {} has wrong endpoints",
                        mg.name, mf.name, mh.name
                    ));
                }
            }
        }
        // Identity laws.
        for (f, mf) in self.morphisms.iter().enumerate() {
            if self.composition[&(self.identities[mf.source], f)] != f {
                return law(format!("{} . id != {}", mf.name, mf.name));
            }
            if self.composition[&(f, self.identities[mf.target])] != f {
                return law(format!("id . {} != {}", mf.name, mf.name));
            }
        }
        // Associativity on all composable triples.
        for (f, mf) in self.morphisms.iter().enumerate() {
            for (g, mg) in self.morphisms.iter().enumerate() {
                if mf.target != mg.source {
                    continue;
                }
                for (h, mh) in self.morphisms.iter().enumerate() {
                    if mg.target != mh.source {
                        continue;
                    }
                    let left = self.composition[&(self.composition[&(f, g)], h)];
                    let right = self.composition[&(f, self.composition[&(g, h)])];
                    if left != right {
                        return law(format!(
                            "associativity fails on ({}, {}, {})",
                            mf.name, mg.name, mh.name
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphism(&self, m: usize) -> &Morphism {
        &self.morphisms[m]
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn identity_of(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.identities.contains(&m)
    }

    /// `g . f`, defined when `target(f) = source(g)`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.composition.get(&(f, g)).copied()
    }
}

/// A composable chain of morphisms; the empty chain remembers its object.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct NerveSimplex {
    object: usize,
    morphisms: Vec<usize>,
}

impl NerveSimplex {
    pub fn of_object(object: usize) -> Self {
        NerveSimplex { object, morphisms: Vec::new() }
    }

    pub fn new(cat: &FiniteCategory, morphisms: Vec<usize>) -> Self {
        assert!(!morphisms.is_empty());
        debug_assert!(morphisms
            .windows(2)
            .all(|w| cat.morphism(w[0]).target == cat.morphism(w[1]).source));
        NerveSimplex { object: cat.morphism(morphisms[0]).source, morphisms }
    }

    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    pub fn morphisms(&self) -> &[usize] {
        &self.morphisms
    }

    /// The chain's starting object `f(0)`.
    pub fn start(&self) -> usize {
        self.object
    }

    /// The chain's final object `f(n)`.
    pub fn end(&self, cat: &FiniteCategory) -> usize {
        self.morphisms.last().map_or(self.object, |&m| cat.morphism(m).target)
    }

    /// A nerve simplex is degenerate exactly when some entry is an identity.
    pub fn is_degenerate(&self, cat: &FiniteCategory) -> bool {
        self.morphisms.iter().any(|&m| cat.is_identity(m))
    }
}

/// All length-`n` composable chains, ordered lexicographically by morphism
/// names (level zero: the objects, by name).
pub fn nerve_simplices(cat: &FiniteCategory, n: usize) -> Vec<NerveSimplex> {
    if n == 0 {
        let mut objs: Vec<usize> = (0..cat.object_count()).collect();
        objs.sort_by(|&a, &b| cat.object_name(a).cmp(cat.object_name(b)));
        return objs.into_iter().map(NerveSimplex::of_object).collect();
    }
    let mut by_name: Vec<usize> = (0..cat.morphism_count()).collect();
    by_name.sort_by(|&a, &b| cat.morphism(a).name.cmp(&cat.morphism(b).name));
    let mut out = Vec::new();
    let mut chain = Vec::new();
    fn extend(
        cat: &FiniteCategory,
        by_name: &[usize],
        chain: &mut Vec<usize>,
        n: usize,
        out: &mut Vec<NerveSimplex>,
    ) {
        if chain.len() == n {
            out.push(NerveSimplex::new(cat, chain.clone()));
            return;
        }
        for &m in by_name {
            if let Some(&last) = chain.last() {
                if cat.morphism(last).target != cat.morphism(m).source {
                    continue;
                }
            }
            chain.push(m);
            extend(cat, by_name, chain, n, out);
            chain.pop();
        }
    }
    extend(cat, &by_name, &mut chain, n, &mut out);
    out
}

/// A category is loop-free when its nonidentity morphisms form an acyclic
/// graph on the objects and no object carries a nonidentity endomorphism.
/// Equivalently, the nerve has nondegenerate simplices only up to a finite
/// dimension (at most `object_count - 1`).
pub fn is_loop_free(cat: &FiniteCategory) -> bool {
    for m in 0..cat.morphism_count() {
        let mor = cat.morphism(m);
        if mor.source == mor.target && !cat.is_identity(m) {
            return false;
        }
    }
    // Depth-first cycle detection on the nonidentity arrow graph.
    let n = cat.object_count();
    let mut adj = vec![Vec::new(); n];
    for m in 0..cat.morphism_count() {
        if !cat.is_identity(m) {
            let mor = cat.morphism(m);
            adj[mor.source].push(mor.target);
        }
    }
    let mut state = vec![0u8; n]; // 0 unvisited, 1 active, 2 done
    fn dfs(v: usize, adj: &[Vec<usize>], state: &mut [u8]) -> bool {
        state[v] = 1;
        for &w in &adj[v] {
            if state[w] == 1 || (state[w] == 0 && !dfs(w, adj, state)) {
                return false;
            }
        }
        state[v] = 2;
        true
    }
    (0..n).all(|v| state[v] != 0 || dfs(v, &adj, &mut state))
}

/// A witness of a nonidentity loop, for error messages.
pub fn loop_witness(cat: &FiniteCategory) -> Option<String> {
    for m in 0..cat.morphism_count() {
        let mor = cat.morphism(m);
        if mor.source == mor.target && !cat.is_identity(m) {
            return Some(format!(
                "nonidentity endomorphism {} of {}",
                mor.name,
                cat.object_name(mor.source)
            ));
        }
    }
    (!is_loop_free(cat)).then(|| "a directed cycle of nonidentity morphisms".to_string())
}

/// A functor from a finite category to chain complexes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Diagram {
    index: FiniteCategory,
    on_objects: Vec<ChainComplex>,
    on_morphisms: Vec<ChainMap>,
}

impl Diagram {
    /// Builds a diagram and checks functoriality.
    pub fn new(
        index: FiniteCategory,
        on_objects: Vec<ChainComplex>,
        on_morphisms: Vec<ChainMap>,
    ) -> Result<Self, Error> {
        let d = Diagram::unvalidated(index, on_objects, on_morphisms);
        let violations = validate(&d);
        if violations.is_empty() {
            Ok(d)
        } else {
            Err(Error::InvalidDiagram(violations))
        }
    }

    /// Assembles the data without checking functoriality; used to exercise
    /// [`validate`] on broken inputs.
    pub fn unvalidated(
        index: FiniteCategory,
        on_objects: Vec<ChainComplex>,
        on_morphisms: Vec<ChainMap>,
    ) -> Self {
        assert_eq!(on_objects.len(), index.object_count());
        assert_eq!(on_morphisms.len(), index.morphism_count());
        Diagram { index, on_objects, on_morphisms }
    }

    /// The constant diagram at `c`.
    pub fn constant(index: FiniteCategory, c: ChainComplex) -> Self {
        let on_objects = vec![c.clone(); index.object_count()];
        let on_morphisms = (0..index.morphism_count()).map(|_| ChainMap::identity(&c)).collect();
        Diagram { index, on_objects, on_morphisms }
    }

    pub fn index(&self) -> &FiniteCategory {
        &self.index
    }

    pub fn on_object(&self, x: usize) -> &ChainComplex {
        &self.on_objects[x]
    }

    pub fn on_morphism(&self, m: usize) -> &ChainMap {
        &self.on_morphisms[m]
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    /// `F(m)` does not run between `F(source)` and `F(target)`.
    Endpoints { morphism: String },
    /// `F(id_x)` is not the identity.
    Identity { object: String },
    /// `F(g . f) != F(g) . F(f)` on the named pair.
    Composition { first: String, second: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Endpoints { morphism } => {
                write!(f, "value on {morphism} does not match the values on its endpoints")
            }
            Violation::Identity { object } => {
                write!(f, "value on the identity of {object} is not the identity map")
            }
            Violation::Composition { first, second } => {
                write!(f, "functoriality fails on the pair ({first}, {second})")
            }
        }
    }
}

pub(crate) fn render_violations(violations: &[Violation]) -> String {
    violations.iter().map(|v| format!("  - {v}")).collect::<Vec<_>>().join("\n")
}

/// Reports every functoriality failure of the diagram; empty means valid.
pub fn validate(d: &Diagram) -> Vec<Violation> {
    let mut out = Vec::new();
    let cat = d.index();
    for m in 0..cat.morphism_count() {
        let mor = cat.morphism(m);
        let f = d.on_morphism(m);
        if f.source() != d.on_object(mor.source) || f.target() != d.on_object(mor.target) {
            out.push(Violation::Endpoints { morphism: mor.name.clone() });
        }
    }
    if !out.is_empty() {
        // Composite comparisons below assume endpoints line up.
        return out;
    }
    for x in 0..cat.object_count() {
        let id = d.on_morphism(cat.identity_of(x));
        if id != &ChainMap::identity(d.on_object(x)) {
            out.push(Violation::Identity { object: cat.object_name(x).to_string() });
        }
    }
    for f in 0..cat.morphism_count() {
        for g in 0..cat.morphism_count() {
            let Some(h) = cat.compose(g, f) else { continue };
            let composite = d
                .on_morphism(g)
                .compose(d.on_morphism(f))
                .expect("endpoints checked above");
            if &composite != d.on_morphism(h) {
                out.push(Violation::Composition {
                    first: cat.morphism(f).name.clone(),
                    second: cat.morphism(g).name.clone(),
                });
            }
        }
    }
    out
}

/// Builder that fills in identities and identity-composites, leaving only the
/// genuinely new composites to the caller.
pub struct CategoryBuilder {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    composites: BTreeMap<(usize, usize), usize>,
}

impl CategoryBuilder {
    pub fn new(objects: &[&str]) -> Self {
        let objects: Vec<String> = objects.iter().map(|s| s.to_string()).collect();
        let morphisms = objects
            .iter()
            .enumerate()
            .map(|(x, name)| Morphism { name: format!("id_{name}"), source: x, target: x })
            .collect();
        CategoryBuilder { objects, morphisms, composites: BTreeMap::new() }
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn morphism(&mut self, name: &str, source: &str, target: &str) -> Result<usize, Error> {
        let source = self
            .object_index(source)
            .ok_or_else(|| Error::CategoryLaw(format!("unknown object {source}")))?;
        let target = self
            .object_index(target)
            .ok_or_else(|| Error::CategoryLaw(format!("unknown object {target}")))?;
        if self.morphism_index(name).is_some() {
            return Err(Error::CategoryLaw(format!("duplicate morphism name {name}")));
        }
        self.morphisms.push(Morphism { name: name.to_string(), source, target });
        Ok(self.morphisms.len() - 1)
    }

    /// Declares `second . first = result` for nonidentity composites.
    pub fn composite(&mut self, second: &str, first: &str, result: &str) -> Result<(), Error> {
        let lookup = |n: &str| {
            self.morphism_index(n)
                .ok_or_else(|| Error::CategoryLaw(format!("unknown morphism {n}")))
        };
        let (g, f, h) = (lookup(second)?, lookup(first)?, lookup(result)?);
        self.composites.insert((f, g), h);
        Ok(())
    }

    pub fn build(self) -> Result<FiniteCategory, Error> {
        let identities: Vec<usize> = (0..self.objects.len()).collect();
        let mut composition = self.composites;
        for (f, mf) in self.morphisms.iter().enumerate() {
            composition.entry((f, identities[mf.target])).or_insert(f);
            composition.entry((identities[mf.source], f)).or_insert(f);
        }
        FiniteCategory::new(self.objects, self.morphisms, identities, composition)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::ring::Ring;

    #[test]
    fn span_nerve_counts() {
        let span = corpus::span();
        assert_eq!(nerve_simplices(&span, 0).len(), 3);
        assert_eq!(nerve_simplices(&span, 1).len(), 5);
        assert_eq!(nerve_simplices(&span, 2).len(), 7);
    }

    #[test]
    fn cyclic_group_nerve_counts() {
        let b2 = corpus::cyclic_group_category(2);
        for n in 0..5 {
            assert_eq!(nerve_simplices(&b2, n).len(), 2usize.pow(n as u32).max(1));
        }
        let b3 = corpus::cyclic_group_category(3);
        assert_eq!(nerve_simplices(&b3, 2).len(), 9);
    }

    #[test]
    fn nerve_level_zero_is_the_objects() {
        let poset = corpus::poset_chain(3);
        assert_eq!(nerve_simplices(&poset, 0).len(), 3);
    }

    #[test]
    fn loop_freeness() {
        assert!(is_loop_free(&corpus::span()));
        assert!(is_loop_free(&corpus::cospan()));
        assert!(is_loop_free(&corpus::poset_chain(3)));
        assert!(!is_loop_free(&corpus::cyclic_group_category(2)));
        assert!(loop_witness(&corpus::cyclic_group_category(2))
            .unwrap()
            .contains("endomorphism"));
    }

    #[test]
    fn loop_free_bounds_nondegenerate_nerve_dimension() {
        for cat in [corpus::span(), corpus::cospan(), corpus::poset_chain(4)] {
            assert!(is_loop_free(&cat));
            let bound = cat.object_count() - 1;
            for n in bound + 1..=bound + 2 {
                assert!(
                    nerve_simplices(&cat, n).iter().all(|c| c.is_degenerate(&cat)),
                    "nondegenerate {n}-chain in a loop-free category"
                );
            }
        }
    }

    #[test]
    fn nerve_count_matches_brute_force_pair_table() {
        // Composability is the only constraint: count chains directly.
        for cat in [corpus::span(), corpus::cospan(), corpus::poset_chain(3)] {
            for n in 1..=3usize {
                let brute = {
                    let mut count = 0usize;
                    let total = cat.morphism_count();
                    let mut stack = vec![Vec::<usize>::new()];
                    while let Some(chain) = stack.pop() {
                        if chain.len() == n {
                            count += 1;
                            continue;
                        }
                        for m in 0..total {
                            if chain
                                .last()
                                .map_or(true, |&l| cat.morphism(l).target == cat.morphism(m).source)
                            {
                                let mut next = chain.clone();
                                next.push(m);
                                stack.push(next);
                            }
                        }
                    }
                    count
                };
                assert_eq!(nerve_simplices(&cat, n).len(), brute);
            }
        }
    }

    #[test]
    fn category_law_violations_are_caught() {
        // Missing composite.
        let mut b = CategoryBuilder::new(&["a", "b", "c"]);
        b.morphism("f", "a", "b").unwrap();
        b.morphism("g", "b", "c").unwrap();
        assert!(matches!(b.build(), Err(Error::CategoryLaw(_))));
        // Wrong endpoints for a declared composite.
        let mut b = CategoryBuilder::new(&["a", "b", "c"]);
        b.morphism("f", "a", "b").unwrap();
        b.morphism("g", "b", "c").unwrap();
        b.composite("g", "f", "id_a").unwrap();
        assert!(matches!(b.build(), Err(Error::CategoryLaw(_))));
    }

    #[test]
    fn diagram_validation_reports_witnesses() {
        let span = corpus::span();
        let c = ChainComplex::concentrated(Ring::Integers, 0, 1);
        let ok = Diagram::constant(span.clone(), c.clone());
        assert!(validate(&ok).is_empty());

        // Plant a wrong identity component: F(id_a) = 0.
        let mut on_morphisms: Vec<ChainMap> =
            (0..span.morphism_count()).map(|_| ChainMap::identity(&c)).collect();
        let a = span.object_index("a").unwrap();
        on_morphisms[span.identity_of(a)] = ChainMap::zero(&c, &c);
        let broken = Diagram::unvalidated(span.clone(), vec![c.clone(); 3], on_morphisms);
        let violations = validate(&broken);
        assert!(violations.contains(&Violation::Identity { object: "a".into() }));
    }

    #[test]
    fn planted_composition_failure_names_the_pair() {
        // Poset 0 -> 1 -> 2 with F(f12 . f01) != F(f12) . F(f01).
        let poset = corpus::poset_chain(3);
        let c = ChainComplex::concentrated(Ring::Integers, 0, 1);
        let times = |k: i64| {
            let mut components = BTreeMap::new();
            components.insert(0, crate::matrix::Matrix::from_int_rows(Ring::Integers, &[&[k]]));
            ChainMap::new(c.clone(), c.clone(), components).unwrap()
        };
        let mut on_morphisms: Vec<ChainMap> =
            (0..poset.morphism_count()).map(|_| ChainMap::identity(&c)).collect();
        on_morphisms[poset.morphism_index("f01").unwrap()] = times(2);
        on_morphisms[poset.morphism_index("f12").unwrap()] = times(3);
        on_morphisms[poset.morphism_index("f02").unwrap()] = times(5);
        let broken = Diagram::unvalidated(poset, vec![c.clone(); 3], on_morphisms);
        let violations = validate(&broken);
        assert_eq!(
            violations,
            vec![Violation::Composition { first: "f01".into(), second: "f12".into() }]
        );
    }
}

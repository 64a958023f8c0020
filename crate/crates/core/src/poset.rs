//! Finite posets presented by cover relations.
//!
//! A [`Poset`] is built from element names plus arbitrary order pairs
//! `(lower, upper)`; construction rejects duplicate names, unknown names and
//! cycles, then stores the transitive reduction (the Hasse diagram), the
//! strict-order closure and element heights. Element identity is positional
//! ([`ElemId`] is the index in declaration order), with name lookups layered
//! on top.

use std::collections::HashMap;

use crate::{Error, Result};

/// Index of an element in declaration order.
pub type ElemId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    index: HashMap<String, ElemId>,
    /// Cover pairs `(lower, upper)`, transitively reduced, sorted.
    covers: Vec<(ElemId, ElemId)>,
    lower: Vec<Vec<ElemId>>,
    upper: Vec<Vec<ElemId>>,
    /// Flat `n * n` matrix; `strict[a * n + b]` iff `a < b`.
    strict: Vec<bool>,
    /// Length of a longest chain ending at the element.
    height: Vec<usize>,
}

impl Poset {
    /// Builds a poset from element names and order pairs. The pairs may be
    /// any generating set of the order; redundant pairs are dropped and only
    /// covers are kept.
    pub fn new<S: AsRef<str>>(elements: &[S], relations: &[(S, S)]) -> Result<Self> {
        let mut names = Vec::with_capacity(elements.len());
        let mut index = HashMap::new();
        for e in elements {
            let name = e.as_ref().to_string();
            if index.insert(name.clone(), names.len()).is_some() {
                return Err(Error::DuplicateElement(name));
            }
            names.push(name);
        }
        let n = names.len();

        let mut edges: Vec<(ElemId, ElemId)> = Vec::with_capacity(relations.len());
        for (lo, hi) in relations {
            let find = |s: &S| {
                index
                    .get(s.as_ref())
                    .copied()
                    .ok_or_else(|| Error::UnknownElementInCover(s.as_ref().to_string()))
            };
            edges.push((find(lo)?, find(hi)?));
        }
        edges.sort_unstable();
        edges.dedup();

        let topo = topo_sort(n, &edges, &names)?;

        // Strict closure, filled against topological order so that each
        // edge target is already complete.
        let mut out = vec![Vec::new(); n];
        for &(lo, hi) in &edges {
            out[lo].push(hi);
        }
        let mut strict = vec![false; n * n];
        for &v in topo.iter().rev() {
            for i in 0..out[v].len() {
                let w = out[v][i];
                strict[v * n + w] = true;
                for u in 0..n {
                    if strict[w * n + u] {
                        strict[v * n + u] = true;
                    }
                }
            }
        }

        // Transitive reduction: an edge is a cover iff nothing sits strictly
        // between its endpoints.
        let covers: Vec<(ElemId, ElemId)> = edges
            .iter()
            .copied()
            .filter(|&(lo, hi)| !(0..n).any(|w| strict[lo * n + w] && strict[w * n + hi]))
            .collect();

        let mut lower = vec![Vec::new(); n];
        let mut upper = vec![Vec::new(); n];
        for &(lo, hi) in &covers {
            lower[hi].push(lo);
            upper[lo].push(hi);
        }

        let mut height = vec![0usize; n];
        for &v in &topo {
            height[v] = lower[v].iter().map(|&q| height[q] + 1).max().unwrap_or(0);
        }

        Ok(Poset {
            names,
            index,
            covers,
            lower,
            upper,
            strict,
            height,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn element(&self, id: ElemId) -> &str {
        &self.names[id]
    }

    pub fn elements(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(|s| s.as_str())
    }

    pub fn index_of(&self, name: &str) -> Result<ElemId> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    /// Cover pairs `(lower, upper)` in sorted order.
    pub fn covers(&self) -> &[(ElemId, ElemId)] {
        &self.covers
    }

    /// Elements covered by `p` (immediate predecessors).
    pub fn lower_covers(&self, p: ElemId) -> &[ElemId] {
        &self.lower[p]
    }

    /// Elements covering `p` (immediate successors).
    pub fn upper_covers(&self, p: ElemId) -> &[ElemId] {
        &self.upper[p]
    }

    /// Strict comparison `a < b`.
    pub fn less(&self, a: ElemId, b: ElemId) -> bool {
        self.strict[a * self.len() + b]
    }

    pub fn leq(&self, a: ElemId, b: ElemId) -> bool {
        a == b || self.less(a, b)
    }

    pub fn less_by_name(&self, a: &str, b: &str) -> Result<bool> {
        Ok(self.less(self.index_of(a)?, self.index_of(b)?))
    }

    /// Length of a longest chain ending at `p` (minimal elements have
    /// height 0).
    pub fn height(&self, p: ElemId) -> usize {
        self.height[p]
    }

    pub fn minimal_elements(&self) -> Vec<ElemId> {
        (0..self.len()).filter(|&p| self.lower[p].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<ElemId> {
        (0..self.len()).filter(|&p| self.upper[p].is_empty()).collect()
    }

    /// All elements sorted by `(height, declaration index)`. This is a linear
    /// extension: every element appears after everything below it.
    pub fn linear_extension(&self) -> Vec<ElemId> {
        let mut order: Vec<ElemId> = (0..self.len()).collect();
        order.sort_by_key(|&p| (self.height[p], p));
        order
    }
}

/// Kahn's algorithm; error names an element on a cycle.
fn topo_sort(n: usize, edges: &[(ElemId, ElemId)], names: &[String]) -> Result<Vec<ElemId>> {
    let mut indeg = vec![0usize; n];
    let mut out = vec![Vec::new(); n];
    for &(lo, hi) in edges {
        indeg[hi] += 1;
        out[lo].push(hi);
    }
    let mut queue: Vec<ElemId> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut topo = Vec::with_capacity(n);
    while let Some(v) = queue.pop() {
        topo.push(v);
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push(w);
            }
        }
    }
    if topo.len() != n {
        let stuck = (0..n).find(|&v| indeg[v] > 0).expect("cycle leaves positive indegree");
        return Err(Error::CycleDetected(names[stuck].clone()));
    }
    Ok(topo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diamond() -> Poset {
        // a below b and c, both below d, plus the redundant pair (a, d).
        Poset::new(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d"), ("a", "d")],
        )
        .unwrap()
    }

    #[test]
    fn reduction_drops_implied_pairs() {
        let p = diamond();
        assert_eq!(p.covers(), &[(0, 1), (0, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn chain_given_with_shortcut() {
        let p = Poset::new(&["x", "y", "z"], &[("x", "y"), ("y", "z"), ("x", "z")]).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
        assert!(p.less_by_name("x", "z").unwrap());
    }

    #[test]
    fn closure_is_strict_partial_order() {
        let p = diamond();
        for a in 0..p.len() {
            assert!(!p.less(a, a));
            for b in 0..p.len() {
                assert!(!(p.less(a, b) && p.less(b, a)));
            }
        }
        assert!(p.less(0, 3));
        assert!(!p.less(1, 2));
    }

    #[test]
    fn heights_and_extremals() {
        let p = diamond();
        assert_eq!((0..4).map(|v| p.height(v)).collect::<Vec<_>>(), vec![0, 1, 1, 2]);
        assert_eq!(p.minimal_elements(), vec![0]);
        assert_eq!(p.maximal_elements(), vec![3]);
        let singleton = Poset::new(&["s"], &[]).unwrap();
        assert_eq!(singleton.height(0), 0);
    }

    #[test]
    fn linear_extension_sorts_by_height_then_index() {
        let p = Poset::new(
            &["top", "mid", "bot", "side"],
            &[("bot", "mid"), ("mid", "top"), ("bot", "side")],
        )
        .unwrap();
        // heights: top 2, mid 1, bot 0, side 1.
        assert_eq!(p.linear_extension(), vec![2, 1, 3, 0]);
    }

    #[test]
    fn duplicate_element_rejected() {
        assert_eq!(
            Poset::new(&["a", "a"], &[]),
            Err(Error::DuplicateElement("a".into()))
        );
    }

    #[test]
    fn unknown_cover_endpoint_rejected() {
        assert_eq!(
            Poset::new(&["a"], &[("a", "b")]),
            Err(Error::UnknownElementInCover("b".into()))
        );
    }

    #[test]
    fn cycles_rejected() {
        let err = Poset::new(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, Error::CycleDetected(_)));
        let err = Poset::new(&["a"], &[("a", "a")]).unwrap_err();
        assert_eq!(err, Error::CycleDetected("a".into()));
    }

    #[test]
    fn unknown_element_lookup() {
        let p = diamond();
        assert_eq!(p.index_of("zz"), Err(Error::UnknownElement("zz".into())));
        assert!(p.less_by_name("zz", "a").is_err());
    }

    /// Random DAG on up to 7 nodes as (n, forward edge bits).
    fn dag_strategy() -> impl Strategy<Value = (usize, Vec<bool>)> {
        (1usize..=7).prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (Just(n), proptest::collection::vec(any::<bool>(), pairs))
        })
    }

    fn build_dag(n: usize, bits: &[bool]) -> Poset {
        let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
        let mut rel = Vec::new();
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if bits[k] {
                    rel.push((names[i].clone(), names[j].clone()));
                }
                k += 1;
            }
        }
        let rel_refs: Vec<(String, String)> = rel;
        Poset::new(&names, &rel_refs).unwrap()
    }

    proptest! {
        #[test]
        fn closure_transitive_on_random_dags((n, bits) in dag_strategy()) {
            let p = build_dag(n, &bits);
            for a in 0..n {
                prop_assert!(!p.less(a, a));
                for b in 0..n {
                    for c in 0..n {
                        if p.less(a, b) && p.less(b, c) {
                            prop_assert!(p.less(a, c));
                        }
                    }
                }
            }
        }

        #[test]
        fn rebuilding_from_covers_is_identity((n, bits) in dag_strategy()) {
            let p = build_dag(n, &bits);
            let names: Vec<String> = p.elements().map(String::from).collect();
            let covers: Vec<(String, String)> = p
                .covers()
                .iter()
                .map(|&(lo, hi)| (names[lo].clone(), names[hi].clone()))
                .collect();
            let q = Poset::new(&names, &covers).unwrap();
            prop_assert_eq!(p, q);
        }

        #[test]
        fn height_steps_by_one_along_some_cover((n, bits) in dag_strategy()) {
            let p = build_dag(n, &bits);
            for v in 0..n {
                if p.height(v) > 0 {
                    prop_assert!(p
                        .lower_covers(v)
                        .iter()
                        .any(|&q| p.height(q) + 1 == p.height(v)));
                }
            }
        }
    }
}

//! Posets with marked elements and rational marking values.
//!
//! The marked set must contain every minimal and maximal element, so each
//! unmarked element is sandwiched between marked ones; that is what keeps
//! both polytopes bounded. Marking values are arbitrary exact rationals and
//! are *not* required to respect the order: incompatible values are legal
//! and simply produce empty polytopes (callers can surface
//! [`MarkedPoset::incompatible_adjacent_marks`] as a warning).

use num_traits::One;

use crate::poset::{ElemId, Poset};
use crate::{Error, Rat, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedPoset {
    poset: Poset,
    /// Marking value per element, `None` for unmarked.
    mark: Vec<Option<Rat>>,
    /// Unmarked elements in declaration order; these index polytope
    /// coordinates everywhere in the crate.
    free: Vec<ElemId>,
    /// Inverse of `free`.
    free_pos: Vec<Option<usize>>,
}

/// A saturated chain `lower < i_1 < ... < i_k < upper` whose endpoints are
/// marked and whose interior is unmarked and nonempty. Each such chain
/// contributes one inequality to the chain polytope.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MarkedChain {
    pub lower: ElemId,
    pub interior: Vec<ElemId>,
    pub upper: ElemId,
}

impl MarkedPoset {
    /// Attaches marking values to a poset. `marks` lists each marked element
    /// exactly once; every extremal element of the poset must appear.
    pub fn new<S: AsRef<str>>(poset: Poset, marks: &[(S, Rat)]) -> Result<Self> {
        let mut mark: Vec<Option<Rat>> = vec![None; poset.len()];
        for (name, value) in marks {
            let id = poset
                .index_of(name.as_ref())
                .map_err(|_| Error::MarkingDomainMismatch(format!("`{}` is not an element", name.as_ref())))?;
            if mark[id].is_some() {
                return Err(Error::MarkingDomainMismatch(format!(
                    "`{}` is marked twice",
                    name.as_ref()
                )));
            }
            mark[id] = Some(value.clone());
        }
        for id in poset.minimal_elements().into_iter().chain(poset.maximal_elements()) {
            if mark[id].is_none() {
                return Err(Error::ExtremalNotMarked(poset.element(id).to_string()));
            }
        }
        let free: Vec<ElemId> = (0..poset.len()).filter(|&p| mark[p].is_none()).collect();
        let mut free_pos = vec![None; poset.len()];
        for (i, &p) in free.iter().enumerate() {
            free_pos[p] = Some(i);
        }
        Ok(MarkedPoset {
            poset,
            mark,
            free,
            free_pos,
        })
    }

    /// Classical embedding of a plain poset: adjoin a new bottom marked 0 and
    /// a new top marked 1. The order and chain polytopes of the result are
    /// Stanley's order and chain polytopes of the input.
    pub fn stanley_embedding(p: &Poset) -> Self {
        let fresh = |base: &str| {
            let mut name = base.to_string();
            while p.index_of(&name).is_ok() {
                name.insert(0, '_');
            }
            name
        };
        let bot = fresh("0hat");
        let top = fresh("1hat");
        let mut elements: Vec<String> = p.elements().map(String::from).collect();
        elements.push(bot.clone());
        elements.push(top.clone());
        let mut relations: Vec<(String, String)> = p
            .covers()
            .iter()
            .map(|&(lo, hi)| (p.element(lo).to_string(), p.element(hi).to_string()))
            .collect();
        for q in p.minimal_elements() {
            relations.push((bot.clone(), p.element(q).to_string()));
        }
        for q in p.maximal_elements() {
            relations.push((p.element(q).to_string(), top.clone()));
        }
        if p.is_empty() {
            relations.push((bot.clone(), top.clone()));
        }
        let poset = Poset::new(&elements, &relations).expect("embedding preserves acyclicity");
        MarkedPoset::new(poset, &[(bot, Rat::from_integer(0.into())), (top, Rat::one())])
            .expect("fresh bottom and top are the only extremals")
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn is_marked(&self, p: ElemId) -> bool {
        self.mark[p].is_some()
    }

    pub fn mark(&self, p: ElemId) -> Option<&Rat> {
        self.mark[p].as_ref()
    }

    /// Unmarked elements in declaration order: the polytope coordinates.
    pub fn free_elements(&self) -> &[ElemId] {
        &self.free
    }

    /// Coordinate position of an unmarked element.
    pub fn free_index(&self, p: ElemId) -> Option<usize> {
        self.free_pos[p]
    }

    pub fn free_names(&self) -> Vec<&str> {
        self.free.iter().map(|&p| self.poset.element(p)).collect()
    }

    pub fn marked_elements(&self) -> Vec<ElemId> {
        (0..self.poset.len()).filter(|&p| self.is_marked(p)).collect()
    }

    pub fn integral_marking(&self) -> bool {
        self.mark
            .iter()
            .flatten()
            .all(|v| v.is_integer())
    }

    /// Scales every marking value by `n`. The order polytope of the result is
    /// the `n`-fold dilation of the original, and likewise for the chain
    /// polytope.
    pub fn dilate(&self, n: u64) -> Self {
        let factor = Rat::from_integer(n.into());
        let mut out = self.clone();
        for v in out.mark.iter_mut().flatten() {
            *v *= factor.clone();
        }
        out
    }

    /// All saturated chains with marked endpoints and nonempty unmarked
    /// interior, sorted by `(lower, interior, upper)` element indices.
    pub fn marked_chains(&self) -> Vec<MarkedChain> {
        let mut chains = Vec::new();
        let mut interior = Vec::new();
        for a in self.marked_elements() {
            for &u in self.poset.upper_covers(a) {
                if !self.is_marked(u) {
                    interior.push(u);
                    self.extend_chain(a, &mut interior, &mut chains);
                    interior.pop();
                }
            }
        }
        chains.sort();
        chains
    }

    fn extend_chain(&self, lower: ElemId, interior: &mut Vec<ElemId>, out: &mut Vec<MarkedChain>) {
        let top = *interior.last().expect("interior nonempty");
        for &v in self.poset.upper_covers(top) {
            if self.is_marked(v) {
                out.push(MarkedChain {
                    lower,
                    interior: interior.clone(),
                    upper: v,
                });
            } else {
                interior.push(v);
                self.extend_chain(lower, interior, out);
                interior.pop();
            }
        }
    }

    /// Marked pairs `a < b` with no unmarked element strictly between them
    /// whose values run against the order (`λ_a > λ_b`). These never
    /// generate an inequality, so they deserve a warning: the polytopes can
    /// disagree with the fully-expanded definitions there.
    pub fn incompatible_adjacent_marks(&self) -> Vec<(ElemId, ElemId)> {
        let marked = self.marked_elements();
        let mut out = Vec::new();
        for &a in &marked {
            for &b in &marked {
                if self.poset.less(a, b)
                    && self.mark[a] > self.mark[b]
                    && !self
                        .free
                        .iter()
                        .any(|&p| self.poset.less(a, p) && self.poset.less(p, b))
                {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

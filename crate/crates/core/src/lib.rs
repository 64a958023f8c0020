//! Exact arithmetic for marked poset polytopes.
//!
//! A *marked poset* is a finite poset `P` together with a subset `A` of
//! marked elements containing every minimal and maximal element, and a
//! rational value for each marked element. Two polytopes live over the
//! unmarked coordinates `P - A`:
//!
//! * the *order polytope*: points weakly monotone along the order, pinned
//!   to the marking values at marked neighbors;
//! * the *chain polytope*: nonnegative points whose sums along saturated
//!   chains between marked elements stay below the marking differences.
//!
//! The two are related by a piecewise-linear transfer bijection
//! ([`transfer::forward`] / [`transfer::back`]) that restricts to a
//! bijection of `(1/m)`-grid points whenever the marking is integral, so
//! both polytopes share one Ehrhart polynomial. Everything here is exact:
//! coordinates and marking values are arbitrary-precision rationals, counts
//! are integers, and Ehrhart coefficients come from exact interpolation.
//!
//! [`lie`] builds the classical instances: Gelfand-Tsetlin boards for
//! `gl_n`, their chain-side counterparts cut out by Dyck paths, and the
//! symplectic/odd-orthogonal boards, all checked against the Weyl dimension
//! formula.
//!
//! ```
//! use posetope::{MarkedPoset, Poset, polytope, rat};
//!
//! let poset = Poset::new(&["bot", "x", "top"], &[("bot", "x"), ("x", "top")]).unwrap();
//! let marked = MarkedPoset::new(poset, &[("bot", rat(0)), ("top", rat(2))]).unwrap();
//! assert_eq!(polytope::count_order_points(&marked, 1), 3); // x in {0, 1, 2}
//! assert_eq!(polytope::count_chain_points(&marked, 1), 3);
//! ```

pub mod cli;
pub mod lie;
pub mod marked;
pub mod polytope;
pub mod poset;
pub mod transfer;

pub use marked::{MarkedChain, MarkedPoset};
pub use polytope::{EhrhartPolynomial, GridVector, IneqSystem, PolytopeKind};
pub use poset::{ElemId, Poset};

/// Exact rational scalar used throughout: arbitrary-precision numerator and
/// denominator, always kept in lowest terms by `num`.
pub type Rat = num_rational::BigRational;

/// Shorthand for an integer-valued [`Rat`].
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Shorthand for the exact fraction `n/d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}` in cover relation")]
    UnknownElementInCover(String),
    #[error("cover relations contain a cycle through `{0}`")]
    CycleDetected(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("extremal element `{0}` is not marked")]
    ExtremalNotMarked(String),
    #[error("bad marking domain: {0}")]
    MarkingDomainMismatch(String),
    #[error("vector has {got} coordinates, expected {expected}")]
    IndexMismatch { expected: usize, got: usize },
    #[error("coordinate {coord} is not a multiple of 1/{grid}")]
    NotOnGrid { coord: String, grid: u64 },
    #[error("marking is not integral, so dilation counts do not interpolate a polynomial")]
    NonIntegralMarking,
    #[error("polytope contains no grid points; nothing to interpolate")]
    EmptyPolytope,
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("direct characterization disagrees with transfer image: {0}")]
    CharacterizationMismatch(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
pub(crate) mod testutil {
    use crate::{rat, MarkedPoset, Poset};

    /// Four-mark fixture used across the crate: a chain `m0 < p < q < r < m3`
    /// with extra marks `m1 < q < m2`, marking values 0, 1, 2, 3.
    pub fn fenced_chain() -> MarkedPoset {
        let poset = Poset::new(
            &["m0", "p", "q", "r", "m3", "m1", "m2"],
            &[
                ("m0", "p"),
                ("p", "q"),
                ("q", "r"),
                ("r", "m3"),
                ("m1", "q"),
                ("q", "m2"),
            ],
        )
        .unwrap();
        MarkedPoset::new(
            poset,
            &[("m0", rat(0)), ("m1", rat(1)), ("m2", rat(2)), ("m3", rat(3))],
        )
        .unwrap()
    }

    /// `a < x < b` with marks `a`, `b`.
    pub fn marked_segment(lo: crate::Rat, hi: crate::Rat) -> MarkedPoset {
        let poset = Poset::new(&["a", "x", "b"], &[("a", "x"), ("x", "b")]).unwrap();
        MarkedPoset::new(poset, &[("a", lo), ("b", hi)]).unwrap()
    }
}

/// Maps a closure over a vector, in parallel when the `parallel` feature is
/// on. Every data-parallel split in the crate funnels through here so the
/// sequential fallback stays a one-flag rebuild; output order matches input
/// order either way.
pub(crate) fn par_map<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).collect()
    }
}

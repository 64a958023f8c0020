//! Piecewise-linear transfer between the order and chain polytopes.
//!
//! [`forward`] sends each unmarked coordinate to its minimal drop over lower
//! covers (marking values standing in on marked sides); [`back`] rebuilds
//! the order-side point by accumulating maxima up the poset. The two are
//! mutually inverse as maps of the whole coordinate space, restrict to a
//! bijection between the two polytopes, and preserve the `(1/m)`-lattice
//! whenever the marking is integral; that is what makes grid counts and
//! Ehrhart polynomials of the two polytopes agree.

use crate::marked::MarkedPoset;
use crate::polytope::GridVector;
use crate::poset::{ElemId, Poset};
use crate::{Error, Rat, Result};

/// A rational point indexed by *all* poset elements (marked ones included),
/// used by the whole-space variant of the forward map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullVector {
    coords: Vec<Rat>,
}

impl FullVector {
    pub fn new(coords: Vec<Rat>) -> Self {
        FullVector { coords }
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn get(&self, p: ElemId) -> &Rat {
        &self.coords[p]
    }
}

/// Stanley's transfer map on the full space: minimal elements keep their
/// value, every other element drops by the largest lower-cover value.
pub fn forward_full(poset: &Poset, x: &FullVector) -> Result<FullVector> {
    if x.coords.len() != poset.len() {
        return Err(Error::IndexMismatch {
            expected: poset.len(),
            got: x.coords.len(),
        });
    }
    let coords = (0..poset.len())
        .map(|p| {
            poset
                .lower_covers(p)
                .iter()
                .map(|&q| &x.coords[p] - &x.coords[q])
                .min()
                .unwrap_or_else(|| x.coords[p].clone())
        })
        .collect();
    Ok(FullVector::new(coords))
}

fn check_len(m: &MarkedPoset, v: &GridVector) -> Result<()> {
    if v.len() != m.free_elements().len() {
        return Err(Error::IndexMismatch {
            expected: m.free_elements().len(),
            got: v.len(),
        });
    }
    Ok(())
}

/// Order-side point to chain-side point: each unmarked coordinate becomes
/// its minimal drop over lower covers, reading marking values on marked
/// covers. Computed directly from the formula; debug builds cross-check
/// against [`forward_via_full`].
pub fn forward(m: &MarkedPoset, x: &GridVector) -> Result<GridVector> {
    check_len(m, x)?;
    let poset = m.poset();
    let coords: Vec<Rat> = m
        .free_elements()
        .iter()
        .map(|&p| {
            poset
                .lower_covers(p)
                .iter()
                .map(|&q| match m.free_index(q) {
                    Some(j) => &x.coords()[m.free_index(p).expect("free")] - &x.coords()[j],
                    None => &x.coords()[m.free_index(p).expect("free")] - m.mark(q).expect("marked"),
                })
                .min()
                .expect("unmarked elements are never minimal")
        })
        .collect();
    let out = GridVector::new(coords);
    debug_assert_eq!(
        out,
        forward_via_full(m, x).expect("length already checked"),
        "formula and embedding routes must agree"
    );
    Ok(out)
}

/// The same map computed the roundabout way: extend by the marking values to
/// a full vector, apply [`forward_full`], project back to the unmarked
/// coordinates. Kept as an independent implementation for cross-checking.
pub fn forward_via_full(m: &MarkedPoset, x: &GridVector) -> Result<GridVector> {
    check_len(m, x)?;
    let poset = m.poset();
    let full = FullVector::new(
        (0..poset.len())
            .map(|p| match m.free_index(p) {
                Some(i) => x.coords()[i].clone(),
                None => m.mark(p).expect("marked").clone(),
            })
            .collect(),
    );
    let mapped = forward_full(poset, &full)?;
    Ok(GridVector::new(
        m.free_elements().iter().map(|&p| mapped.coords[p].clone()).collect(),
    ))
}

/// Chain-side point to a full order-side vector: marked elements take their
/// marking value, each unmarked element adds its coordinate on top of the
/// largest value below it. Elements are processed in height order, so every
/// lower cover is ready when needed.
pub fn lift(m: &MarkedPoset, y: &GridVector) -> Result<FullVector> {
    check_len(m, y)?;
    let poset = m.poset();
    let mut coords = vec![crate::rat(0); poset.len()];
    for p in poset.linear_extension() {
        coords[p] = match m.free_index(p) {
            None => m.mark(p).expect("marked").clone(),
            Some(i) => {
                let below = poset
                    .lower_covers(p)
                    .iter()
                    .map(|&q| coords[q].clone())
                    .max()
                    .expect("unmarked elements are never minimal");
                &y.coords()[i] + below
            }
        };
    }
    Ok(FullVector::new(coords))
}

/// Inverse of [`forward`]: [`lift`] projected to the unmarked coordinates.
pub fn back(m: &MarkedPoset, y: &GridVector) -> Result<GridVector> {
    let full = lift(m, y)?;
    Ok(GridVector::new(
        m.free_elements().iter().map(|&p| full.coords[p].clone()).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{chain_hrep, enumerate_chain_points, enumerate_order_points};
    use crate::testutil::fenced_chain;
    use crate::{rat, ratio, MarkedPoset, Poset};
    use proptest::prelude::*;

    fn gv(vals: &[Rat]) -> GridVector {
        GridVector::new(vals.to_vec())
    }

    #[test]
    fn fixture_forward_examples() {
        let m = fenced_chain();
        let y = forward(&m, &gv(&[rat(1), rat(2), rat(3)])).unwrap();
        assert_eq!(y, gv(&[rat(1), rat(1), rat(1)]));
        let y = forward(&m, &gv(&[rat(0), rat(1), rat(1)])).unwrap();
        assert_eq!(y, gv(&[rat(0), rat(0), rat(0)]));
    }

    #[test]
    fn fixture_back_examples() {
        let m = fenced_chain();
        let x = back(&m, &gv(&[rat(1), rat(1), rat(1)])).unwrap();
        assert_eq!(x, gv(&[rat(1), rat(2), rat(3)]));
        // Lifting the origin of the chain side lands on the lower envelope.
        let x = back(&m, &gv(&[rat(0), rat(0), rat(0)])).unwrap();
        assert_eq!(x, gv(&[rat(0), rat(1), rat(1)]));
    }

    #[test]
    fn lift_keeps_marking_values() {
        let m = fenced_chain();
        let full = lift(&m, &gv(&[rat(1), rat(1), rat(1)])).unwrap();
        let p = m.poset();
        assert_eq!(full.get(p.index_of("m0").unwrap()), &rat(0));
        assert_eq!(full.get(p.index_of("m2").unwrap()), &rat(2));
        assert_eq!(full.get(p.index_of("q").unwrap()), &rat(2));
    }

    #[test]
    fn both_forward_routes_agree() {
        let m = fenced_chain();
        for x in [
            gv(&[rat(0), rat(1), rat(2)]),
            gv(&[ratio(1, 2), ratio(3, 2), ratio(5, 2)]),
            gv(&[rat(-3), rat(7), rat(7)]), // far outside the polytope
        ] {
            assert_eq!(forward(&m, &x).unwrap(), forward_via_full(&m, &x).unwrap());
        }
    }

    #[test]
    fn forward_rejects_wrong_length() {
        let m = fenced_chain();
        let err = forward(&m, &gv(&[rat(0)])).unwrap_err();
        assert_eq!(err, crate::Error::IndexMismatch { expected: 3, got: 1 });
        assert!(back(&m, &gv(&[])).is_err());
    }

    #[test]
    fn transfer_bijects_enumerated_grid_points() {
        let m = fenced_chain();
        for grid in 1..=2 {
            let order: Vec<GridVector> = enumerate_order_points(&m, grid);
            let chain: Vec<GridVector> = enumerate_chain_points(&m, grid);
            let mut image: Vec<GridVector> =
                order.iter().map(|x| forward(&m, x).unwrap()).collect();
            image.sort();
            assert_eq!(image, chain);
            for x in &order {
                assert_eq!(back(&m, &forward(&m, x).unwrap()).unwrap(), *x);
            }
            for y in &chain {
                assert_eq!(forward(&m, &back(&m, y).unwrap()).unwrap(), *y);
            }
        }
    }

    #[test]
    fn stanley_embedding_transfer_matches_chain_polytope() {
        let p = Poset::new(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
        )
        .unwrap();
        let m = MarkedPoset::stanley_embedding(&p);
        let chain_sys = chain_hrep(&m);
        let mut image: Vec<GridVector> = enumerate_order_points(&m, 2)
            .iter()
            .map(|x| forward(&m, x).unwrap())
            .collect();
        image.sort();
        assert_eq!(image, enumerate_chain_points(&m, 2));
        for y in &image {
            assert!(chain_sys.contains(y).unwrap());
        }
    }

    #[test]
    fn forward_full_on_diamond() {
        let p = Poset::new(&["a", "b", "c", "d"], &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])
            .unwrap();
        let x = FullVector::new(vec![rat(0), rat(1), rat(2), rat(3)]);
        let y = forward_full(&p, &x).unwrap();
        // d drops by max(b, c) = 2; minimal a keeps its value.
        assert_eq!(y.coords(), &[rat(0), rat(1), rat(2), rat(1)]);
    }

    proptest! {
        /// The two maps are mutually inverse on the whole space, polytope
        /// membership or not.
        #[test]
        fn roundtrip_everywhere(nums in proptest::collection::vec(-20i64..20, 3),
                                dens in proptest::collection::vec(1i64..6, 3)) {
            let m = fenced_chain();
            let x = gv(&[
                ratio(nums[0], dens[0]),
                ratio(nums[1], dens[1]),
                ratio(nums[2], dens[2]),
            ]);
            prop_assert_eq!(back(&m, &forward(&m, &x).unwrap()).unwrap(), x.clone());
            prop_assert_eq!(forward(&m, &back(&m, &x).unwrap()).unwrap(), x);
        }

        /// With an integral marking the maps preserve every (1/m)-lattice.
        #[test]
        fn grid_preserved(nums in proptest::collection::vec(-6i64..12, 3), m_den in 1u64..4) {
            let m = fenced_chain();
            let x = gv(&[
                ratio(nums[0], m_den as i64),
                ratio(nums[1], m_den as i64),
                ratio(nums[2], m_den as i64),
            ]);
            let g = Rat::from_integer(num_bigint::BigInt::from(m_den));
            for c in forward(&m, &x).unwrap().coords() {
                prop_assert!((c * &g).is_integer());
            }
            for c in back(&m, &x).unwrap().coords() {
                prop_assert!((c * &g).is_integer());
            }
        }
    }
}

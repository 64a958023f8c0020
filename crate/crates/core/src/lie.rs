//! Representation-theoretic instances: pattern boards for the classical
//! families, Dyck-path inequality systems, and an independent dimension
//! oracle via the Weyl formula.
//!
//! The boards are triangular arrays whose top row carries the weight as
//! markings; every other cell is bounded above by its upper-left neighbor
//! and below by its upper-right neighbor. Encoded as a marked poset, the
//! integral points of the order polytope are exactly the classical
//! patterns, while the chain polytope reproduces the Dyck-path system. The
//! symplectic and odd-orthogonal boards double the rows and pin the lower
//! boundary to zero.
//!
//! Cells are named `x{row}_{col}` (row 1 is just below the marked row),
//! markings `lam{i}`, pinned zeros `zero{k}`. Root coordinates are named
//! `s{i}_{j}` for the root sending basis vector `i` minus basis vector `j`.

use std::collections::HashMap;

use crate::marked::MarkedPoset;
use crate::polytope::{enumerate_chain_points, enumerate_order_points, GridVector, IneqSystem};
use crate::poset::Poset;
use crate::transfer;
use crate::{rat, Error, Rat, Result};

/// The three classical families handled here: special linear (`A`), odd
/// orthogonal (`B`), symplectic (`C`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LieType {
    A,
    B,
    C,
}

/// A dominant weight in coordinates, validated per family:
/// weakly decreasing throughout; integral for `A`; nonnegative integral
/// for `C`; nonnegative half-integral with all entries of the same parity
/// class for `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weight {
    ty: LieType,
    entries: Vec<Rat>,
}

impl Weight {
    pub fn new(ty: LieType, entries: Vec<Rat>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidWeight("weight needs at least one entry".into()));
        }
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidWeight(
                "weight entries must be weakly decreasing".into(),
            ));
        }
        let zero = rat(0);
        match ty {
            LieType::A => {
                if entries.iter().any(|e| !e.is_integer()) {
                    return Err(Error::InvalidWeight("type A entries must be integers".into()));
                }
            }
            LieType::C => {
                if entries.iter().any(|e| !e.is_integer() || *e < zero) {
                    return Err(Error::InvalidWeight(
                        "type C entries must be nonnegative integers".into(),
                    ));
                }
            }
            LieType::B => {
                if entries.iter().any(|e| *e < zero || !(e * rat(2)).is_integer()) {
                    return Err(Error::InvalidWeight(
                        "type B entries must be nonnegative half-integers".into(),
                    ));
                }
                let integral = entries[0].is_integer();
                if entries.iter().any(|e| e.is_integer() != integral) {
                    return Err(Error::InvalidWeight(
                        "type B entries must be all integral or all strictly half-integral".into(),
                    ));
                }
            }
        }
        Ok(Weight { ty, entries })
    }

    pub fn ty(&self) -> LieType {
        self.ty
    }

    /// Number of coordinate entries.
    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }
}

fn expect_type(w: &Weight, ty: LieType, what: &str) -> Result<()> {
    if w.ty() != ty {
        return Err(Error::InvalidWeight(format!("{what} needs a type {ty:?} weight")));
    }
    Ok(())
}

fn cell_name(r: usize, p: usize) -> String {
    if r == 0 {
        format!("lam{}", p + 1)
    } else {
        format!("x{r}_{p}")
    }
}

/// The triangular pattern board for the special linear family: `n` marked
/// cells on top, rows of length `n-1, ..., 1` below, each cell below its
/// upper-left and above its upper-right neighbor.
pub fn gt_poset(w: &Weight) -> Result<MarkedPoset> {
    expect_type(w, LieType::A, "the pattern board")?;
    let n = w.rank();
    if n < 2 {
        return Err(Error::InvalidWeight(
            "the pattern board needs at least two weight entries".into(),
        ));
    }
    let mut names: Vec<String> = (0..n).map(|p| cell_name(0, p)).collect();
    let mut covers: Vec<(String, String)> = Vec::new();
    for r in 1..n {
        for p in 0..n - r {
            names.push(cell_name(r, p));
            covers.push((cell_name(r, p), cell_name(r - 1, p)));
            covers.push((cell_name(r - 1, p + 1), cell_name(r, p)));
        }
    }
    let poset = Poset::new(&names, &covers)?;
    let marks: Vec<(String, Rat)> = (0..n)
        .map(|p| (cell_name(0, p), w.entries()[p].clone()))
        .collect();
    MarkedPoset::new(poset, &marks)
}

/// The positive root attached to board cell `(r, p)`, as the index pair of
/// its coordinate difference. Row-1 cells sit on the simple roots; going
/// down the board widens the root.
pub fn positive_root_of_cell(r: usize, p: usize) -> (usize, usize) {
    assert!(r >= 1, "the marked row carries no root");
    (p + 1, p + r + 1)
}

/// A path through the positive roots that starts and ends on simple roots,
/// each step widening the root by one on either side. Roots are index
/// pairs `(i, j)` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyckPath {
    pub roots: Vec<(usize, usize)>,
}

/// All Dyck paths for rank-`n` special linear root systems, in depth-first
/// order: starting simple root ascending, each path emitted before its
/// extensions, lower-index widening tried first.
pub fn dyck_paths(n: usize) -> Vec<DyckPath> {
    assert!(n >= 2, "need at least one simple root");
    let mut out = Vec::new();
    let mut path = Vec::new();
    for s in 1..n {
        path.push((s, s + 1));
        extend_path(n, &mut path, &mut out);
        path.pop();
    }
    out
}

fn extend_path(n: usize, path: &mut Vec<(usize, usize)>, out: &mut Vec<DyckPath>) {
    let &(a, b) = path.last().expect("path starts nonempty");
    if b == a + 1 {
        out.push(DyckPath { roots: path.clone() });
    }
    if a + 1 < b {
        path.push((a + 1, b));
        extend_path(n, path, out);
        path.pop();
    }
    if b < n {
        path.push((a, b + 1));
        extend_path(n, path, out);
        path.pop();
    }
}

/// The Dyck-path inequality system on root coordinates: every coordinate
/// nonnegative, and for each path from the `i`-th to the `j`-th simple
/// root, the sum over the path at most `lam_i - lam_{j+1}`.
pub fn ffl_hrep(w: &Weight) -> Result<IneqSystem> {
    expect_type(w, LieType::A, "the Dyck-path system")?;
    let n = w.rank();
    if n < 2 {
        return Err(Error::InvalidWeight(
            "the Dyck-path system needs at least two weight entries".into(),
        ));
    }
    let mut vars = Vec::new();
    let mut pos = HashMap::new();
    for i in 1..=n {
        for j in i + 1..=n {
            pos.insert((i, j), vars.len());
            vars.push(format!("s{i}_{j}"));
        }
    }
    let rows = dyck_paths(n)
        .into_iter()
        .map(|path| {
            let mut coeffs = vec![rat(0); vars.len()];
            for root in &path.roots {
                coeffs[pos[root]] = rat(1);
            }
            let (i, _) = path.roots[0];
            let (_, last_j) = *path.roots.last().expect("nonempty");
            let bound = &w.entries()[i - 1] - &w.entries()[last_j - 1];
            (coeffs, bound)
        })
        .collect();
    let nonneg = vec![true; vars.len()];
    Ok(IneqSystem::new(vars, rows, nonneg))
}

/// Doubled board shared by the symplectic and odd orthogonal families:
/// `2n` rows of lengths `n, n, n-1, n-1, ..., 1, 1`, the top row marked
/// with the weight, and a pinned zero below the last cell of every
/// odd-index row (the cells without an upper-right neighbor).
fn doubled_board(entries: &[Rat]) -> Result<MarkedPoset> {
    let n = entries.len();
    let len = |r: usize| n - r / 2;
    let mut names: Vec<String> = (0..n).map(|p| cell_name(0, p)).collect();
    let mut covers: Vec<(String, String)> = Vec::new();
    let mut zeros: Vec<(String, String)> = Vec::new();
    for r in 1..2 * n {
        for p in 0..len(r) {
            names.push(cell_name(r, p));
            covers.push((cell_name(r, p), cell_name(r - 1, p)));
            if p + 1 < len(r - 1) {
                covers.push((cell_name(r - 1, p + 1), cell_name(r, p)));
            } else {
                let zero = format!("zero{}", zeros.len() + 1);
                zeros.push((zero.clone(), cell_name(r, p)));
                covers.push((zero, cell_name(r, p)));
            }
        }
    }
    let mut marks: Vec<(String, Rat)> = (0..n)
        .map(|p| (cell_name(0, p), entries[p].clone()))
        .collect();
    for (zero, _) in &zeros {
        names.push(zero.clone());
        marks.push((zero.clone(), rat(0)));
    }
    let poset = Poset::new(&names, &covers)?;
    MarkedPoset::new(poset, &marks)
}

/// The doubled pattern board for a symplectic weight. Integral points of
/// its order polytope are the symplectic patterns of that highest weight.
pub fn sp_poset(w: &Weight) -> Result<MarkedPoset> {
    expect_type(w, LieType::C, "the symplectic board")?;
    doubled_board(w.entries())
}

/// The doubled pattern board for an odd orthogonal weight. The polytope
/// alone does not capture the patterns here; see [`so_order_patterns`].
pub fn so_poset(w: &Weight) -> Result<MarkedPoset> {
    expect_type(w, LieType::B, "the odd orthogonal board")?;
    doubled_board(w.entries())
}

/// Odd orthogonal patterns: half-integral points of the order polytope of
/// [`so_poset`] whose coordinates at cells of height two or more are
/// congruent to the first weight entry modulo one.
pub fn so_order_patterns(w: &Weight) -> Result<Vec<GridVector>> {
    let m = so_poset(w)?;
    let lam1 = &w.entries()[0];
    let pts = enumerate_order_points(&m, 2);
    Ok(pts
        .into_iter()
        .filter(|x| {
            m.free_elements().iter().enumerate().all(|(i, &p)| {
                m.poset().height(p) < 2 || (&x.coords()[i] + lam1).is_integer()
            })
        })
        .collect())
}

/// The transfer image of [`so_order_patterns`], cross-checked against its
/// direct description on the chain side: half-integral chain points,
/// integral at height three and up, and at height-two cells congruent to
/// the first weight entry after adding the largest coordinate below.
pub fn so_chain_patterns(w: &Weight) -> Result<Vec<GridVector>> {
    let m = so_poset(w)?;
    let mut image = so_order_patterns(w)?
        .iter()
        .map(|x| transfer::forward(&m, x))
        .collect::<Result<Vec<_>>>()?;
    image.sort();
    debug_assert!(image.windows(2).all(|w| w[0] != w[1]), "transfer is injective");
    let direct = so_chain_direct(&m, &w.entries()[0])?;
    if image != direct {
        return Err(Error::CharacterizationMismatch(format!(
            "transfer image has {} points, direct description {}",
            image.len(),
            direct.len()
        )));
    }
    Ok(image)
}

fn so_chain_direct(m: &MarkedPoset, lam1: &Rat) -> Result<Vec<GridVector>> {
    let poset = m.poset();
    // Height-two cells read the maximum over their lower covers, so those
    // covers must all carry coordinates of their own.
    let mut below: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut deep: Vec<usize> = Vec::new();
    for (i, &p) in m.free_elements().iter().enumerate() {
        match poset.height(p) {
            2 => {
                let mut qs = Vec::new();
                for &q in poset.lower_covers(p) {
                    match m.free_index(q) {
                        Some(j) => qs.push(j),
                        None => {
                            return Err(Error::CharacterizationMismatch(format!(
                                "marked element {} sits below height-two cell {}",
                                poset.element(q),
                                poset.element(p)
                            )))
                        }
                    }
                }
                below.push((i, qs));
            }
            h if h >= 3 => deep.push(i),
            _ => {}
        }
    }
    Ok(enumerate_chain_points(m, 2)
        .into_iter()
        .filter(|y| {
            deep.iter().all(|&i| y.coords()[i].is_integer())
                && below.iter().all(|(i, qs)| {
                    let mx = qs
                        .iter()
                        .map(|&j| &y.coords()[j])
                        .max()
                        .expect("height-two cells cover something");
                    (mx + &y.coords()[*i] + lam1).is_integer()
                })
        })
        .collect())
}

/// Dimension of the irreducible representation with this highest weight,
/// by the Weyl product formula. Exact rational arithmetic throughout; the
/// product is asserted to come out a positive integer.
pub fn weyl_dim(w: &Weight) -> u128 {
    use num_traits::ToPrimitive;
    let n = w.rank();
    let lam = w.entries();
    let mut dim = rat(1);
    match w.ty() {
        LieType::A => {
            for i in 0..n {
                for j in i + 1..n {
                    let gap = rat((j - i) as i64);
                    dim *= (&lam[i] - &lam[j] + &gap) / gap;
                }
            }
        }
        LieType::B | LieType::C => {
            // Staircase vector: n-i+1 in the symplectic case, n-i+1/2 in
            // the odd orthogonal one (1-based i).
            let rho: Vec<Rat> = (1..=n)
                .map(|i| match w.ty() {
                    LieType::C => rat((n - i + 1) as i64),
                    _ => crate::ratio((2 * (n - i) + 1) as i64, 2),
                })
                .collect();
            let l: Vec<Rat> = (0..n).map(|i| &lam[i] + &rho[i]).collect();
            for i in 0..n {
                for j in i + 1..n {
                    dim *= (&l[i] * &l[i] - &l[j] * &l[j]) / (&rho[i] * &rho[i] - &rho[j] * &rho[j]);
                }
                dim *= &l[i] / &rho[i];
            }
        }
    }
    assert!(dim.is_integer() && dim > rat(0), "Weyl product must be a positive integer");
    dim.to_integer().to_u128().expect("dimension fits in u128")
}

//! H-representations, grid-point enumeration and Ehrhart polynomials for the
//! two polytopes of a marked poset.
//!
//! The order polytope is cut out by one inequality per cover relation
//! (`x_lower <= x_upper`, with marking values substituted on marked sides).
//! The chain polytope is cut out by nonnegativity plus one inequality per
//! saturated marked chain: the interior coordinates of the chain sum to at
//! most the difference of the endpoint markings.
//!
//! Enumeration and counting are two deliberately separate algorithms (a
//! linear-extension walk for order, slack-tracking over chain rows for
//! chain) so that they can serve as cross-checks for each other.

mod engine;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::marked::MarkedPoset;
use crate::{par_map, Error, Rat, Result};
use engine::{OrderEngine, UnitEngine};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolytopeKind {
    Order,
    Chain,
}

/// A point of (or candidate for) a polytope over the unmarked coordinates,
/// in free-element declaration order. Comparison, hashing and ordering are
/// coordinate-wise and exact.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridVector {
    coords: Vec<Rat>,
}

impl GridVector {
    pub fn new(coords: Vec<Rat>) -> Self {
        GridVector { coords }
    }

    /// Validates that every coordinate lies on the `(1/grid)`-lattice.
    pub fn on_grid(coords: Vec<Rat>, grid: u64) -> Result<Self> {
        let g = Rat::from_integer(BigInt::from(grid));
        for c in &coords {
            if !(c * &g).is_integer() {
                return Err(Error::NotOnGrid {
                    coord: c.to_string(),
                    grid,
                });
            }
        }
        Ok(GridVector { coords })
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Smallest positive `m` with `m * coords` integral.
    pub fn grid_denominator(&self) -> BigInt {
        use num_integer::Integer;
        self.coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

/// A conjunction of inequalities `coeffs . x <= bound` over named variables,
/// plus per-variable nonnegativity flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IneqSystem {
    vars: Vec<String>,
    rows: Vec<(Vec<Rat>, Rat)>,
    nonneg: Vec<bool>,
}

impl IneqSystem {
    pub fn new(vars: Vec<String>, rows: Vec<(Vec<Rat>, Rat)>, nonneg: Vec<bool>) -> Self {
        assert_eq!(vars.len(), nonneg.len());
        for (coeffs, _) in &rows {
            assert_eq!(coeffs.len(), vars.len(), "row width must match variables");
        }
        IneqSystem { vars, rows, nonneg }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn rows(&self) -> &[(Vec<Rat>, Rat)] {
        &self.rows
    }

    pub fn nonneg(&self) -> &[bool] {
        &self.nonneg
    }

    /// Exact membership test.
    pub fn contains(&self, point: &GridVector) -> Result<bool> {
        if point.len() != self.vars.len() {
            return Err(Error::IndexMismatch {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        for (i, &nn) in self.nonneg.iter().enumerate() {
            if nn && point.coords[i].is_negative() {
                return Ok(false);
            }
        }
        for (coeffs, bound) in &self.rows {
            let lhs: Rat = coeffs
                .iter()
                .zip(&point.coords)
                .map(|(c, x)| c * x)
                .sum();
            if &lhs > bound {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Rows sorted into a canonical order, for comparing systems that were
    /// built differently.
    pub fn canonical_rows(&self) -> Vec<(Vec<Rat>, Rat)> {
        let mut rows = self.rows.clone();
        rows.sort();
        rows
    }

    /// Human-readable rows like `p + q <= 2` or `-q <= -1`.
    pub fn render_rows(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|(coeffs, bound)| {
                let mut lhs = String::new();
                for (c, name) in coeffs.iter().zip(&self.vars) {
                    if c.is_zero() {
                        continue;
                    }
                    if lhs.is_empty() {
                        if *c == -Rat::one() {
                            lhs.push('-');
                        } else if *c != Rat::one() {
                            lhs.push_str(&format!("{c} "));
                        }
                    } else if c.is_negative() {
                        lhs.push_str(" - ");
                        let a = -c;
                        if a != Rat::one() {
                            lhs.push_str(&format!("{a} "));
                        }
                    } else {
                        lhs.push_str(" + ");
                        if *c != Rat::one() {
                            lhs.push_str(&format!("{c} "));
                        }
                    }
                    lhs.push_str(name);
                }
                if lhs.is_empty() {
                    lhs.push('0');
                }
                format!("{lhs} <= {bound}")
            })
            .collect()
    }
}

/// Order-polytope inequalities: one row per cover relation. Covers between
/// two marked elements impose nothing on the coordinates and are skipped.
pub fn order_hrep(m: &MarkedPoset) -> IneqSystem {
    let vars: Vec<String> = m.free_names().into_iter().map(String::from).collect();
    let n = vars.len();
    let mut rows = Vec::new();
    for &(lo, hi) in m.poset().covers() {
        let row = match (m.free_index(lo), m.free_index(hi)) {
            (Some(i), Some(j)) => {
                // x_lo - x_hi <= 0
                let mut coeffs = vec![Rat::zero(); n];
                coeffs[i] = Rat::one();
                coeffs[j] = -Rat::one();
                (coeffs, Rat::zero())
            }
            (None, Some(j)) => {
                // mark(lo) <= x_hi
                let mut coeffs = vec![Rat::zero(); n];
                coeffs[j] = -Rat::one();
                (coeffs, -m.mark(lo).expect("marked").clone())
            }
            (Some(i), None) => {
                // x_lo <= mark(hi)
                let mut coeffs = vec![Rat::zero(); n];
                coeffs[i] = Rat::one();
                (coeffs, m.mark(hi).expect("marked").clone())
            }
            (None, None) => continue,
        };
        rows.push(row);
    }
    IneqSystem::new(vars, rows, vec![false; n])
}

/// Chain-polytope inequalities: nonnegativity plus one row per saturated
/// marked chain, bounding the interior sum by the marking difference.
pub fn chain_hrep(m: &MarkedPoset) -> IneqSystem {
    let vars: Vec<String> = m.free_names().into_iter().map(String::from).collect();
    let n = vars.len();
    let rows = m
        .marked_chains()
        .into_iter()
        .map(|chain| {
            let mut coeffs = vec![Rat::zero(); n];
            for p in &chain.interior {
                coeffs[m.free_index(*p).expect("interior is unmarked")] = Rat::one();
            }
            let bound = m.mark(chain.upper).expect("marked").clone()
                - m.mark(chain.lower).expect("marked").clone();
            (coeffs, bound)
        })
        .collect();
    IneqSystem::new(vars, rows, vec![true; n])
}

fn to_grid_vectors(points: Vec<Vec<i128>>, scale: i128) -> Vec<GridVector> {
    let scale = BigInt::from(scale);
    let mut out: Vec<GridVector> = points
        .into_iter()
        .map(|coords| {
            GridVector::new(
                coords
                    .into_iter()
                    .map(|v| Rat::new(BigInt::from(v), scale.clone()))
                    .collect(),
            )
        })
        .collect();
    out.sort();
    out
}

/// Points of the order polytope on the `(1/grid)`-lattice, sorted
/// lexicographically by coordinates.
pub fn enumerate_order_points(m: &MarkedPoset, grid: u64) -> Vec<GridVector> {
    assert!(grid >= 1);
    let eng = OrderEngine::new(m, grid);
    to_grid_vectors(eng.enumerate(), eng.scale)
}

/// `enumerate_order_points(m, grid).len()`, without materializing the
/// points; exact for any size.
pub fn count_order_points(m: &MarkedPoset, grid: u64) -> u128 {
    assert!(grid >= 1);
    OrderEngine::new(m, grid).count()
}

fn chain_unit_rows(m: &MarkedPoset) -> Vec<(Vec<usize>, Rat)> {
    m.marked_chains()
        .into_iter()
        .map(|chain| {
            let vars = chain
                .interior
                .iter()
                .map(|&p| m.free_index(p).expect("interior is unmarked"))
                .collect();
            let bound = m.mark(chain.upper).expect("marked").clone()
                - m.mark(chain.lower).expect("marked").clone();
            (vars, bound)
        })
        .collect()
}

/// Points of the chain polytope on the `(1/grid)`-lattice, sorted
/// lexicographically by coordinates.
pub fn enumerate_chain_points(m: &MarkedPoset, grid: u64) -> Vec<GridVector> {
    assert!(grid >= 1);
    let eng = UnitEngine::new(m.free_elements().len(), chain_unit_rows(m), grid);
    to_grid_vectors(eng.enumerate(), eng.scale)
}

pub fn count_chain_points(m: &MarkedPoset, grid: u64) -> u128 {
    assert!(grid >= 1);
    UnitEngine::new(m.free_elements().len(), chain_unit_rows(m), grid).count()
}

fn unit_rows_of_system(sys: &IneqSystem) -> Vec<(Vec<usize>, Rat)> {
    assert!(
        sys.nonneg.iter().all(|&b| b),
        "unit-system enumeration needs nonnegative variables"
    );
    sys.rows
        .iter()
        .map(|(coeffs, bound)| {
            let vars: Vec<usize> = coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| {
                    assert!(c.is_one(), "unit-system enumeration needs 0/1 coefficients");
                    i
                })
                .collect();
            (vars, bound.clone())
        })
        .collect()
}

/// Grid points of a system with 0/1 coefficients over nonnegative variables
/// (chain polytopes and their relatives). Panics if the system has any other
/// shape or leaves a variable unbounded.
pub fn enumerate_unit_points(sys: &IneqSystem, grid: u64) -> Vec<GridVector> {
    assert!(grid >= 1);
    let eng = UnitEngine::new(sys.vars.len(), unit_rows_of_system(sys), grid);
    to_grid_vectors(eng.enumerate(), eng.scale)
}

pub fn count_unit_points(sys: &IneqSystem, grid: u64) -> u128 {
    assert!(grid >= 1);
    UnitEngine::new(sys.vars.len(), unit_rows_of_system(sys), grid).count()
}

/// Lattice-point counting polynomial: coefficients of `E(t)` with
/// `E(n) = #(n-th dilate ∩ Z)`, stored low degree first and exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EhrhartPolynomial {
    coeffs: Vec<Rat>,
}

impl EhrhartPolynomial {
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, t: i64) -> Rat {
        let t = Rat::from_integer(BigInt::from(t));
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &t + c;
        }
        acc
    }
}

impl std::fmt::Display for EhrhartPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() && self.coeffs.len() > 1 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c} t")?,
                _ => write!(f, "{c} t^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Counts grid points of the `n`-fold dilates for `n = 1..=d+1` (where `d`
/// is the number of unmarked elements) and interpolates the unique
/// polynomial of degree `<= d` through them. Requires an integral marking
/// (dilation of a non-integral marking does not count on a fixed lattice)
/// and a nonempty polytope.
pub fn ehrhart(m: &MarkedPoset, kind: PolytopeKind) -> Result<EhrhartPolynomial> {
    if !m.integral_marking() {
        return Err(Error::NonIntegralMarking);
    }
    let d = m.free_elements().len();
    let counts = par_map((1..=d as u64 + 1).collect(), |n| {
        let dilated = m.dilate(n);
        match kind {
            PolytopeKind::Order => count_order_points(&dilated, 1),
            PolytopeKind::Chain => count_chain_points(&dilated, 1),
        }
    });
    if counts[0] == 0 {
        return Err(Error::EmptyPolytope);
    }
    let xs: Vec<Rat> = (1..=d as i64 + 1).map(|n| Rat::from_integer(n.into())).collect();
    let ys: Vec<Rat> = counts
        .iter()
        .map(|&c| Rat::from_integer(BigInt::from(c)))
        .collect();
    Ok(EhrhartPolynomial {
        coeffs: newton_interpolate(&xs, &ys),
    })
}

/// Exact Newton interpolation through `(xs[i], ys[i])`; returns monomial
/// coefficients, low degree first, trailing zeros trimmed.
fn newton_interpolate(xs: &[Rat], ys: &[Rat]) -> Vec<Rat> {
    let k = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..k {
        for j in (level..k).rev() {
            dd[j] = (&dd[j] - &dd[j - 1]) / (&xs[j] - &xs[j - level]);
        }
    }
    let mut coeffs = vec![dd[k - 1].clone()];
    for i in (0..k - 1).rev() {
        let mut next = vec![Rat::zero(); coeffs.len() + 1];
        for (j, c) in coeffs.iter().enumerate() {
            next[j + 1] += c;
            let shift = c * &xs[i];
            next[j] -= shift;
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    while coeffs.len() > 1 && coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
        coeffs.pop();
    }
    coeffs
}

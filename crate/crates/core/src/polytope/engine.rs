//! Integer-scaled backtracking engines behind enumeration and counting.
//!
//! Coordinates are multiplied by `scale = lcm(grid, marking denominators)` up
//! front, so every grid point becomes an `i128` lattice point and the inner
//! loops never touch big integers; the rationals reappear only at the API
//! boundary. Exactness is preserved throughout (conversions assert).
//!
//! Two engines, deliberately independent of each other:
//!
//! * [`OrderEngine`] walks unmarked elements along a linear extension,
//!   bounding each value by its already-assigned lower covers and by the
//!   marked elements reachable through unmarked ones.
//! * [`UnitEngine`] handles 0/1-coefficient systems over nonnegative
//!   variables (chain polytopes, Dyck-path systems) by tracking the running
//!   slack of every row.
//!
//! Counting runs the same recursions with memoization. The memo key is the
//! part of the assigned prefix the future can still see: per-variable maxima
//! over assigned lower covers for the order engine, active-row slacks for the
//! unit engine. That keeps counting polynomial on the wide, shallow posets
//! (antichains) where plain backtracking would visit every point.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::marked::MarkedPoset;
use crate::poset::ElemId;
use crate::{par_map, Rat};

/// Cache entries are dropped wholesale past this point; counting stays
/// correct, only slower, if a degenerate instance floods the memo.
const MEMO_LIMIT: usize = 1 << 21;

/// Least common multiple of `grid` and the given denominators, plus the
/// lattice step `scale / grid`.
fn common_scale<I: Iterator<Item = BigInt>>(denoms: I, grid: u64) -> (i128, i128) {
    let mut l = BigInt::from(grid);
    for d in denoms {
        l = l.lcm(&d);
    }
    let scale = l.to_i128().expect("coordinate scale overflows i128");
    (scale, scale / grid as i128)
}

fn scaled(v: &Rat, scale: i128) -> i128 {
    let s = v * Rat::from_integer(BigInt::from(scale));
    debug_assert!(s.is_integer(), "scale must clear the denominator");
    s.to_integer().to_i128().expect("scaled coordinate overflows i128")
}

/// Smallest multiple of `step` that is `>= v`.
fn align_up(v: i128, step: i128) -> i128 {
    (v + step - 1).div_euclid(step) * step
}

/// Largest multiple of `step` that is `<= v`.
fn align_down(v: i128, step: i128) -> i128 {
    v.div_euclid(step) * step
}

pub(crate) struct OrderEngine {
    pub scale: i128,
    step: i128,
    d: usize,
    /// Slot `k` assigns the free variable at coordinate position
    /// `coord_pos[k]`; slots follow a linear extension.
    coord_pos: Vec<usize>,
    /// Static scaled bounds per slot: the largest marking value reachable
    /// downward through unmarked elements, and the smallest one upward.
    lo: Vec<i128>,
    hi: Vec<i128>,
    /// Earlier slots holding unmarked lower covers of this slot's element.
    deps: Vec<Vec<usize>>,
}

impl OrderEngine {
    pub fn new(m: &MarkedPoset, grid: u64) -> Self {
        let poset = m.poset();
        let denoms = m
            .marked_elements()
            .into_iter()
            .map(|a| m.mark(a).expect("marked").denom().clone());
        let (scale, step) = common_scale(denoms, grid);

        let free = m.free_elements();
        let mut slots: Vec<usize> = (0..free.len()).collect();
        slots.sort_by_key(|&i| (poset.height(free[i]), free[i]));
        let mut slot_of = vec![usize::MAX; free.len()];
        for (k, &i) in slots.iter().enumerate() {
            slot_of[i] = k;
        }

        let mut lo = Vec::with_capacity(free.len());
        let mut hi = Vec::with_capacity(free.len());
        let mut deps = Vec::with_capacity(free.len());
        for (k, &i) in slots.iter().enumerate() {
            let p = free[i];
            lo.push(scaled(&reach_bound(m, p, true), scale));
            hi.push(scaled(&reach_bound(m, p, false), scale));
            let ds: Vec<usize> = poset
                .lower_covers(p)
                .iter()
                .filter_map(|&q| m.free_index(q))
                .map(|pos| slot_of[pos])
                .collect();
            debug_assert!(ds.iter().all(|&s| s < k), "linear extension orders covers first");
            deps.push(ds);
        }

        OrderEngine {
            scale,
            step,
            d: free.len(),
            coord_pos: slots,
            lo,
            hi,
            deps,
        }
    }

    fn range(&self, k: usize, vals: &[i128]) -> (i128, i128) {
        let mut lo = self.lo[k];
        for &dep in &self.deps[k] {
            lo = lo.max(vals[dep]);
        }
        (align_up(lo, self.step), align_down(self.hi[k], self.step))
    }

    /// All scaled grid points, coordinates in free-element order. Order of
    /// the result is lexicographic in slot order; callers re-sort.
    pub fn enumerate(&self) -> Vec<Vec<i128>> {
        if self.d == 0 {
            return vec![Vec::new()];
        }
        let (lo, hi) = self.range(0, &[]);
        let mut first = Vec::new();
        let mut v = lo;
        while v <= hi {
            first.push(v);
            v += self.step;
        }
        let chunks = par_map(first, |v| {
            let mut vals = vec![v];
            let mut out = Vec::new();
            self.walk(1, &mut vals, &mut out);
            out
        });
        chunks.into_iter().flatten().collect()
    }

    fn walk(&self, k: usize, vals: &mut Vec<i128>, out: &mut Vec<Vec<i128>>) {
        if k == self.d {
            let mut coords = vec![0i128; self.d];
            for (slot, &pos) in self.coord_pos.iter().enumerate() {
                coords[pos] = vals[slot];
            }
            out.push(coords);
            return;
        }
        let (lo, hi) = self.range(k, vals);
        let mut v = lo;
        while v <= hi {
            vals.push(v);
            self.walk(k + 1, vals, out);
            vals.pop();
            v += self.step;
        }
    }

    pub fn count(&self) -> u128 {
        let mut memo = HashMap::new();
        self.count_rec(0, &mut Vec::new(), &mut memo)
    }

    /// What the future sees of the assigned prefix: for each pending slot
    /// with assigned lower covers, their maximum. Two prefixes with equal
    /// keys have identical completion counts.
    fn state_key(&self, k: usize, vals: &[i128]) -> Vec<i128> {
        let mut key = Vec::new();
        for j in k..self.d {
            let mut mx: Option<i128> = None;
            for &dep in &self.deps[j] {
                if dep < k {
                    mx = Some(mx.map_or(vals[dep], |m| m.max(vals[dep])));
                }
            }
            if let Some(mx) = mx {
                key.push(mx);
            }
        }
        key
    }

    fn count_rec(
        &self,
        k: usize,
        vals: &mut Vec<i128>,
        memo: &mut HashMap<(usize, Vec<i128>), u128>,
    ) -> u128 {
        if k == self.d {
            return 1;
        }
        let key = self.state_key(k, vals);
        if let Some(&c) = memo.get(&(k, key.clone())) {
            return c;
        }
        let (lo, hi) = self.range(k, vals);
        let mut total: u128 = 0;
        let mut v = lo;
        while v <= hi {
            vals.push(v);
            let sub = self.count_rec(k + 1, vals, memo);
            vals.pop();
            total = total.checked_add(sub).expect("point count overflows u128");
            v += self.step;
        }
        if memo.len() >= MEMO_LIMIT {
            memo.clear();
        }
        memo.insert((k, key), total);
        total
    }
}

/// Largest marking value reachable from `start` by walking cover steps
/// downward (`down = true`) through unmarked elements only, or the smallest
/// reachable walking upward. Marked elements adjacent *through* other marked
/// elements do not bound the cover-level system, so they are excluded.
fn reach_bound(m: &MarkedPoset, start: ElemId, down: bool) -> Rat {
    let poset = m.poset();
    let mut best: Option<Rat> = None;
    let mut seen = vec![false; poset.len()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(v) = stack.pop() {
        let nbrs = if down {
            poset.lower_covers(v)
        } else {
            poset.upper_covers(v)
        };
        for &q in nbrs {
            if let Some(val) = m.mark(q) {
                best = Some(match best {
                    None => val.clone(),
                    Some(b) if down => b.max(val.clone()),
                    Some(b) => b.min(val.clone()),
                });
            } else if !seen[q] {
                seen[q] = true;
                stack.push(q);
            }
        }
    }
    best.expect("marked extremals put a marked element on every side of an unmarked one")
}

pub(crate) struct UnitEngine {
    pub scale: i128,
    step: i128,
    d: usize,
    /// Rows as (variable positions, scaled bound); coefficients are all 1.
    rows: Vec<(Vec<usize>, i128)>,
    rows_of: Vec<Vec<usize>>,
    /// Variable order used for counting.
    elim: Vec<usize>,
    /// Per counting level: rows with variables on both sides of the split.
    active: Vec<Vec<usize>>,
}

impl UnitEngine {
    /// `rows` hold positions into a `nvars`-coordinate space; every variable
    /// must occur in at least one row, otherwise the system is unbounded.
    pub fn new(nvars: usize, rows: Vec<(Vec<usize>, Rat)>, grid: u64) -> Self {
        let (scale, step) = common_scale(rows.iter().map(|(_, b)| b.denom().clone()), grid);
        let rows: Vec<(Vec<usize>, i128)> = rows
            .into_iter()
            .map(|(vars, b)| {
                assert!(!vars.is_empty(), "constant rows are meaningless here");
                (vars, scaled(&b, scale))
            })
            .collect();
        let mut rows_of = vec![Vec::new(); nvars];
        for (r, (vars, _)) in rows.iter().enumerate() {
            for &v in vars {
                rows_of[v].push(r);
            }
        }
        assert!(
            rows_of.iter().all(|rs| !rs.is_empty()),
            "every variable must appear in some row, or the system is unbounded"
        );

        let elim = choose_order(nvars, &rows);
        let mut active = Vec::with_capacity(nvars);
        let mut assigned = vec![false; nvars];
        for k in 0..nvars {
            let acts: Vec<usize> = rows
                .iter()
                .enumerate()
                .filter(|(_, (vars, _))| {
                    vars.iter().any(|&v| assigned[v]) && vars.iter().any(|&v| !assigned[v])
                })
                .map(|(r, _)| r)
                .collect();
            active.push(acts);
            assigned[elim[k]] = true;
        }

        UnitEngine {
            scale,
            step,
            d: nvars,
            rows,
            rows_of,
            elim,
            active,
        }
    }

    fn cap(&self, var: usize, slacks: &[i128]) -> i128 {
        let hi = self.rows_of[var]
            .iter()
            .map(|&r| slacks[r])
            .min()
            .expect("var occurs in a row");
        align_down(hi, self.step)
    }

    /// All scaled grid points in natural coordinate order, lexicographic.
    pub fn enumerate(&self) -> Vec<Vec<i128>> {
        if self.d == 0 {
            return vec![Vec::new()];
        }
        let slacks: Vec<i128> = self.rows.iter().map(|&(_, b)| b).collect();
        let hi = self.cap(0, &slacks);
        let mut first = Vec::new();
        let mut v = 0;
        while v <= hi {
            first.push(v);
            v += self.step;
        }
        let chunks = par_map(first, |v| {
            let mut slacks = slacks.clone();
            for &r in &self.rows_of[0] {
                slacks[r] -= v;
            }
            let mut vals = vec![v];
            let mut out = Vec::new();
            self.walk(1, &mut vals, &mut slacks, &mut out);
            out
        });
        chunks.into_iter().flatten().collect()
    }

    fn walk(&self, k: usize, vals: &mut Vec<i128>, slacks: &mut [i128], out: &mut Vec<Vec<i128>>) {
        if k == self.d {
            out.push(vals.clone());
            return;
        }
        let hi = self.cap(k, slacks);
        let mut v = 0;
        while v <= hi {
            for &r in &self.rows_of[k] {
                slacks[r] -= v;
            }
            vals.push(v);
            self.walk(k + 1, vals, slacks, out);
            vals.pop();
            for &r in &self.rows_of[k] {
                slacks[r] += v;
            }
            v += self.step;
        }
    }

    pub fn count(&self) -> u128 {
        let mut slacks: Vec<i128> = self.rows.iter().map(|&(_, b)| b).collect();
        let mut memo = HashMap::new();
        self.count_rec(0, &mut slacks, &mut memo)
    }

    fn count_rec(
        &self,
        k: usize,
        slacks: &mut Vec<i128>,
        memo: &mut HashMap<(usize, Vec<i128>), u128>,
    ) -> u128 {
        if k == self.d {
            return 1;
        }
        let key: Vec<i128> = self.active[k].iter().map(|&r| slacks[r]).collect();
        if let Some(&c) = memo.get(&(k, key.clone())) {
            return c;
        }
        let var = self.elim[k];
        let hi = self.cap(var, slacks);
        let mut total: u128 = 0;
        let mut v = 0;
        while v <= hi {
            for &r in &self.rows_of[var] {
                slacks[r] -= v;
            }
            let sub = self.count_rec(k + 1, slacks, memo);
            for &r in &self.rows_of[var] {
                slacks[r] += v;
            }
            total = total.checked_add(sub).expect("point count overflows u128");
            v += self.step;
        }
        if memo.len() >= MEMO_LIMIT {
            memo.clear();
        }
        memo.insert((k, key), total);
        total
    }
}

/// Picks a counting order for the unit engine. The memo key size at each
/// level is driven by how many assigned variables still share a row with a
/// pending one, so we score a few candidate orders by the worst such
/// boundary and keep the best. (A hub variable shared by many rows should be
/// assigned first, for example.)
fn choose_order(nvars: usize, rows: &[(Vec<usize>, i128)]) -> Vec<usize> {
    if nvars <= 1 {
        return (0..nvars).collect();
    }
    let boundary = |prefix: &[usize]| -> usize {
        let mut inset = vec![false; nvars];
        for &v in prefix {
            inset[v] = true;
        }
        (0..nvars)
            .filter(|&u| {
                inset[u]
                    && rows.iter().any(|(vars, _)| {
                        vars.contains(&u) && vars.iter().any(|&w| !inset[w])
                    })
            })
            .count()
    };
    let score = |order: &[usize]| -> (usize, usize) {
        let mut worst = 0;
        let mut total = 0;
        for k in 1..nvars {
            let b = boundary(&order[..k]);
            worst = worst.max(b);
            total += b;
        }
        (worst, total)
    };

    let natural: Vec<usize> = (0..nvars).collect();
    let reverse: Vec<usize> = (0..nvars).rev().collect();
    let mut by_degree = natural.clone();
    by_degree.sort_by_key(|&v| {
        std::cmp::Reverse(rows.iter().filter(|(vars, _)| vars.contains(&v)).count())
    });
    // Greedy: extend by whichever variable keeps the boundary smallest.
    let mut greedy = Vec::with_capacity(nvars);
    let mut left: Vec<usize> = natural.clone();
    while !left.is_empty() {
        let (pos, _) = left
            .iter()
            .enumerate()
            .map(|(pos, &v)| {
                let mut trial = greedy.clone();
                trial.push(v);
                (pos, boundary(&trial))
            })
            .min_by_key(|&(_, b)| b)
            .expect("left nonempty");
        greedy.push(left.remove(pos));
    }

    [natural, reverse, by_degree, greedy]
        .into_iter()
        .min_by_key(|order| score(order))
        .expect("candidates nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{fenced_chain, marked_segment};
    use crate::{rat, ratio};

    #[test]
    fn alignment_handles_negatives() {
        assert_eq!(align_up(-3, 2), -2);
        assert_eq!(align_up(-4, 2), -4);
        assert_eq!(align_up(3, 2), 4);
        assert_eq!(align_down(-3, 2), -4);
        assert_eq!(align_down(3, 2), 2);
    }

    #[test]
    fn order_engine_counts_match_enumeration() {
        let m = fenced_chain();
        for grid in 1..=3 {
            let eng = OrderEngine::new(&m, grid);
            assert_eq!(eng.count(), eng.enumerate().len() as u128);
        }
    }

    #[test]
    fn unit_engine_counts_match_enumeration() {
        // Rows of the fixture's chain polytope, written out by hand.
        let rows = vec![
            (vec![0, 1, 2], rat(3)),
            (vec![0, 1], rat(2)),
            (vec![1, 2], rat(2)),
            (vec![1], rat(1)),
        ];
        for grid in 1..=3 {
            let eng = UnitEngine::new(3, rows.clone(), grid);
            assert_eq!(eng.count(), eng.enumerate().len() as u128);
        }
    }

    #[test]
    fn fractional_scale_keeps_points_exact() {
        let m = marked_segment(ratio(1, 2), ratio(3, 2));
        let eng = OrderEngine::new(&m, 2);
        let pts = eng.enumerate();
        // x in {1/2, 1, 3/2} scaled by 2.
        assert_eq!(pts, vec![vec![1], vec![2], vec![3]]);
        assert_eq!(eng.scale, 2);
    }

    #[test]
    fn bounds_do_not_cross_marked_intermediates() {
        // b < x < c < a with marks b=2, c=5, a=1: the cover-level system
        // bounds x by c's value only; a is shielded by the marked c.
        let poset = crate::Poset::new(
            &["b", "x", "c", "a"],
            &[("b", "x"), ("x", "c"), ("c", "a")],
        )
        .unwrap();
        let m = crate::MarkedPoset::new(poset, &[("b", rat(2)), ("c", rat(5)), ("a", rat(1))]).unwrap();
        let eng = OrderEngine::new(&m, 1);
        assert_eq!(eng.count(), 4); // x in {2, 3, 4, 5}
    }

    #[test]
    fn antichain_counting_stays_cheap() {
        // 6 incomparable elements between wide marks: 41^6 points. The memo
        // collapses this to a product; enumeration would be hopeless.
        let mut elements = vec!["bot".to_string(), "top".to_string()];
        let mut rel = Vec::new();
        for i in 0..6 {
            let name = format!("u{i}");
            rel.push(("bot".to_string(), name.clone()));
            rel.push((name.clone(), "top".to_string()));
            elements.push(name);
        }
        let poset = crate::Poset::new(&elements, &rel).unwrap();
        let m = crate::MarkedPoset::new(poset, &[("bot", rat(-20)), ("top", rat(20))]).unwrap();
        let eng = OrderEngine::new(&m, 1);
        assert_eq!(eng.count(), 41u128.pow(6));
    }

    #[test]
    fn star_rows_count_quickly_with_reordered_elimination() {
        // Five rows {v_i, hub} with wide bounds; a leaf-first order would key
        // the memo on five independent slacks.
        let rows: Vec<(Vec<usize>, Rat)> = (0..5).map(|i| (vec![i, 5], rat(40))).collect();
        let eng = UnitEngine::new(6, rows, 1);
        // sum over h of prod_i (41 - h)
        let expect: u128 = (0..=40u128).map(|h| (41 - h).pow(5)).sum();
        assert_eq!(eng.count(), expect);
    }

    #[test]
    fn zero_variables_count_one() {
        let poset = crate::Poset::new(&["a", "b"], &[("a", "b")]).unwrap();
        let m = crate::MarkedPoset::new(poset, &[("a", rat(0)), ("b", rat(7))]).unwrap();
        let eng = OrderEngine::new(&m, 1);
        assert_eq!(eng.enumerate(), vec![Vec::<i128>::new()]);
        assert_eq!(eng.count(), 1);
        let unit = UnitEngine::new(0, Vec::new(), 1);
        assert_eq!(unit.count(), 1);
    }
}

//! Randomized cross-checking of the order/chain counting equality.
//!
//! Every iteration draws from its own ChaCha8 stream (generator seeded
//! with the run seed, stream set to the iteration index), so runs are
//! reproducible and iterations are independent of one another.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::marked::MarkedPoset;
use crate::polytope::{count_chain_points, count_order_points};
use crate::poset::Poset;
use crate::{rat, ratio};

#[derive(Debug, Clone)]
pub struct FuzzOpts {
    /// Upper bound on unmarked elements (at least one is generated).
    pub max_unmarked: usize,
    /// Markings are drawn from `[-max_mark, max_mark]`.
    pub max_mark: i64,
    /// Draw markings with denominators 2 and 3 instead of integers.
    pub real_marks: bool,
}

impl Default for FuzzOpts {
    fn default() -> Self {
        FuzzOpts {
            max_unmarked: 4,
            max_mark: 3,
            real_marks: false,
        }
    }
}

/// A random marked poset: a random DAG on a shuffled topological order
/// whose first and last slots are marked, so that no unmarked element can
/// be extremal. Unmarked elements get a neighbor on each side if the
/// random edges left them bare.
pub fn random_marked_poset<R: Rng>(rng: &mut R, opts: &FuzzOpts) -> MarkedPoset {
    let unmarked = rng.random_range(1..=opts.max_unmarked.max(1));
    let marked = rng.random_range(2..=opts.max_unmarked.max(2));
    let n = unmarked + marked;
    let mut is_marked = vec![false; n];
    is_marked[0] = true;
    is_marked[n - 1] = true;
    let mut middle: Vec<usize> = (1..n - 1).collect();
    middle.shuffle(rng);
    for &slot in middle.iter().take(marked - 2) {
        is_marked[slot] = true;
    }
    let names: Vec<String> = (0..n)
        .map(|i| format!("{}{i}", if is_marked[i] { "m" } else { "p" }))
        .collect();

    let density = *[0.125, 0.25, 0.5, 0.75]
        .choose(rng)
        .expect("palette nonempty");
    let mut covers: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(density) {
                covers.push((i, j));
            }
        }
    }
    for i in 0..n {
        if is_marked[i] {
            continue;
        }
        if !covers.iter().any(|&(_, hi)| hi == i) {
            covers.push((rng.random_range(0..i), i));
        }
        if !covers.iter().any(|&(lo, _)| lo == i) {
            covers.push((i, rng.random_range(i + 1..n)));
        }
    }

    let cover_names: Vec<(String, String)> = covers
        .iter()
        .map(|&(lo, hi)| (names[lo].clone(), names[hi].clone()))
        .collect();
    let poset = Poset::new(&names, &cover_names).expect("index order is topological");

    let marks: Vec<(String, crate::Rat)> = (0..n)
        .filter(|&i| is_marked[i])
        .map(|i| {
            let value = if opts.real_marks {
                let den = *[2i64, 3].choose(rng).expect("nonempty");
                ratio(rng.random_range(-den * opts.max_mark..=den * opts.max_mark), den)
            } else {
                rat(rng.random_range(-opts.max_mark..=opts.max_mark))
            };
            (names[i].clone(), value)
        })
        .collect();
    MarkedPoset::new(poset, &marks).expect("extremal slots are marked")
}

#[derive(Debug, Clone)]
pub struct FuzzWitness {
    pub iteration: u64,
    pub grid: u64,
    pub order_count: u128,
    pub chain_count: u128,
    pub poset: MarkedPoset,
}

#[derive(Debug, Clone)]
pub struct FuzzReport {
    pub checked: u64,
    pub witness: Option<FuzzWitness>,
}

/// Compare order and chain grid-point counts on random instances, at a
/// random grid in `{1, 2, 3}` per instance, stopping at the first
/// disagreement. With integral markings a witness is a bug; with
/// `real_marks` it is the expected demonstration that integrality matters.
pub fn fuzz_search(seed: u64, iters: u64, opts: &FuzzOpts) -> FuzzReport {
    for i in 0..iters {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i);
        let m = random_marked_poset(&mut rng, opts);
        let grid = rng.random_range(1..=3);
        let order_count = count_order_points(&m, grid);
        let chain_count = count_chain_points(&m, grid);
        if order_count != chain_count {
            return FuzzReport {
                checked: i + 1,
                witness: Some(FuzzWitness {
                    iteration: i,
                    grid,
                    order_count,
                    chain_count,
                    poset: m,
                }),
            };
        }
    }
    FuzzReport {
        checked: iters,
        witness: None,
    }
}

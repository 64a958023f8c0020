//! Lattice-point workloads sized for comparing the parallel and sequential
//! builds. Record a baseline with the default features, then rerun without
//! them:
//!
//!     cargo bench -p posetope -- --save-baseline par
//!     cargo bench -p posetope --no-default-features -- --baseline par

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use posetope::cli::{fuzz_search, FuzzOpts};
use posetope::lie::{gt_poset, LieType, Weight};
use posetope::polytope::{
    count_chain_points, count_order_points, ehrhart, enumerate_chain_points,
    enumerate_order_points,
};
use posetope::transfer::{back, forward};
use posetope::{rat, MarkedPoset, PolytopeKind};

fn staircase(n: i64) -> MarkedPoset {
    let entries = (0..n).rev().map(rat).collect();
    gt_poset(&Weight::new(LieType::A, entries).unwrap()).unwrap()
}

fn bench_counting(c: &mut Criterion) {
    let board = staircase(5);
    c.bench_function("count_order_gt5_grid3", |b| {
        b.iter(|| black_box(count_order_points(black_box(&board), 3)))
    });
    c.bench_function("count_chain_gt5_grid3", |b| {
        b.iter(|| black_box(count_chain_points(black_box(&board), 3)))
    });
}

fn bench_enumeration(c: &mut Criterion) {
    let board = staircase(4);
    c.bench_function("enumerate_order_gt4_grid2", |b| {
        b.iter(|| black_box(enumerate_order_points(black_box(&board), 2)))
    });
    c.bench_function("enumerate_chain_gt4_grid2", |b| {
        b.iter(|| black_box(enumerate_chain_points(black_box(&board), 2)))
    });
}

fn bench_ehrhart(c: &mut Criterion) {
    let board = staircase(4);
    c.bench_function("ehrhart_order_gt4", |b| {
        b.iter(|| black_box(ehrhart(black_box(&board), PolytopeKind::Order).unwrap()))
    });
}

fn bench_transfer(c: &mut Criterion) {
    let board = staircase(5);
    let points = enumerate_order_points(&board, 1);
    c.bench_function("transfer_round_trip_gt5", |b| {
        b.iter(|| {
            for x in &points {
                let y = forward(&board, x).unwrap();
                black_box(back(&board, &y).unwrap());
            }
        })
    });
}

fn bench_fuzz(c: &mut Criterion) {
    let opts = FuzzOpts::default();
    c.bench_function("fuzz_batch_60", |b| {
        b.iter(|| black_box(fuzz_search(black_box(0), 60, &opts)))
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = bench_counting, bench_enumeration, bench_ehrhart, bench_transfer, bench_fuzz
}
criterion_main!(benches);

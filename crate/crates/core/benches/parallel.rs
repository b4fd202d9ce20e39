//! Parallel vs. sequential throughput of the sweep harness and the exact
//! solver. With `--no-default-features` only the sequential side runs.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use flowspan_core::{
    optimal_makespan, random_instance, search, search_sequential, SearchMode, SearchSpace,
};

fn exhaustive_space() -> SearchSpace {
    SearchSpace {
        machines: 3,
        ranks: 3,
        p_max: 3,
        mode: SearchMode::Exhaustive,
    }
}

fn random_space() -> SearchSpace {
    SearchSpace {
        machines: 4,
        ranks: 4,
        p_max: 9,
        mode: SearchMode::Random {
            trials: 48,
            seed: 1,
        },
    }
}

fn bench_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search_exhaustive_m3_k3_p3");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| search_sequential(black_box(&exhaustive_space())).unwrap())
    });
    if cfg!(feature = "parallel") {
        group.bench_function("parallel", |b| {
            b.iter(|| search(black_box(&exhaustive_space())).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("search_random_m4_k4_p9");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| search_sequential(black_box(&random_space())).unwrap())
    });
    if cfg!(feature = "parallel") {
        group.bench_function("parallel", |b| {
            b.iter(|| search(black_box(&random_space())).unwrap())
        });
    }
    group.finish();
}

fn bench_solver(c: &mut Criterion) {
    // a single solve; the first branching level splits over rayon when the
    // parallel feature is on
    let inst = random_instance(5, 5, 9, 7).unwrap();
    let mut group = c.benchmark_group("optimal_makespan_m5_k5_p9");
    group.sample_size(10);
    group.bench_function("solve", |b| {
        b.iter(|| optimal_makespan(black_box(&inst)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_search, bench_solver);
criterion_main!(benches);

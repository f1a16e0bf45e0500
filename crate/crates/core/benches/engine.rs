//! Single-threaded pool against the default rayon pool on the parallel
//! hot paths. Build with `--no-default-features` to time the sequential
//! fallback instead.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use staircase_core::{decompose, oracle, socle, Interval};

fn corpus(n: usize, budget: usize, count: u64) -> Vec<Interval> {
    (0..count)
        .map(|s| oracle::random_downset(s, n, budget).into())
        .collect()
}

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    let one = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let all = rayon::ThreadPoolBuilder::new().build().unwrap();
    vec![("1-thread", one), ("default", all)]
}

fn bench_socle(c: &mut Criterion) {
    let mut g = c.benchmark_group("socle_table");
    g.sample_size(10);
    let inputs = corpus(3, 4, 4);
    for (name, pool) in pools() {
        g.bench_with_input(BenchmarkId::new(name, "n3"), &inputs, |b, xs| {
            b.iter(|| {
                pool.install(|| {
                    for i in xs {
                        black_box(socle::socle_table(black_box(i)).unwrap());
                    }
                })
            })
        });
    }
    g.finish();
}

fn bench_decompose(c: &mut Criterion) {
    let mut g = c.benchmark_group("primary_decomposition");
    g.sample_size(10);
    let inputs = corpus(2, 6, 8);
    for (name, pool) in pools() {
        g.bench_with_input(BenchmarkId::new(name, "n2"), &inputs, |b, xs| {
            b.iter(|| {
                pool.install(|| {
                    for i in xs {
                        black_box(decompose::primary_decomposition(black_box(i)).unwrap());
                    }
                })
            })
        });
    }
    g.finish();
}

fn bench_fuzz(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_fuzz");
    g.sample_size(10);
    let grid = oracle::GridSpec::cube(2, 2);
    for (name, pool) in pools() {
        g.bench_function(BenchmarkId::new(name, "4x n2"), |b| {
            b.iter(|| pool.install(|| oracle::fuzz(black_box(3), 2, 3, 4, &grid).unwrap().len()))
        });
    }
    g.finish();
}

criterion_group!(benches, bench_socle, bench_decompose, bench_fuzz);
criterion_main!(benches);

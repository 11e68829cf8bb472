//! Sequential versus rayon execution of the data-parallel kernels.
//!
//! "sequential" runs inside a one-thread pool, "parallel" in the global pool.
//! Results are identical in both; only the wall time differs.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use iterlog_core::quadrature::{self, lemma_h};
use iterlog_core::sampling::SampleConfig;
use iterlog_core::transforms::{self, StablePolynomial};
use iterlog_core::{corpus, Complex64};
use rayon::{ThreadPool, ThreadPoolBuilder};

fn pools() -> [(&'static str, Option<ThreadPool>); 2] {
    let single = ThreadPoolBuilder::new().num_threads(1).build().expect("thread pool");
    [("sequential", Some(single)), ("parallel", None)]
}

fn run<T: Send>(pool: &Option<ThreadPool>, f: impl FnOnce() -> T + Send) -> T {
    match pool {
        Some(p) => p.install(f),
        None => f(),
    }
}

fn stability(c: &mut Criterion) {
    let p = corpus::p2();
    let cfg = SampleConfig::new(1024, 50, 0).unwrap();
    let mut group = c.benchmark_group("stability_check");
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new(name, cfg.sphere_samples), |b| {
            b.iter(|| run(&pool, || transforms::stability_check(black_box(&p), &cfg).unwrap()))
        });
    }
    group.finish();
}

fn slice_integral(c: &mut Criterion) {
    let p = StablePolynomial::new(corpus::one_minus_z1(2), 1).unwrap();
    let cfg = SampleConfig::new(64, 50, 0).unwrap();
    let mut group = c.benchmark_group("slice_besov_integral");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new(name, cfg.sphere_samples), |b| {
            b.iter(|| run(&pool, || quadrature::slice_besov_integral(black_box(&p), 1, &cfg, 1e-6).unwrap()))
        });
    }
    group.finish();
}

fn monte_carlo(c: &mut Criterion) {
    let lambda = Complex64::new(1.5, 0.0);
    let g = |z: Complex64| lemma_h(3.0 / (z - lambda).norm());
    let points = 1 << 18;
    let mut group = c.benchmark_group("monte_carlo_disk");
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new(name, points), |b| {
            b.iter(|| run(&pool, || quadrature::monte_carlo_disk(g, black_box(points), 0)))
        });
    }
    group.finish();
}

fn argument(c: &mut Criterion) {
    let p = StablePolynomial::from_polynomial(corpus::p1()).unwrap();
    let cfg = SampleConfig::new(256, 50, 0).unwrap();
    let mut group = c.benchmark_group("bounded_argument_estimate");
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new(name, cfg.sphere_samples), |b| {
            b.iter(|| run(&pool, || transforms::bounded_argument_estimate(black_box(&p), &cfg).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, stability, slice_integral, monte_carlo, argument);
criterion_main!(benches);

//! Sequential vs parallel execution of the oracle trial loops.
//!
//! The library dispatches through rayon when the `parallel` feature is on;
//! these benches drive the public single-trial entry points through both an
//! explicit sequential loop and an explicit rayon loop so the two modes can
//! be compared in one run.

use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rayon::prelude::*;

use lockean_core::{theorem_trial, InstanceGenerator, Theorem};

const TRIALS: u64 = 64;

fn bench_theorem_trials(c: &mut Criterion) {
    let gen = InstanceGenerator::new(7, 3);
    let mut group = c.benchmark_group("theorem_trials");
    group.sample_size(10).measurement_time(Duration::from_secs(4));
    for theorem in [Theorem::T1, Theorem::T3, Theorem::P3] {
        group.bench_with_input(
            BenchmarkId::new("sequential", theorem),
            &theorem,
            |b, &t| {
                b.iter(|| {
                    (0..TRIALS)
                        .filter_map(|trial| theorem_trial(t, &gen, trial))
                        .count()
                })
            },
        );
        group.bench_with_input(BenchmarkId::new("parallel", theorem), &theorem, |b, &t| {
            b.iter(|| {
                (0..TRIALS)
                    .into_par_iter()
                    .filter_map(|trial| theorem_trial(t, &gen, trial))
                    .count()
            })
        });
    }
    group.finish();
}

fn bench_kl_sampling(c: &mut Criterion) {
    let gen = InstanceGenerator::new(7, 3);
    let mut group = c.benchmark_group("kl_minimality_trials");
    group.sample_size(10).measurement_time(Duration::from_secs(4));
    group.bench_function("sequential", |b| {
        b.iter(|| {
            (0..16u64)
                .filter_map(|trial| theorem_trial(Theorem::P4, &gen, trial))
                .count()
        })
    });
    group.bench_function("parallel", |b| {
        b.iter(|| {
            (0..16u64)
                .into_par_iter()
                .filter_map(|trial| theorem_trial(Theorem::P4, &gen, trial))
                .count()
        })
    });
    group.finish();
}

criterion_group!(benches, bench_theorem_trials, bench_kl_sampling);
criterion_main!(benches);

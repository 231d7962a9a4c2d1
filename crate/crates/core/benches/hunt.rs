//! Compares the rayon-parallel hunt against the sequential fallback on the
//! same seeded workload. Run with `cargo bench -p iips-core`; disable the
//! parallel feature entirely with `--no-default-features` to bench the
//! fallback build.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use iips_core::hunt::{hunt, hunt_sequential, SearchConfig, SearchMode, WeightKind};

fn config(trials: u64) -> SearchConfig {
    SearchConfig {
        seed: 42,
        trials,
        max_dim: 3,
        entry_bound: 2,
        weight_kind: WeightKind::Signature,
        mode: SearchMode::Random,
    }
}

fn bench_hunt(c: &mut Criterion) {
    let mut group = c.benchmark_group("hunt");
    group.sample_size(10);
    for trials in [200u64, 1000] {
        let cfg = config(trials);
        group.bench_with_input(
            BenchmarkId::new("parallel", trials),
            &cfg,
            |b, cfg| b.iter(|| hunt(cfg).unwrap()),
        );
        group.bench_with_input(
            BenchmarkId::new("sequential", trials),
            &cfg,
            |b, cfg| b.iter(|| hunt_sequential(cfg).unwrap()),
        );
    }
    group.finish();
}

criterion_group!(benches, bench_hunt);
criterion_main!(benches);

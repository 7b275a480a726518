use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qloop_core::exactalg::hall_littlewood_with;
use qloop_core::par::Exec;
use qloop_core::rank1rep::{run_grid, GridConfig};

fn relation_grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("relation_grid");
    group.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        let cfg = GridConfig { max_n: 3, modes: (-1, 1), order: 2, basis_degree: 1, exec, ..GridConfig::default() };
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &cfg, |b, cfg| {
            b.iter(|| assert!(run_grid(cfg).unwrap().all_passed()))
        });
    }
    group.finish();
}

fn hall_littlewood(c: &mut Criterion) {
    let mut group = c.benchmark_group("hall_littlewood");
    for exec in [Exec::Sequential, Exec::Parallel] {
        group.bench_function(BenchmarkId::from_parameter(format!("{exec:?}")), |b| {
            b.iter(|| hall_littlewood_with(exec, &[2, 1, 1], 5).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, relation_grid, hall_littlewood);
criterion_main!(benches);

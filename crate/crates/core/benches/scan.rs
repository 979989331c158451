//! Sequential versus rayon execution of the per-group catalog work.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cdkit::catalog::builtin_catalog_with;
use cdkit::par::Execution;
use cdkit::scan::{scan_catalog, CheckSet};

const MAX_ORDER: usize = 64;

fn modes() -> [(&'static str, Execution); 2] {
    [
        ("sequential", Execution::Sequential),
        ("parallel", Execution::Parallel { jobs: 0 }),
    ]
}

fn catalog_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("catalog_build");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| builtin_catalog_with(MAX_ORDER, exec).unwrap())
        });
    }
    group.finish();
}

fn catalog_scan(c: &mut Criterion) {
    let catalog = builtin_catalog_with(MAX_ORDER, Execution::Sequential).unwrap();
    let mut group = c.benchmark_group("catalog_scan");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| scan_catalog(&catalog, CheckSet::All, exec))
        });
    }
    group.finish();
}

criterion_group!(benches, catalog_build, catalog_scan);
criterion_main!(benches);

//! Sequential against parallel execution of the two hot loops: the theorem
//! suite over a reduced catalog and the Gaussian scan of a single ring.

use std::hint::black_box;

use biamalg::classify::is_gaussian_with;
use biamalg::harness::{full_selection, generate_catalog, run_suite, Caps};
use biamalg::{Exec, Ring};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn suite(c: &mut Criterion) {
    let caps = Caps {
        max_ring: 6,
        max_instance: 128,
        max_poly: 16,
        random_instances: 0,
    };
    let catalog = generate_catalog(caps, 0).unwrap();
    let selection = full_selection();
    let mut group = c.benchmark_group("suite");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(run_suite(&catalog, &selection, exec)))
        });
    }
    group.finish();
}

fn gaussian(c: &mut Criterion) {
    let base = Ring::zmod(4).unwrap();
    let ring = Ring::poly_quot(&base, "x", &[0, 0, 1]).unwrap();
    let mut group = c.benchmark_group("gaussian");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(is_gaussian_with(&ring, exec)))
        });
    }
    group.finish();
}

criterion_group!(benches, suite, gaussian);
criterion_main!(benches);

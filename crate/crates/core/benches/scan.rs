use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use k3gon_core::parallel::{map_ordered, Execution};
use k3gon_core::scan::{run_scan, ScanConfig};
use k3gon_core::verifier::{compute_alpha, AlphaOptions};
use k3gon_core::{K3Lattice, Params};

fn modes() -> [(&'static str, Execution); 2] {
    [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)]
}

fn scan_box(c: &mut Criterion) {
    let cfg = ScanConfig::new(12..=40, 10..=80, 3..=5).unwrap();
    let mut group = c.benchmark_group("scan_box");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| run_scan(&cfg, exec).unwrap())
        });
    }
    group.finish();
}

fn certification_sweep(c: &mut Criterion) {
    let pairs: Vec<(i64, i64)> = (5..=60i64)
        .flat_map(|d| (2..=240i64).map(move |g| (d, g)))
        .filter(|&(d, g)| d * d > 8 * (g - 1))
        .collect();
    let mut group = c.benchmark_group("certification_sweep");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| {
                map_ordered(&pairs, exec, |&(d, g)| {
                    K3Lattice::certified(Params::new(d, g, 3).unwrap()).is_ok()
                })
            })
        });
    }
    group.finish();
}

fn single_alpha(c: &mut Criterion) {
    let p = Params::new(40, 79, 3).unwrap();
    c.bench_function("compute_alpha_40_79_3", |b| {
        b.iter(|| compute_alpha(&p, AlphaOptions::default()))
    });
}

criterion_group!(benches, scan_box, certification_sweep, single_alpha);
criterion_main!(benches);

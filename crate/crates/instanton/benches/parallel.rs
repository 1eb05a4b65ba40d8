//! Criterion benches comparing the rayon data-parallel drivers against the
//! sequential fallback on the batch-heavy kernels.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use instanton::catalog::catalog_metric;
use instanton::par::ExecMode;
use instanton::quadrature::RadialProfile;
use instanton::theorems::verify_closure;

fn modes() -> Vec<(&'static str, ExecMode)> {
    if cfg!(feature = "parallel") {
        vec![
            ("parallel", ExecMode::Parallel),
            ("sequential", ExecMode::Sequential),
        ]
    } else {
        vec![("sequential", ExecMode::Sequential)]
    }
}

fn bench_closure_sweep(c: &mut Criterion) {
    let entry = catalog_metric("eguchi-hanson").unwrap();
    let mut group = c.benchmark_group("closure_sweep_eh");
    group.sample_size(10);
    for (name, mode) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| verify_closure(&entry, 32, 0.02, 7, mode).unwrap());
        });
    }
    group.finish();
}

fn bench_profile_build(c: &mut Criterion) {
    let entry = catalog_metric("taub-nut").unwrap();
    let mut group = c.benchmark_group("radial_profile_tn");
    group.sample_size(10);
    for (name, mode) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| RadialProfile::build(&entry, 400, mode).unwrap());
        });
    }
    group.finish();
}

criterion_group!(benches, bench_closure_sweep, bench_profile_build);
criterion_main!(benches);

//! Sequential against rayon-parallel evaluation of the same mu grid.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use paramseries::par::Execution;
use paramseries::specialfn::Representation;
use paramseries::studies::{mu_sweep, StudyConfig};
use paramseries::Real;

fn grid() -> Vec<Real> {
    (1..=8).map(|i| Real::from_ratio(i, 8, 256)).collect()
}

fn bench_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("mu_sweep");
    group.sample_size(10);
    let cases = [
        ("pi-amore", Representation::PiAmore),
        ("polylog", Representation::Polylog { x: Real::from_ratio(1, 2, 256), s: Real::from_u64(2, 256) }),
    ];
    for (name, rep) in cases {
        for exec in [Execution::Sequential, Execution::Parallel] {
            let mut cfg = StudyConfig::new(rep.clone(), grid(), Real::parse("1e-20", 256).unwrap(), 400);
            cfg.execution = exec;
            group.bench_with_input(BenchmarkId::new(name, format!("{exec:?}")), &cfg, |b, cfg| {
                b.iter(|| mu_sweep(cfg).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench_sweep);
criterion_main!(benches);

use std::hint::black_box;

use arconf_core::ar1::{Ar1Config, GaussianInnovations, InnovationSource, Path};
use arconf_core::baselines::unit_root_statistic;
use arconf_core::confseq::{strong_interval, ConfSeqState};
use arconf_core::martingale::{log_mixture, MixtureParams};
use arconf_core::stats::GammaStats;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

fn simulate(c: &mut Criterion) {
    let mut group = c.benchmark_group("simulate_path");
    for t in [1_000usize, 100_000] {
        group.throughput(Throughput::Elements(t as u64));
        group.bench_with_input(BenchmarkId::from_parameter(t), &t, |b, &t| {
            let config = Ar1Config::new(0.8, 0.0, t, 7).unwrap();
            b.iter(|| Path::gaussian(black_box(config)).unwrap());
        });
    }
    group.finish();
}

fn gaussian_draws(c: &mut Criterion) {
    c.bench_function("polar_gaussian_draw", |b| {
        let mut g = GaussianInnovations::from_seed(1);
        b.iter(|| black_box(g.draw()));
    });
}

fn streaming(c: &mut Criterion) {
    let path = Path::gaussian(Ar1Config::new(0.8, 0.0, 10_000, 3).unwrap()).unwrap();
    let mut group = c.benchmark_group("confseq");
    group.throughput(Throughput::Elements(10_000));
    group.bench_function("advance_10k", |b| {
        b.iter(|| {
            let mut state = ConfSeqState::new(0.0, MixtureParams::default(), 0.01).unwrap();
            for &y in path.observations() {
                state.advance(black_box(y)).unwrap();
            }
            state
        });
    });
    group.finish();

    let stats = GammaStats::from_values(path.values()).unwrap();
    c.bench_function("strong_interval", |b| {
        b.iter(|| strong_interval(black_box(&stats), MixtureParams::default(), 0.01).unwrap());
    });
    c.bench_function("log_mixture", |b| {
        b.iter(|| log_mixture(black_box(0.75), MixtureParams::default(), &stats).unwrap());
    });
}

fn unit_root(c: &mut Criterion) {
    c.bench_function("unit_root_statistic_grid_1024", |b| {
        let mut rep = 0u64;
        b.iter(|| {
            rep += 1;
            unit_root_statistic(GaussianInnovations::from_seed_stream(5, rep), 1024).unwrap()
        });
    });
}

criterion_group!(benches, simulate, gaussian_draws, streaming, unit_root);
criterion_main!(benches);

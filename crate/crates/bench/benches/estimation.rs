use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use garch_boot::{
    estimate_j, estimate_lyapunov, fit_qmle, negative_quasi_loglik, simulate, weighted_bootstrap_from_fit, FitConfig,
    GarchSpec, InnovationDistribution, Order, WeightScheme,
};

const GAUSS: InnovationDistribution = InnovationDistribution::Gaussian;

fn objective(c: &mut Criterion) {
    let mut g = c.benchmark_group("objective");
    for (name, spec) in
        [("arch1", GarchSpec::arch1(1.0, 0.5).unwrap()), ("garch11", GarchSpec::garch11(0.1, 0.1, 0.8).unwrap())]
    {
        let x = simulate(&spec, &GAUSS, 2000, 500, 1).unwrap();
        g.bench_function(BenchmarkId::new(name, 2000), |b| b.iter(|| negative_quasi_loglik(black_box(&spec), &x)));
    }
    g.finish();
}

fn fitting(c: &mut Criterion) {
    let mut g = c.benchmark_group("fit_qmle");
    let cfg = FitConfig::default();
    let truth = GarchSpec::arch1(1.0, 0.5).unwrap();
    for n in [500, 2000] {
        let x = simulate(&truth, &GAUSS, n, 500, 2).unwrap();
        g.bench_with_input(BenchmarkId::new("arch1", n), &x, |b, x| {
            b.iter(|| fit_qmle(x, Order::ARCH1, &cfg).unwrap())
        });
    }
    let truth = GarchSpec::garch11(0.1, 0.1, 0.8).unwrap();
    let x = simulate(&truth, &GAUSS, 2000, 500, 3).unwrap();
    g.bench_function(BenchmarkId::new("garch11", 2000), |b| b.iter(|| fit_qmle(&x, Order::GARCH11, &cfg).unwrap()));
    g.finish();
}

fn bootstrap(c: &mut Criterion) {
    let cfg = FitConfig::default();
    let x = simulate(&GarchSpec::arch1(1.0, 0.5).unwrap(), &GAUSS, 1000, 500, 4).unwrap();
    let fit = fit_qmle(&x, Order::ARCH1, &cfg).unwrap();
    let mut g = c.benchmark_group("bootstrap");
    g.sample_size(10);
    g.bench_function("wb_multinomial_b100_n1000", |b| {
        b.iter(|| weighted_bootstrap_from_fit(&x, &fit, WeightScheme::Multinomial, 100, &cfg, 5).unwrap())
    });
    g.finish();
}

fn long_simulations(c: &mut Criterion) {
    let mut g = c.benchmark_group("long_simulation");
    g.sample_size(10);
    let arch = GarchSpec::arch1(1.0, 0.5).unwrap();
    g.bench_function("estimate_j_arch1_1e5", |b| b.iter(|| estimate_j(&arch, &GAUSS, 100_000, 6).unwrap()));
    let garch = GarchSpec::garch11(0.1, 0.1, 0.8).unwrap();
    g.bench_function("estimate_j_garch11_1e5", |b| b.iter(|| estimate_j(&garch, &GAUSS, 100_000, 6).unwrap()));
    g.bench_function("lyapunov_garch11_1e5", |b| b.iter(|| estimate_lyapunov(&garch, &GAUSS, 100_000, 7).unwrap()));
    g.finish();
}

criterion_group!(benches, objective, fitting, bootstrap, long_simulations);
criterion_main!(benches);

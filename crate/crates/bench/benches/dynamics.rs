use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use pwlchaos::chaos::{ly_density_sample, snoha_interval_criterion, LyParams};
use pwlchaos::entropy::{entropy_lapcount, entropy_markov};
use pwlchaos::horseshoe::find_horseshoe;
use pwlchaos::periodic::period_set;
use pwlchaos::{builtin, PwlMap, Rational};

fn exact_core(c: &mut Criterion) {
    let tent = builtin("tent").unwrap();
    let g = builtin("sqrt_tent").unwrap();

    c.bench_function("power tent^10 (1025 nodes)", |b| {
        b.iter(|| black_box(&tent).power(10).unwrap())
    });
    c.bench_function("power sqrt_tent^16", |b| {
        b.iter(|| black_box(&g).power(16).unwrap())
    });
    c.bench_function("parse + serialize round trip", |b| {
        let text = g.to_text();
        b.iter(|| PwlMap::parse_text(black_box(&text)).unwrap().to_text())
    });
}

fn analyses(c: &mut Criterion) {
    let tent = builtin("tent").unwrap();
    let g = builtin("sqrt_tent").unwrap();

    c.bench_function("entropy_markov sqrt_tent @1e-12", |b| {
        b.iter(|| entropy_markov(black_box(&g), 512, 1e-12).unwrap())
    });
    c.bench_function("entropy_lapcount sqrt_tent n=16", |b| {
        b.iter(|| entropy_lapcount(black_box(&g), 16).unwrap())
    });
    c.bench_function("find_horseshoe sqrt_tent iterate 2", |b| {
        b.iter(|| find_horseshoe(black_box(&g), 2).unwrap().unwrap())
    });
    c.bench_function("period_set sqrt_tent p<=6", |b| {
        b.iter(|| period_set(black_box(&g), 6))
    });
    c.bench_function("snoha grid tent k=3 horizon=10", |b| {
        let delta = Rational::new(1, 2);
        let eps = Rational::zero();
        b.iter(|| snoha_interval_criterion(black_box(&tent), 3, &delta, &eps, 10))
    });
}

fn sampling(c: &mut Criterion) {
    let tent = builtin("tent").unwrap();
    let params = LyParams {
        horizon: 1_000,
        ..LyParams::default()
    };
    c.bench_function("ly_density_sample tent 200 pairs", |b| {
        b.iter(|| ly_density_sample(black_box(&tent), &params, 200, 42))
    });
}

criterion_group!(benches, exact_core, analyses, sampling);
criterion_main!(benches);

use std::f64::consts::PI;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sobmul_core::experiments::random_band_limited;
use sobmul_core::filter::LPFilterBank;
use sobmul_core::grid::GridFunction;
use sobmul_core::norms::{besov_norm, bessel_norm, slobodeckij_seminorm};
use sobmul_core::q;

fn input(m: usize) -> GridFunction {
    random_band_limited(1, m, 2.0 * PI, m / 4, 1.0, &mut ChaCha8Rng::seed_from_u64(1)).unwrap()
}

fn bessel(c: &mut Criterion) {
    let mut group = c.benchmark_group("bessel_norm");
    for m in [1 << 10, 1 << 14] {
        let u = input(m);
        group.bench_with_input(BenchmarkId::from_parameter(m), &u, |b, u| {
            b.iter(|| bessel_norm(black_box(u), &q(1, 2), &q(3, 1)))
        });
    }
    group.finish();
}

fn besov(c: &mut Criterion) {
    let bank = LPFilterBank::default();
    let mut group = c.benchmark_group("besov_norm");
    for m in [1 << 10, 1 << 14] {
        let u = input(m);
        group.bench_with_input(BenchmarkId::from_parameter(m), &u, |b, u| {
            b.iter(|| besov_norm(black_box(u), &q(1, 2), &q(2, 1), &q(2, 1), &bank))
        });
    }
    group.finish();
}

fn slobodeckij(c: &mut Criterion) {
    let mut group = c.benchmark_group("slobodeckij_seminorm");
    group.sample_size(20);
    for m in [256, 1024] {
        let u = input(m);
        group.bench_with_input(BenchmarkId::from_parameter(m), &u, |b, u| {
            b.iter(|| slobodeckij_seminorm(black_box(u), &q(1, 3), &q(2, 1)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bessel, besov, slobodeckij);
criterion_main!(benches);

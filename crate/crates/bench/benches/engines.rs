use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use frechet_core::ov::build_full_reduction;
use frechet_core::{exact, rat, weak_frechet_1d_linear, Curve, OvInstance, Variant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_pair(n: usize, seed: u64) -> (Curve, Curve) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || (0..n).map(|_| rng.random_range(-1_000_000..=1_000_000)).collect::<Vec<i64>>();
    let (a, b) = (draw(), draw());
    (Curve::from_ints(&a).unwrap(), Curve::from_ints(&b).unwrap())
}

fn weak_1d(c: &mut Criterion) {
    let mut g = c.benchmark_group("weak1d");
    for n in [1_000usize, 10_000, 100_000] {
        let (p, q) = random_pair(n, n as u64);
        g.bench_with_input(BenchmarkId::new("linear", n), &n, |b, _| {
            b.iter(|| weak_frechet_1d_linear(black_box(&p), black_box(&q)).unwrap())
        });
    }
    for n in [100usize, 200, 400] {
        let (p, q) = random_pair(n, n as u64);
        g.bench_with_input(BenchmarkId::new("quadratic", n), &n, |b, _| {
            b.iter(|| exact(Variant::WF, black_box(&p), black_box(&q)).unwrap())
        });
    }
    g.finish();
}

fn engines(c: &mut Criterion) {
    let mut g = c.benchmark_group("engines");
    g.sample_size(20);
    for n in [50usize, 100, 200] {
        let (p, q) = random_pair(n, 7 + n as u64);
        for v in [Variant::F, Variant::DF, Variant::PartialF] {
            g.bench_with_input(BenchmarkId::new(v.name(), n), &n, |b, _| {
                b.iter(|| exact(v, black_box(&p), black_box(&q)).unwrap())
            });
        }
        g.bench_with_input(BenchmarkId::new("decide-F", n), &n, |b, _| {
            b.iter(|| frechet_core::decide(Variant::F, black_box(&p), black_box(&q), rat(500_000)).unwrap())
        });
    }
    g.finish();
}

fn reduction(c: &mut Criterion) {
    let mut g = c.benchmark_group("reduction");
    g.sample_size(10);
    let inst = OvInstance::random(6, 6, 5, 0.75, true, 11).unwrap();
    let pair = build_full_reduction(&inst).unwrap();
    g.bench_function("build-frechet-6x6x5", |b| b.iter(|| build_full_reduction(black_box(&inst)).unwrap()));
    g.bench_function("frechet-6x6x5", |b| b.iter(|| exact(Variant::F, black_box(&pair.p), black_box(&pair.q)).unwrap()));
    g.finish();
}

criterion_group!(benches, weak_1d, engines, reduction);
criterion_main!(benches);

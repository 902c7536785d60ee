use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cvqft::sampling::haar_unitary;
use cvqft::{dft_matrix, evaluate, factorize, synthesize_fft};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

fn murnaghan(c: &mut Criterion) {
    let mut group = c.benchmark_group("murnaghan_factorize");
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for n in [4, 8, 16, 32] {
        let u = haar_unitary(n, &mut rng);
        group.bench_with_input(BenchmarkId::from_parameter(n), &u, |b, u| {
            b.iter(|| factorize(black_box(u)).unwrap())
        });
    }
    group.finish();
}

fn fft(c: &mut Criterion) {
    let mut group = c.benchmark_group("fft_synthesize");
    for n in [16, 64, 256, 1024] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| synthesize_fft(black_box(n)).unwrap())
        });
    }
    group.finish();
}

fn evaluation(c: &mut Criterion) {
    let mut group = c.benchmark_group("evaluate");
    for n in [16, 64] {
        let fast = synthesize_fft(n).unwrap();
        let slow = factorize(&dft_matrix(n).unwrap()).unwrap();
        group.bench_with_input(BenchmarkId::new("fft", n), &fast, |b, c| b.iter(|| evaluate(black_box(c))));
        group.bench_with_input(BenchmarkId::new("murnaghan", n), &slow, |b, c| {
            b.iter(|| evaluate(black_box(c)))
        });
    }
    group.finish();
}

criterion_group!(benches, murnaghan, fft, evaluation);
criterion_main!(benches);

use chanmaj::classical::{channel_majorizes, realize_mixing, standard_form};
use chanmaj::entropy::regularized_min_extension;
use chanmaj::games::{pr_t, simulate_game};
use chanmaj::quantum::{h_min_channel, hermitian_eigenvalues};
use chanmaj::{sample, EntropyFunction};
use chanmaj_bench::{holding_pair, quantum_channel, random_pair};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn majorization(c: &mut Criterion) {
    let mut group = c.benchmark_group("channel_majorizes");
    for n in [3, 5, 8] {
        let (big, small) = holding_pair(1, n, 4, 4);
        group.bench_with_input(BenchmarkId::new("holds", n), &n, |b, _| {
            b.iter(|| channel_majorizes(black_box(&big), black_box(&small)).unwrap())
        });
        let (x, y) = random_pair(2, n, 4, 4);
        group.bench_with_input(BenchmarkId::new("random", n), &n, |b, _| {
            b.iter(|| channel_majorizes(black_box(&x), black_box(&y)).unwrap())
        });
    }
    group.finish();

    let (big, small) = holding_pair(3, 4, 3, 3);
    let cert = channel_majorizes(&big, &small).unwrap();
    c.bench_function("realize_mixing/4x3", |b| {
        b.iter(|| realize_mixing(black_box(&big), black_box(&small), &cert).unwrap())
    });
    let (wide, _) = random_pair(4, 4, 8, 1);
    c.bench_function("standard_form/4x8", |b| {
        b.iter(|| standard_form(black_box(&wide)).unwrap())
    });
}

fn games(c: &mut Criterion) {
    let mut rng = sample::rng(5);
    let n = sample::channel(&mut rng, 4, 3);
    let g = sample::game(&mut rng, 4, 3);
    c.bench_function("pr_t/4x3", |b| {
        b.iter(|| pr_t(black_box(&n), black_box(&g)).unwrap())
    });
    c.bench_function("simulate_game/100k", |b| {
        b.iter(|| simulate_game(&n, &g, 100_000, 7, 4).unwrap())
    });
}

fn entropy(c: &mut Criterion) {
    let mut rng = sample::rng(6);
    let n = sample::channel(&mut rng, 4, 3);
    c.bench_function("regularized_min_extension/k3", |b| {
        b.iter(|| regularized_min_extension(EntropyFunction::Shannon, black_box(&n), 3).unwrap())
    });
}

fn quantum(c: &mut Criterion) {
    let mut group = c.benchmark_group("h_min_channel");
    for (a, b) in [(2, 2), (2, 4), (4, 4)] {
        let ch = quantum_channel(7, a, b);
        group.bench_with_input(BenchmarkId::from_parameter(a * b), &ch, |bench, ch| {
            bench.iter(|| h_min_channel(black_box(ch)).unwrap())
        });
    }
    group.finish();
    let ch = quantum_channel(8, 4, 4);
    c.bench_function("hermitian_eigenvalues/16", |b| {
        b.iter(|| hermitian_eigenvalues(black_box(ch.choi())).unwrap())
    });
}

criterion_group!(benches, majorization, games, entropy, quantum);
criterion_main!(benches);

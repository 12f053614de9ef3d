use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use loosepath::{apply, bisect, build_loose_path, compute_spectrum, sweep, TensorKind};

fn spectrum(c: &mut Criterion) {
    let mut g = c.benchmark_group("compute_spectrum");
    for k in [4, 51, 512] {
        g.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| compute_spectrum(black_box(k), 1e-12).unwrap())
        });
    }
    g.finish();
}

fn tensor_apply(c: &mut Criterion) {
    let mut g = c.benchmark_group("laplacian_apply");
    for k in [3, 50, 512] {
        let path = build_loose_path(k, 3).unwrap();
        let x: Vec<f64> = (0..path.n)
            .map(|i| 1.0 - (i as f64 * 0.37).sin() * 0.5)
            .collect();
        g.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, _| {
            b.iter(|| apply(TensorKind::Laplacian, &path, black_box(&x)).unwrap())
        });
    }
    g.finish();
}

fn bisection(c: &mut Criterion) {
    let f = |l: f64| (l - 2.0) * (l - 1.0).powi(49) - 1.0;
    c.bench_function("bisect_1e-12", |b| {
        b.iter(|| bisect(f, black_box(2.0), 3.0, 1e-12).unwrap())
    });
}

fn sweep_range(c: &mut Criterion) {
    let mut g = c.benchmark_group("sweep");
    g.sample_size(10);
    g.bench_function("3..=50", |b| b.iter(|| sweep(black_box(3), 50).unwrap()));
    g.finish();
}

criterion_group!(benches, spectrum, tensor_apply, bisection, sweep_range);
criterion_main!(benches);

use std::hint::black_box;

use ciq_core::random::{random_scalar_field, random_vector_field, seeded_rng};
use ciq_core::*;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn transforms(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectral");
    for n in [9, 15, 31] {
        let g = LatticeGrid::new(n, 1.0).unwrap();
        let mut rng = seeded_rng(1);
        let f = random_scalar_field(&g, &mut rng);
        let v = random_vector_field(&g, &mut rng);
        group.bench_with_input(BenchmarkId::new("dft_forward", n), &f, |b, f| b.iter(|| dft_forward(black_box(f))));
        let s = dft_forward(&f);
        group.bench_with_input(BenchmarkId::new("dft_inverse", n), &s, |b, s| b.iter(|| dft_inverse(black_box(s))));
        group.bench_with_input(BenchmarkId::new("transverse_project", n), &v, |b, v| {
            b.iter(|| transverse_project(black_box(v)))
        });
    }
    group.finish();
}

fn polarization(c: &mut Criterion) {
    let g = LatticeGrid::new(15, 1.0).unwrap();
    c.bench_function("build_polarization_basis n=15", |b| b.iter(|| build_polarization_basis(black_box(&g))));
}

criterion_group!(benches, transforms, polarization);
criterion_main!(benches);

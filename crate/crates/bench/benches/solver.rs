use std::hint::black_box;

use ciq_core::solver::propagator;
use ciq_core::*;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_brackets");
    group.sample_size(10);
    for n in [3, 5] {
        let g = LatticeGrid::new(n, 1.0).unwrap();
        let kg = build_kg_system(&KgScenario::new(g, 1.0).unwrap());
        group.bench_with_input(BenchmarkId::new("kg", n), &kg, |b, sys| b.iter(|| solve_brackets(black_box(sys))));
        let mx = build_maxwell_system(&MaxwellScenario::new(g));
        group.bench_with_input(BenchmarkId::new("maxwell", n), &mx, |b, sys| b.iter(|| solve_brackets(black_box(sys))));
    }
    group.finish();
}

fn null_basis(c: &mut Criterion) {
    let sys = build_maxwell_system(&MaxwellScenario::new(LatticeGrid::new(5, 1.0).unwrap()));
    c.bench_function("constraint_null_basis maxwell n=5", |b| {
        b.iter(|| constraint_null_basis(black_box(sys.constraints()), 1e-10))
    });
}

fn expm(c: &mut Criterion) {
    let sys = build_kg_system(&KgScenario::new(LatticeGrid::new(5, 1.0).unwrap(), 1.0).unwrap());
    c.bench_function("propagator kg n=5 t=1", |b| b.iter(|| propagator(black_box(&sys), 1.0)));
}

criterion_group!(benches, solve, null_basis, expm);
criterion_main!(benches);

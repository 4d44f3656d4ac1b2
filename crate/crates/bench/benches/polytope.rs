use std::hint::black_box;

use alcove_core::dynamics::lax_local;
use alcove_core::fiber::fiber_report;
use alcove_core::polytope::{cyclic_orbits, enumerate_vertices_by_subsets, face_lattice, simplest_type_ii_vertices};
use alcove_core::spectral::{solve_a0, solve_u};
use alcove_core::{ExactRational, PolytopeModel};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("vertex enumeration");
    g.sample_size(10);
    for (n, p, q) in [(7, 9, 50), (9, 3, 10), (11, 3, 20)] {
        let x = ExactRational::new(p, q);
        g.bench_with_input(BenchmarkId::new("tree search", n), &x, |b, x| {
            b.iter(|| PolytopeModel::compute(black_box(n), x).unwrap())
        });
    }
    let x = ExactRational::new(9, 50);
    let model = PolytopeModel::compute(7, &x).unwrap();
    g.bench_function("subset scan n=7", |b| b.iter(|| enumerate_vertices_by_subsets(black_box(&model))));
    g.finish();
}

fn lattice(c: &mut Criterion) {
    let model = PolytopeModel::compute(9, &ExactRational::new(3, 10)).unwrap();
    c.bench_function("face lattice n=9", |b| b.iter(|| face_lattice(black_box(&model))));
    c.bench_function("cyclic classes n=9", |b| b.iter(|| cyclic_orbits(black_box(&model))));
}

fn spectral(c: &mut Criterion) {
    let x = ExactRational::new(23, 120);
    let (_, is) = simplest_type_ii_vertices(7, &x);
    let v = &is[1];
    c.bench_function("solve_u n=7", |b| b.iter(|| solve_u(black_box(v), &x).unwrap()));
    let u = solve_u(v, &x).unwrap();
    c.bench_function("solve_a0 n=7", |b| b.iter(|| solve_a0(black_box(v), &x, &u).unwrap()));
    c.bench_function("fiber_report n=7", |b| b.iter(|| fiber_report(black_box(v), &x).unwrap()));
    let xi = alcove_core::AlcovePoint::barycentre(7);
    let theta = [0.3, 1.1, 2.0, 0.7, 4.2, 5.5];
    c.bench_function("lax_local n=7", |b| b.iter(|| lax_local(black_box(&xi), &theta, &x).unwrap()));
}

criterion_group!(benches, enumeration, lattice, spectral);
criterion_main!(benches);

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use mvgrass::grass::{enumerate_points, DEFAULT_BUDGET};
use mvgrass::moment::{min_formal_poincare, skeleton, DEFAULT_GRAPH_BUDGET};
use mvgrass::paving::{contracting_cell, greedy_paving, paving_121};
use mvgrass::springer::{criterion_oracle, RegularDiagonal};
use mvgrass::{LusztigDatum, MVPolytope, PrimeField};

fn polytope(n: [u32; 3]) -> MVPolytope {
    MVPolytope::new(LusztigDatum::w121(n), [0, 0, 0])
}

fn points(c: &mut Criterion) {
    let f = polytope([2, 1, 1]).family().clone();
    let field = PrimeField::new(3).unwrap();
    c.bench_function("enumerate X(P(2,1,1)) over F_3", |b| {
        b.iter(|| enumerate_points(black_box(&f), field, DEFAULT_BUDGET).unwrap())
    });
}

fn cells(c: &mut Criterion) {
    let p = polytope([2, 1, 1]);
    let field = PrimeField::new(2).unwrap();
    c.bench_function("contracting cell B0 of P(2,1,1) over F_2", |b| {
        b.iter(|| {
            contracting_cell(black_box(&p), 0)
                .unwrap()
                .points(field, 0)
                .unwrap()
        })
    });
}

fn pavings(c: &mut Criterion) {
    let d = LusztigDatum::w121([2, 1, 1]);
    let f = polytope([2, 1, 1]).family().clone();
    let mut g = c.benchmark_group("paving P(2,1,1)");
    g.sample_size(10);
    g.bench_function("greedy", |b| {
        b.iter(|| greedy_paving(black_box(&f), &[2, 3], DEFAULT_BUDGET).unwrap())
    });
    g.bench_function("iwahori", |b| {
        b.iter(|| paving_121(black_box(&d), &[2, 3], DEFAULT_BUDGET).unwrap())
    });
    g.finish();
}

fn betti(c: &mut Criterion) {
    let g = skeleton(polytope([2, 1, 1]).family()).unwrap();
    c.bench_function("minimal formal Betti numbers of P(2,1,1)", |b| {
        b.iter(|| min_formal_poincare(black_box(&g), DEFAULT_GRAPH_BUDGET).unwrap())
    });
}

fn springer(c: &mut Criterion) {
    let p = polytope([2, 1, 1]);
    let gamma = RegularDiagonal::from_pattern(PrimeField::new(3).unwrap(), [2, 1, 1]).unwrap();
    c.bench_function("affine-cell oracle, P(2,1,1), c=(2,1,1), q=3", |b| {
        b.iter(|| criterion_oracle(black_box(&p), 0, &gamma, DEFAULT_BUDGET).unwrap())
    });
}

criterion_group!(benches, points, cells, pavings, betti, springer);
criterion_main!(benches);

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use fnr_core::exactpoly::{sylvester_resultant_at, BigRational, ResultantPoint};
use fnr_core::oracle::oracle_lambda_max;
use fnr_core::{boundary_curve, lambda_max, Complex64};

fn closed_form(c: &mut Criterion) {
    c.bench_function("lambda_max", |b| {
        b.iter(|| lambda_max(black_box(0.7), black_box(0.5)))
    });
    c.bench_function("boundary_curve/720", |b| {
        b.iter(|| boundary_curve(black_box(0.5), 720).unwrap())
    });
}

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle");
    g.sample_size(20);
    for n in [100, 400] {
        g.bench_function(format!("oracle_lambda_max/N={n}"), |b| {
            b.iter(|| oracle_lambda_max(black_box(0.7), Complex64::new(1.0, 0.0), n).unwrap())
        });
    }
    g.finish();
}

fn exact(c: &mut Criterion) {
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let point = ResultantPoint::new(q(1, 2), q(-317, 411), q(88, 953));
    c.bench_function("sylvester_resultant_at", |b| {
        b.iter(|| sylvester_resultant_at(black_box(&point)).unwrap())
    });
}

criterion_group!(benches, closed_form, oracle, exact);
criterion_main!(benches);

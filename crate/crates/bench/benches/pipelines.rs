use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use semiformal::exactnum::enclose_exp;
use semiformal::hilbert::{compute_br, hilbert_report};
use semiformal::rational::{build_vtable, partial_fractions};
use semiformal::suites::run_suite_by_id;
use semiformal::Rat;
use semiformal_bench::*;
use std::hint::black_box;

fn enclosures(c: &mut Criterion) {
    let mut g = c.benchmark_group("enclose_exp");
    for digits in [10u32, 40, 120] {
        let eps = tolerance(digits);
        let q = Rat::new(7.into(), 3.into());
        g.bench_with_input(BenchmarkId::from_parameter(digits), &eps, |b, eps| {
            b.iter(|| enclose_exp(black_box(&q), eps).unwrap())
        });
    }
    g.finish();
}

fn vtables(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_vtable");
    g.sample_size(10);
    for (name, inst, n, k) in [("e", bbr_e(), 200, 12), ("mixed", bbr_mixed(), 120, 6)] {
        g.bench_function(name, |b| b.iter(|| build_vtable(&inst, n, k).unwrap()));
    }
    g.finish();
}

fn hilbert(c: &mut Criterion) {
    let mut g = c.benchmark_group("hilbert");
    g.sample_size(10);
    let quad = hilbert_quadratic();
    for r in [2usize, 4, 8] {
        g.bench_with_input(BenchmarkId::new("compute_br", r), &r, |b, &r| {
            b.iter(|| compute_br(&quad, r))
        });
    }
    let lin = hilbert_linear();
    let eps = tolerance(8);
    g.bench_function("report_r4", |b| b.iter(|| hilbert_report(&lin, 4, &eps).unwrap()));
    g.finish();
}

fn rational(c: &mut Criterion) {
    let f = ratfun_four_poles();
    c.bench_function("partial_fractions", |b| b.iter(|| partial_fractions(black_box(&f)).unwrap()));
    let mut g = c.benchmark_group("suite");
    g.sample_size(10);
    g.bench_function("series.ring/20", |b| b.iter(|| run_suite_by_id("series.ring", 42, 20)));
    g.finish();
}

criterion_group!(benches, enclosures, vtables, hilbert, rational);
criterion_main!(benches);

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use recurlab::polyalgebra::{psi, real_roots};
use recurlab::rulecore::{ints, parse_rule, ratio_limit};

fn ratio_limits(c: &mut Criterion) {
    let mut g = c.benchmark_group("ratio_limit");
    for (name, rule) in [("plastic", "u[n-2]+u[n-3]"), ("golden", "u[n-1]+u[n-2]"), ("lags_1_5", "u[n-1]+u[n-5]")] {
        let rule = parse_rule(rule).unwrap();
        let init = ints(&vec![1; rule.order()]);
        g.bench_function(name, |b| b.iter(|| ratio_limit(black_box(&rule), &init, 1e-15).unwrap()));
    }
    g.finish();
}

fn psi_roots(c: &mut Criterion) {
    c.bench_function("psi_real_roots k=6 m=8", |b| b.iter(|| psi::psi_real_roots(black_box(6), 8, 1e-20)));
    let p = psi::build_psi(5, 7);
    c.bench_function("real_roots degree 13", |b| b.iter(|| real_roots(black_box(&p), 1e-30)));
    c.bench_function("phi k=6 at 50 digits", |b| b.iter(|| psi::phi(black_box(6), 50)));
}

criterion_group!(benches, ratio_limits, psi_roots);
criterion_main!(benches);

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use recurlab::dynamics::{bifurcation_scan, classify_orbit, LagMap, OrbitParams};
use recurlab::identities::{verify_identity, Grid};
use recurlab::words::{kgram_frequencies, WordSystem};

fn identities(c: &mut Criterion) {
    let grid = Grid::standard();
    c.bench_function("verify XV standard grid", |b| b.iter(|| verify_identity(black_box("XV"), &grid).unwrap()));
    c.bench_function("verify GELIN standard grid", |b| b.iter(|| verify_identity(black_box("GELIN"), &grid).unwrap()));
}

fn dynamics(c: &mut Criterion) {
    let map = LagMap::standard(13.2, (3, 1)).unwrap();
    let params = OrbitParams::default();
    c.bench_function("classify weird orbit", |b| b.iter(|| classify_orbit(black_box(&map), &params).unwrap()));
    let mut g = c.benchmark_group("scan");
    g.sample_size(10);
    g.bench_function("(3,1) over [10, 11], 51 points", |b| {
        b.iter(|| bifurcation_scan(black_box(&map), 10.0, 11.0, 51, 1e-4, &params).unwrap())
    });
    g.finish();
}

fn words(c: &mut Criterion) {
    let init = ["A", "AB", "CA"].map(String::from).to_vec();
    let sys = WordSystem::new(init, &[3, 2]).unwrap();
    c.bench_function("3-grams through u_30", |b| b.iter(|| kgram_frequencies(black_box(&sys), 3, 30).unwrap()));
}

criterion_group!(benches, identities, dynamics, words);
criterion_main!(benches);

use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use morita_bench::random_matrix;
use morita_core::algebra::tensor_over;
use morita_core::bicat::coherence_suite;
use morita_core::corpus;
use morita_core::cstar::CstarCalculus;
use morita_core::groupoid::{hs_tensor, morita_decide, opposite_bibundle, GroupoidCalculus};
use morita_core::morita::certify_equivalence;
use morita_core::{Bimodule, FiniteGroupoid, IsoSearch, PrimeField};

fn linalg(c: &mut Criterion) {
    let mut g = c.benchmark_group("rref");
    for n in [16, 32, 64] {
        let m = random_matrix(3, n, n, 7);
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| black_box(m.rref())));
    }
    g.finish();
}

fn rings(c: &mut Criterion) {
    let f3 = PrimeField::new(3).unwrap();
    let (col, row) = (Bimodule::column_module(f3, 3), Bimodule::row_module(f3, 3));
    c.bench_function("tensor col3 x row3 over F3", |b| b.iter(|| tensor_over(black_box(&col), &row).unwrap()));
    let search = IsoSearch::default();
    c.bench_function("certify col3 over F3", |b| {
        b.iter(|| certify_equivalence(black_box(&col), &search).unwrap())
    });
}

fn groupoids(c: &mut Criterion) {
    let pt = Arc::new(FiniteGroupoid::point());
    let p4 = Arc::new(FiniteGroupoid::pair(4));
    c.bench_function("morita_decide pair4 vs point", |b| b.iter(|| morita_decide(black_box(&p4), &pt)));
    let m = morita_decide(&p4, &pt).certificate().cloned().unwrap();
    let back = opposite_bibundle(&m);
    c.bench_function("hs_tensor certificate round trip", |b| b.iter(|| hs_tensor(black_box(&m), &back).unwrap()));
    let cells: Vec<_> = corpus::groupoid_coherence_cells().unwrap().into_iter().map(|n| n.value).collect();
    c.bench_function("groupoid coherence suite", |b| {
        b.iter(|| coherence_suite(&GroupoidCalculus, black_box(&cells), 4, 2, 0).unwrap())
    });
}

fn cstar(c: &mut Criterion) {
    let cells = corpus::multimatrix_coherence_cells();
    c.bench_function("multimatrix coherence suite", |b| {
        b.iter(|| coherence_suite(&CstarCalculus, black_box(&cells), 4, 1, 0).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = linalg, rings, groupoids, cstar
}
criterion_main!(benches);

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use quadric_core::linalg::{jordan_chevalley, minimal_polynomial, rat, Matrix};
use quadric_core::quadric::catalog::{catalog_model, reference_data, ActionKind};
use quadric_core::quadric::fuzz::{compatible_forms, fuzz_search};
use quadric_core::quadric::{canonicalize_n2, verify_certificate};
use quadric_core::{ht_forward, split_generating_subspace, Algebra, Subspace};

/// A dense integer matrix with a fixed pattern.
fn dense(n: usize) -> Matrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| ((i * 7 + j * 3) % 11) as i64 - 5).collect())
        .collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    Matrix::from_i64(&refs)
}

fn linalg(c: &mut Criterion) {
    let m = dense(8);
    c.bench_function("rank_kernel 8x8", |b| b.iter(|| black_box(&m).rank_kernel()));
    c.bench_function("minimal_polynomial 8x8", |b| {
        b.iter(|| minimal_polynomial(black_box(&m)))
    });

    // split matrix with a 3-block: conjugate of diag(1,1,1,2,2,0) plus a nilpotent
    let mut t = Matrix::diagonal(&[rat(1), rat(1), rat(1), rat(2), rat(2), rat(0)]);
    t.set(0, 1, rat(1));
    t.set(1, 2, rat(1));
    t.set(3, 4, rat(1));
    let p = Matrix::from_i64(&[
        &[1, 1, 0, 0, 0, 0],
        &[0, 1, 1, 0, 0, 0],
        &[0, 0, 1, 1, 0, 0],
        &[0, 0, 0, 1, 1, 0],
        &[0, 0, 0, 0, 1, 1],
        &[1, 0, 0, 0, 0, 2],
    ]);
    let conj = &(&p * &t) * &p.inverse().expect("invertible");
    c.bench_function("jordan_chevalley 6x6", |b| {
        b.iter(|| jordan_chevalley(black_box(&conj)))
    });
}

fn algebra(c: &mut Criterion) {
    let a = Algebra::product(&[Algebra::truncated_polynomial(3), Algebra::truncated_polynomial(2)]);
    let mut gens = vec![vec![rat(0); 5]; 2];
    gens[0][1] = rat(1);
    gens[1][3] = rat(1);
    gens[1][4] = rat(1);
    let u = Subspace::from_spanning(5, &gens).expect("subspace");
    c.bench_function("split_generating_subspace dim 5", |b| {
        b.iter(|| split_generating_subspace(black_box(&a), black_box(&u)))
    });
    let model = catalog_model(ActionKind::Additive, 4).expect("catalog entry");
    c.bench_function("ht_forward additive n=4", |b| {
        b.iter(|| ht_forward(black_box(&model.rep)))
    });
}

fn quadric(c: &mut Criterion) {
    let data = reference_data();
    c.bench_function("compatible_forms mixed n=2", |b| {
        b.iter(|| compatible_forms(black_box(&data)))
    });
    let canonical = canonicalize_n2(&data).expect("canonical form");
    c.bench_function("canonicalize_n2", |b| b.iter(|| canonicalize_n2(black_box(&data))));
    c.bench_function("verify canonical certificate", |b| {
        b.iter(|| verify_certificate(black_box(&canonical.certificate)))
    });

    let mut group = c.benchmark_group("fuzz");
    group.sample_size(10);
    group.bench_function("fuzz_search (3,1,2) x200", |b| {
        b.iter(|| fuzz_search(3, 1, 2, 200, black_box(42)))
    });
    group.bench_function("fuzz_search (4,2,2) x200", |b| {
        b.iter(|| fuzz_search(4, 2, 2, 200, black_box(42)))
    });
    group.finish();
}

criterion_group!(benches, linalg, algebra, quadric);
criterion_main!(benches);

//! Benchmarks for the hot kernels: elimination over F_p, the orbit scan,
//! the closed-form census, surjective-number search, and the two H¹ routes.

use std::sync::Arc;

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use fsiglab::agl::AffineGroup;
use fsiglab::fp::{MatFp, PrimeField};
use fsiglab::kg::census::census;
use fsiglab::kg::orbits::scan_degree;
use fsiglab::kg::{bar_h1, det_index_of_family, h1_lhs, Representation, BAR_H1_FULL_TABLE_CAP};
use fsiglab::surjlab::{surj_number, FdModule, LocalAlgebra, SearchConfig};

fn bench_rref(c: &mut Criterion) {
    let f = PrimeField::new(31).unwrap();
    let n = 120;
    let m = MatFp::from_fn(f, n, n, |i, j| ((i * 37 + j * 11 + 5) % 31) as u64);
    c.bench_function("rref_120x120_f31", |b| b.iter(|| black_box(&m).rref().rank));
}

fn bench_scan(c: &mut Criterion) {
    let group = AffineGroup::new(7).unwrap();
    c.bench_function("scan_p7_r2_d8", |b| {
        b.iter(|| scan_degree(black_box(&group), 2, 8, false).unwrap().census)
    });
}

fn bench_census(c: &mut Criterion) {
    c.bench_function("census_p7_r4_d21", |b| b.iter(|| census(7, 4, 21)));
}

fn bench_surj(c: &mut Criterion) {
    let alg = LocalAlgebra::truncated_polynomial(2, 2);
    let cfg = SearchConfig::default();
    let m = FdModule::parse(&alg, "R+k").unwrap().power(3);
    let k = FdModule::simple(Arc::clone(&alg));
    c.bench_function("surj_rk3_to_k_f2x2", |b| {
        b.iter(|| surj_number(black_box(&m), &k, &cfg).unwrap().value)
    });
}

fn bench_h1(c: &mut Criterion) {
    let group = AffineGroup::new(5).unwrap();
    let nu = det_index_of_family(&group, 2);
    let cover = Representation::projective_cover(Arc::clone(&group), nu);
    let rad = cover.sub_rep(&cover.radical_subspace()).unwrap();
    let m = fsiglab::kg::orbits::symmetric_power_rep(&group, 1, 3).tensor(&rad);
    c.bench_function("h1_lhs_dim140", |b| b.iter(|| h1_lhs(black_box(&m))));
    c.bench_function("h1_cocycle_dim140", |b| {
        b.iter(|| bar_h1(black_box(&m), BAR_H1_FULL_TABLE_CAP))
    });
}

criterion_group!(benches, bench_rref, bench_scan, bench_census, bench_surj, bench_h1);
criterion_main!(benches);

//! Hot-path measurements: exact series arithmetic, the Weierstrass
//! expansion, the two-variable group law, the parametrization solve, and
//! one full identity verification.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ellog_core::{
    conductor_11_curve, eta_product_coeffs, honda_group_law, modular_xy, rat, verify_logalg1a,
    wp_series, NewformCoeffs, Rat, TruncatedSeries, Var,
};

/// Deterministic dense series with small rational coefficients.
fn sample_series(prec: i64, seed: i64) -> TruncatedSeries<Rat> {
    let coeffs = (0..prec - 1)
        .map(|k| {
            let n = (seed * 37 + k * k) % 13 - 6;
            let d = 1 + ((seed + k) % 5).abs();
            rat(n, d)
        })
        .collect();
    TruncatedSeries::new(Var::T, 1, coeffs, prec)
}

fn nf_level_11(count: usize) -> NewformCoeffs {
    eta_product_coeffs(11, count).expect("built-in table")
}

fn bench_series_ops(c: &mut Criterion) {
    let a = sample_series(40, 1);
    let b = sample_series(40, 2);
    c.bench_function("series_mul_t40", |bench| {
        bench.iter(|| black_box(&a).mul(black_box(&b)))
    });
    c.bench_function("series_compose_t40", |bench| {
        bench.iter(|| black_box(&a).compose(black_box(&b)).unwrap())
    });
    c.bench_function("series_reverse_t40", |bench| {
        bench.iter(|| black_box(&a).reverse().unwrap())
    });
}

fn bench_wp_series(c: &mut Criterion) {
    let curve = conductor_11_curve();
    c.bench_function("wp_series_z60", |bench| {
        bench.iter(|| wp_series(black_box(&curve.g2), black_box(&curve.g3), 60))
    });
}

fn bench_group_law(c: &mut Criterion) {
    let nf = nf_level_11(48);
    c.bench_function("honda_group_law_deg20", |bench| {
        bench.iter(|| honda_group_law(black_box(&nf), 20).unwrap())
    });
}

fn bench_parametrization(c: &mut Criterion) {
    let nf = nf_level_11(48);
    let curve = conductor_11_curve();
    c.bench_function("modular_xy_q30", |bench| {
        bench.iter(|| modular_xy(black_box(&nf), black_box(&curve), 30).unwrap())
    });
}

fn bench_verify(c: &mut Criterion) {
    let nf = nf_level_11(48);
    let curve = conductor_11_curve();
    let mut group = c.benchmark_group("verify");
    group.sample_size(20);
    group.bench_function("logalg1a_t20", |bench| {
        bench.iter(|| verify_logalg1a(black_box(&nf), black_box(&curve), 20).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_series_ops,
    bench_wp_series,
    bench_group_law,
    bench_parametrization,
    bench_verify
);
criterion_main!(benches);

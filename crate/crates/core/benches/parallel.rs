//! Sequential vs. rayon timings for the three data-parallel kernels:
//! one DDT row, the full differential scan, and monodromy sampling.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use diffuni::gf2n::FieldContext;
use diffuni::poly::{Degree10Coeffs, Poly};
use diffuni::theorems::{monodromy_stats_seq, StatsMode};
use diffuni::uniformity::{ddt_row_seq, delta_full_seq};

#[cfg(feature = "parallel")]
use diffuni::theorems::monodromy_stats_par;
#[cfg(feature = "parallel")]
use diffuni::uniformity::{ddt_row_par, delta_full_par};

fn bench_ddt_row(c: &mut Criterion) {
    let ctx = FieldContext::new(16, None).unwrap();
    let f = Poly::parse(&ctx, "1,0,0,0,0,0,0,1,0,0,0").unwrap();
    let mut group = c.benchmark_group("ddt_row_n16");
    group.bench_function("seq", |b| {
        b.iter(|| ddt_row_seq(&ctx, &f, black_box(0x1e)).unwrap())
    });
    #[cfg(feature = "parallel")]
    group.bench_function("par", |b| {
        b.iter(|| ddt_row_par(&ctx, &f, black_box(0x1e)).unwrap())
    });
    group.finish();
}

fn bench_delta_full(c: &mut Criterion) {
    let ctx = FieldContext::new(12, None).unwrap();
    let f = Poly::parse(&ctx, "1,0,0,0,0,0,0,1,0,0,0").unwrap();
    let mut group = c.benchmark_group("delta_full_n12");
    group.sample_size(10);
    group.bench_function("seq", |b| {
        b.iter(|| delta_full_seq(&ctx, black_box(&f)).unwrap())
    });
    #[cfg(feature = "parallel")]
    group.bench_function("par", |b| {
        b.iter(|| delta_full_par(&ctx, black_box(&f)).unwrap())
    });
    group.finish();
}

fn bench_monodromy(c: &mut Criterion) {
    let ctx = FieldContext::new(13, None).unwrap();
    let coeffs = Degree10Coeffs::new([1, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0]).unwrap();
    let mut group = c.benchmark_group("monodromy_s3_n13");
    group.sample_size(20);
    group.bench_function("seq", |b| {
        b.iter(|| {
            monodromy_stats_seq(&ctx, &coeffs, 1, StatsMode::CubicS3, black_box(2048), 42).unwrap()
        })
    });
    #[cfg(feature = "parallel")]
    group.bench_function("par", |b| {
        b.iter(|| {
            monodromy_stats_par(&ctx, &coeffs, 1, StatsMode::CubicS3, black_box(2048), 42).unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, bench_ddt_row, bench_delta_full, bench_monodromy);
criterion_main!(benches);

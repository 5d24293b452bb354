use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use hoqe::qe;
use hoqe::realify::realify;
use hoqe::transfer::{run_transfer, synthetic_stats, TransferOptions};
use hoqe::Algebra;
use hoqe_bench::{alg, real_blocks, CENTER, COMMUTANT, INVERSE};

fn backend(c: &mut Criterion) {
    for (name, phi) in real_blocks() {
        c.bench_function(&format!("qe_{name}"), |b| {
            b.iter(|| black_box(qe::eliminate(&phi).unwrap()))
        });
    }
}

fn transfer(c: &mut Criterion) {
    let opts = TransferOptions::default();
    for (name, src, algebra) in [
        ("quat_inverse", INVERSE, Algebra::Quat),
        ("quat_commutant", COMMUTANT, Algebra::Quat),
        ("oct_center", CENTER, Algebra::Oct),
    ] {
        let phi = alg(src);
        c.bench_function(&format!("transfer_{name}"), |b| {
            b.iter(|| black_box(run_transfer(&phi, algebra, &opts).unwrap()))
        });
    }
    let phi = alg(INVERSE);
    c.bench_function("realify_oct_inverse", |b| {
        b.iter(|| black_box(realify(Algebra::Oct, &phi).unwrap()))
    });
    c.bench_function("stats_r3_m2_l2", |b| {
        b.iter(|| black_box(synthetic_stats(3, 2, 2, Algebra::Quat).unwrap()))
    });
}

criterion_group!(benches, backend, transfer);
criterion_main!(benches);

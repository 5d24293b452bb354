use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use hoqe::invariants::{oct_scheme, quat_scheme};
use hoqe::AlgebraElement;
use hoqe_bench::{octonions, quaternions};

fn products(c: &mut Criterion) {
    let qs = quaternions(64);
    let os = octonions(64);
    c.bench_function("quat_mul_64", |b| {
        b.iter(|| {
            for w in qs.windows(2) {
                black_box(w[0].mul(&w[1]));
            }
        })
    });
    c.bench_function("oct_mul_64", |b| {
        b.iter(|| {
            for w in os.windows(2) {
                black_box(w[0].mul(&w[1]));
            }
        })
    });
    c.bench_function("oct_norm_64", |b| {
        b.iter(|| {
            for x in &os {
                black_box(x.norm());
            }
        })
    });
}

fn invariants(c: &mut Criterion) {
    let q3 = quat_scheme(3);
    let o2 = oct_scheme(2);
    let qs = quaternions(3);
    let os = octonions(2);
    c.bench_function("quat_invariants_m3", |b| {
        b.iter(|| black_box(q3.eval(&qs).unwrap()))
    });
    c.bench_function("oct_invariants_m2", |b| {
        b.iter(|| black_box(o2.eval(&os).unwrap()))
    });
}

criterion_group!(benches, products, invariants);
criterion_main!(benches);

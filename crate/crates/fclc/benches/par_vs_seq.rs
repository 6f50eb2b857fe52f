//! Compares the rayon-parallel core against the sequential fallback on
//! the two hot paths that expose both variants: full codebook
//! verification and the exhaustive decode replay.
//!
//! Run with `cargo bench -p fclc`. The parallel wins grow with codebook
//! size; at these desk-scale shapes the point is to confirm the parallel
//! path carries no regression and returns identical results.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use fclc::constructions::{
    construct_lee_weight_fclc, construct_modsum_fclc, verify_fclc_par, verify_fclc_seq,
};
use fclc::channel::{exhaustive_decode_check_par, exhaustive_decode_check_seq};
use fclc::DEFAULT_CAP;

fn bench_verify(c: &mut Criterion) {
    // 343 records → ~59k ordered pairs of length-5 codewords.
    let cb = construct_modsum_fclc(7, 3, 1, DEFAULT_CAP).unwrap();
    let mut group = c.benchmark_group("verify_fclc_q7_k3_t1");
    group.bench_function("seq", |b| {
        b.iter(|| verify_fclc_seq(black_box(&cb), 1).unwrap())
    });
    group.bench_function("par", |b| {
        b.iter(|| verify_fclc_par(black_box(&cb), 1).unwrap())
    });
    group.finish();
}

fn bench_decode_check(c: &mut Criterion) {
    // 125 codewords × 9 errors, each decoded against all 125 codewords.
    let cb = construct_lee_weight_fclc(5, 3, 1, DEFAULT_CAP).unwrap();
    let mut group = c.benchmark_group("exhaustive_decode_check_q5_k3_t1");
    group.bench_function("seq", |b| {
        b.iter(|| exhaustive_decode_check_seq(black_box(&cb), 1, DEFAULT_CAP).unwrap())
    });
    group.bench_function("par", |b| {
        b.iter(|| exhaustive_decode_check_par(black_box(&cb), 1, DEFAULT_CAP).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_verify, bench_decode_check);
criterion_main!(benches);

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_bigint::BigInt;
use ostrowski::kernel::DEFAULT_MAX_BITS;
use ostrowski::{
    convergents, encode_integer, expand_absolute, golden, parse_real, series_partials, silver,
    solve, CfStream, SeriesKind, SolveVariant,
};
use std::str::FromStr;

fn cf_digits(c: &mut Criterion) {
    c.bench_function("cf_digits/silver_256", |b| {
        b.iter(|| {
            let cf = CfStream::from_real(&silver()).unwrap();
            for k in 1..=256usize {
                black_box(cf.digit(k).unwrap());
            }
        })
    });
    c.bench_function("cf_digits/rule_k_256", |b| {
        b.iter(|| {
            let cf = CfStream::from_rule(|k: u64| BigInt::from(k));
            for k in 1..=256usize {
                black_box(cf.digit(k).unwrap());
            }
        })
    });
}

fn convergent_table(c: &mut Criterion) {
    c.bench_function("convergents/silver_64", |b| {
        let cf = CfStream::from_real(&silver()).unwrap();
        b.iter(|| black_box(convergents(&cf, 64).unwrap()))
    });
}

fn numeration(c: &mut Criterion) {
    let big = BigInt::from_str("1000000000000").unwrap();
    c.bench_function("encode_int/silver_1e12", |b| {
        let cf = CfStream::from_real(&silver()).unwrap();
        b.iter(|| black_box(encode_integer(&big, &cf).unwrap()))
    });
}

fn expansion(c: &mut Criterion) {
    let half = parse_real("rat:1/2", DEFAULT_MAX_BITS).unwrap();
    c.bench_function("expand_abs/golden_half_64", |b| {
        let cf = CfStream::from_real(&golden()).unwrap();
        b.iter(|| black_box(expand_absolute(&half, &cf, 64).unwrap()))
    });
}

fn solver(c: &mut Criterion) {
    let beta = parse_real("rat:1/3", DEFAULT_MAX_BITS).unwrap();
    c.bench_function("solve_forward/golden_16", |b| {
        let cf = CfStream::from_real(&golden()).unwrap();
        b.iter(|| black_box(solve(&cf, SolveVariant::Forward, Some(&beta), 16).unwrap()))
    });
}

fn series(c: &mut Criterion) {
    c.bench_function("series_abs/golden_64", |b| {
        let cf = CfStream::from_real(&golden()).unwrap();
        b.iter(|| black_box(series_partials(&cf, SeriesKind::AbsPartial, 64).unwrap()))
    });
}

criterion_group!(
    benches,
    cf_digits,
    convergent_table,
    numeration,
    expansion,
    solver,
    series
);
criterion_main!(benches);

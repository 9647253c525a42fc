use criterion::{BenchmarkId, Criterion, criterion_group, criterion_main};
use rees_bench::{colength16, non_rr, staircase, three_var_pair};
use rees_core::{ClosureConfig, FitOptions, MonomialIdeal, fit, rr_closure};
use std::hint::black_box;

fn colength(c: &mut Criterion) {
    let mut group = c.benchmark_group("colength");
    for r in [2u32, 4, 8] {
        let p = colength16().power(r);
        group.bench_with_input(BenchmarkId::new("colength16^r", r), &p, |b, p| {
            b.iter(|| black_box(p).colength().unwrap())
        });
    }
    let (i, j) = three_var_pair();
    let p = i.power(4).product(&j.power(4)).unwrap();
    group.bench_function("three_var I^4 J^4", |b| {
        b.iter(|| black_box(&p).colength().unwrap())
    });
    group.finish();
}

fn power(c: &mut Criterion) {
    let mut group = c.benchmark_group("power");
    for n in [4u32, 8, 12] {
        let i = staircase(n);
        group.bench_with_input(BenchmarkId::new("staircase^3", n), &i, |b, i| {
            b.iter(|| black_box(i).power(3))
        });
    }
    group.finish();
}

fn bigraded_fit(c: &mut Criterion) {
    let m = MonomialIdeal::maximal(2);
    let mut group = c.benchmark_group("fit");
    group.bench_function("m, colength16", |b| {
        b.iter(|| {
            fit(
                black_box(&m),
                black_box(&colength16()),
                FitOptions::default(),
            )
            .unwrap()
        })
    });
    group.bench_function("staircase(6), colength16", |b| {
        b.iter(|| fit(&staircase(6), &colength16(), FitOptions::default()).unwrap())
    });
    let (i, j) = three_var_pair();
    group.sample_size(10);
    group.bench_function("three_var", |b| {
        b.iter(|| fit(&i, &j, FitOptions::default()).unwrap())
    });
    group.finish();
}

fn closure(c: &mut Criterion) {
    let unit = MonomialIdeal::unit(2);
    let m = MonomialIdeal::maximal(2);
    let mut group = c.benchmark_group("rr_closure");
    group.bench_function("non_rr", |b| {
        b.iter(|| rr_closure(&non_rr(), &unit, 1, 0, ClosureConfig::default()).unwrap())
    });
    for r in [2u32, 5] {
        group.bench_with_input(BenchmarkId::new("m^r colength16^r", r), &r, |b, &r| {
            b.iter(|| rr_closure(&m, &colength16(), r, r, ClosureConfig::default()).unwrap())
        });
    }
    let (i, j) = three_var_pair();
    group.sample_size(10);
    group.bench_function("three_var (5,5)", |b| {
        b.iter(|| rr_closure(&i, &j, 5, 5, ClosureConfig::default()).unwrap())
    });
    group.finish();
}

criterion_group!(benches, colength, power, bigraded_fit, closure);
criterion_main!(benches);

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use griesmer_bench::{codes, fresh, smoke_search};
use griesmer_core::basis::construct_basis;
use griesmer_core::search::search;
use griesmer_core::ward::{max_divisor_exponent, WardMode};

fn weight_distribution(c: &mut Criterion) {
    let mut group = c.benchmark_group("weight_distribution");
    for (id, code) in codes() {
        group.bench_function(id, |b| {
            b.iter_batched(
                || fresh(&code),
                |code| code.weight_distribution().unwrap().divisor(),
                BatchSize::SmallInput,
            )
        });
    }
    group.finish();
}

fn ward_folded(c: &mut Criterion) {
    let mut group = c.benchmark_group("ward_folded");
    for (id, code) in codes() {
        group.bench_function(id, |b| {
            b.iter(|| max_divisor_exponent(&code, 8, WardMode::Folded).unwrap().exponent)
        });
    }
    group.finish();
}

fn basis(c: &mut Criterion) {
    let mut group = c.benchmark_group("construct_basis");
    for (id, code) in codes() {
        group.bench_function(id, |b| {
            b.iter_batched(
                || fresh(&code),
                |code| construct_basis(&code).unwrap(),
                BatchSize::SmallInput,
            )
        });
    }
    group.finish();
}

fn exhaustive_search(c: &mut Criterion) {
    let task = smoke_search();
    c.bench_function("search/exhaustive_6_3_4_q4", |b| b.iter(|| search(&task).unwrap().hits));
}

criterion_group!(benches, weight_distribution, ward_folded, basis, exhaustive_search);
criterion_main!(benches);

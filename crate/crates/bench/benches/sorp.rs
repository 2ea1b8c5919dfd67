use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fixprov_bench::square_of_sum;
use fixprov_core::ExtNat;

fn arithmetic(c: &mut Criterion) {
    let mut group = c.benchmark_group("sorp");
    for k in [4, 8, 16] {
        let p = square_of_sum(k);
        let q = square_of_sum(k).widen(2);
        group.bench_with_input(BenchmarkId::new("mul", k), &k, |b, _| b.iter(|| p.mul(&q)));
        group.bench_with_input(BenchmarkId::new("add", k), &k, |b, _| b.iter(|| p.add(&q)));
        group.bench_with_input(BenchmarkId::new("meet", k), &k, |b, _| b.iter(|| p.meet(&q)));
        group.bench_with_input(BenchmarkId::new("leq", k), &k, |b, _| b.iter(|| q.leq(&p)));
    }
    // The fourth power of a square has every monomial of degree 8 over k tokens.
    for k in [2, 4, 6] {
        let p = square_of_sum(k);
        group.bench_with_input(BenchmarkId::new("pow4", k), &k, |b, _| b.iter(|| p.pow(ExtNat::Fin(4))));
    }
    group.finish();
}

criterion_group!(benches, arithmetic);
criterion_main!(benches);

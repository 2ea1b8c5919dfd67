use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fixprov_bench::{buchi_problem, complete_graph, formula, reachability, BUCHI, INF_PATH};
use fixprov_core::game::DEFAULT_STRATEGY_CAP;
use fixprov_core::{evaluate, Formula, Game};

fn fixed_points(c: &mut Criterion) {
    let mut group = c.benchmark_group("evaluate");
    for n in [2, 3, 4] {
        let pi = complete_graph(n);
        let f = reachability(&pi);
        group.bench_with_input(BenchmarkId::new("lfp-reachability", n), &n, |b, _| b.iter(|| evaluate(&f, &pi)));
    }
    let pi = complete_graph(1);
    let f = formula(&INF_PATH.replace("(u)", "(n0)"), &pi);
    group.bench_function("gfp-infinite-path/1", |b| b.iter(|| evaluate(&f, &pi)));

    let pi = buchi_problem();
    let buchi = formula(BUCHI, &pi);
    let negated = Formula::not(buchi.clone());
    group.bench_function("buchi", |b| b.iter(|| evaluate(&buchi, &pi)));
    group.bench_function("negated-buchi", |b| b.iter(|| evaluate(&negated, &pi)));
    group.finish();
}

fn games(c: &mut Criterion) {
    let pi = buchi_problem();
    let mut group = c.benchmark_group("game");
    for (name, f) in [("buchi", formula(BUCHI, &pi)), ("negated-buchi", Formula::not(formula(BUCHI, &pi)))] {
        let g = Game::for_sentence(&f, &pi).expect("game");
        group.bench_function(BenchmarkId::new("build", name), |b| b.iter(|| Game::for_sentence(&f, &pi)));
        group.bench_function(BenchmarkId::new("strategy-sup", name), |b| {
            b.iter(|| g.positional_strategy_sup(&pi, g.root(), DEFAULT_STRATEGY_CAP))
        });
    }
    group.finish();
}

criterion_group!(benches, fixed_points, games);
criterion_main!(benches);

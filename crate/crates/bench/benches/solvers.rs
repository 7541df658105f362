use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gtsp_bench::{euclidean, shuffled_order, shuffled_tour};
use gtsp_core::exact::{evaluate_all_breaks, ExactPathTables};
use gtsp_core::{
    cluster_optimize, lk_run, nearest_neighbour, two_opt, AdaptationOption, GainOption, SolverConfig, Variation,
};
use std::hint::black_box;

fn cluster_optimization(c: &mut Criterion) {
    let mut group = c.benchmark_group("cluster_optimize");
    for (n, m) in [(150, 30), (500, 100), (1000, 200)] {
        let g = euclidean(n, m, 1);
        let t = shuffled_tour(&g, 2);
        group.bench_with_input(BenchmarkId::from_parameter(format!("{m}x{n}")), &t, |b, t| {
            b.iter(|| cluster_optimize(&g, black_box(t)))
        });
    }
    group.finish();
}

fn exact_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_tables");
    let g = euclidean(500, 100, 3);
    let order = shuffled_order(&g, 4);
    group.bench_function("build", |b| {
        b.iter(|| ExactPathTables::build(&g, black_box(&order), true))
    });
    for pivoting in [false, true] {
        group.bench_with_input(BenchmarkId::new("all_breaks", pivoting), &pivoting, |b, &p| {
            b.iter(|| evaluate_all_breaks(&g, black_box(&order), p))
        });
    }
    group.finish();
}

fn local_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("local_search");
    group.sample_size(10);
    let g = euclidean(200, 40, 5);
    let start = nearest_neighbour(&g, 1).unwrap();
    group.bench_function("2opt-B-co", |b| {
        b.iter(|| two_opt(&g, black_box(&start), AdaptationOption::Opt2).unwrap())
    });
    for v in [
        Variation::Basic,
        Variation::Closest,
        Variation::Shortest,
        Variation::Exact,
    ] {
        let config = SolverConfig::new(v, GainOption::HalfAverageEdge, 2, true);
        group.bench_with_input(BenchmarkId::from_parameter(config.id()), &config, |b, config| {
            b.iter(|| lk_run(&g, black_box(&start), config).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, cluster_optimization, exact_tables, local_search);
criterion_main!(benches);

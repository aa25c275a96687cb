use criterion::{black_box, criterion_group, criterion_main, Criterion};

use tempex_bench::{connected_instance, dense_star, reduced_fixture};
use tempex_core::pathwidth::{build_reduction_decomposition, exact_pathwidth};
use tempex_core::reduction::reduce_star;
use tempex_core::solver::{brute_force_min_time, solve};
use tempex_core::walk::SolveMode;

fn bench_reduce(c: &mut Criterion) {
    let star = dense_star(6, 4);
    c.bench_function("reduce_star n=6 L=4", |b| {
        b.iter(|| reduce_star(black_box(&star), SolveMode::Explore).unwrap())
    });
}

fn bench_solve(c: &mut Criterion) {
    let reduced = reduced_fixture(3, 2);
    c.bench_function("solve reduced n=3 L=2 (explore)", |b| {
        b.iter(|| {
            solve(
                black_box(&reduced.graph),
                0,
                SolveMode::Explore,
                reduced.horizon(),
            )
            .unwrap()
        })
    });

    let g = connected_instance(10, 5);
    c.bench_function("solve connected n=10 L=5 (rtb)", |b| {
        b.iter(|| solve(black_box(&g), 0, SolveMode::Rtb, 5).unwrap())
    });
}

fn bench_enumeration(c: &mut Criterion) {
    let g = connected_instance(8, 4);
    c.bench_function("brute_force n=8 L=4 (explore)", |b| {
        b.iter(|| {
            brute_force_min_time(black_box(&g), 0, SolveMode::Explore, 4, u64::MAX).unwrap()
        })
    });
}

fn bench_pathwidth(c: &mut Criterion) {
    let reduced = reduced_fixture(2, 3);
    let under = reduced.graph.underlying();
    c.bench_function("exact_pathwidth n=18", |b| {
        b.iter(|| exact_pathwidth(black_box(&under)).unwrap())
    });
    c.bench_function("build_reduction_decomposition n=18", |b| {
        b.iter(|| build_reduction_decomposition(black_box(&reduced)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_reduce,
    bench_solve,
    bench_enumeration,
    bench_pathwidth
);
criterion_main!(benches);

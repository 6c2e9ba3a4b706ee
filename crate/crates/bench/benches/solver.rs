use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use pursuit_bench::{clique_family, cycle, fan, random_connected};
use pursuit_core::decomposition::{treedepth, treewidth_exact};
use pursuit_core::geometry::{convex_polygon, visibility_graph};
use pursuit_core::{solve_game, GameVariant};

fn solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    for n in [8, 12, 16] {
        let g = cycle(n);
        group.bench_with_input(BenchmarkId::new("cycle-zombies-k2", n), &g, |b, g| {
            b.iter(|| solve_game(black_box(g), GameVariant::Zombies, 2).unwrap())
        });
        let g = fan(n);
        group.bench_with_input(BenchmarkId::new("fan-lazy-k2", n), &g, |b, g| {
            b.iter(|| solve_game(black_box(g), GameVariant::LazyZombies, 2).unwrap())
        });
    }
    let g = clique_family();
    group.sample_size(10);
    group.bench_function("clique-family-cops-k1", |b| b.iter(|| solve_game(black_box(&g), GameVariant::Cops, 1).unwrap()));
    group.finish();
}

fn widths(c: &mut Criterion) {
    let mut group = c.benchmark_group("width");
    for n in [8, 12] {
        let g = random_connected(n, 1);
        group.bench_with_input(BenchmarkId::new("treedepth", n), &g, |b, g| b.iter(|| treedepth(black_box(g)).unwrap()));
        group.bench_with_input(BenchmarkId::new("treewidth", n), &g, |b, g| b.iter(|| treewidth_exact(black_box(g)).unwrap()));
    }
    group.finish();
}

fn visibility(c: &mut Criterion) {
    let p = convex_polygon(24);
    c.bench_function("visibility/convex-24", |b| b.iter(|| visibility_graph(black_box(&p)).unwrap()));
}

criterion_group!(benches, solver, widths, visibility);
criterion_main!(benches);

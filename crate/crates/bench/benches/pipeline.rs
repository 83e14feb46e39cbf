use ccwl::candidates::search;
use ccwl::catalog::catalog_group;
use ccwl::isomorph::aut_group;
use ccwl::permgrp::inv;
use ccwl::planargraph::{is_planar, vertex_connectivity};
use ccwl::rigidity::find_rigid_color;
use ccwl::wlclosure::wl_close_graph;
use ccwl::SearchOptions;
use ccwl_bench::{graph, prepared, SOLIDS};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("wl_close");
    for name in SOLIDS {
        let g = graph(name);
        let edges = g.edges();
        group.bench_with_input(BenchmarkId::from_parameter(name), &edges, |b, e| {
            b.iter(|| wl_close_graph(g.n(), e).unwrap())
        });
    }
    group.finish();
}

fn automorphisms(c: &mut Criterion) {
    let mut group = c.benchmark_group("aut_group");
    for name in SOLIDS {
        let g = graph(name);
        let x = wl_close_graph(g.n(), &g.edges()).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(name), &x, |b, x| b.iter(|| aut_group(x).unwrap()));
    }
    group.finish();
}

fn planarity(c: &mut Criterion) {
    let g = graph("small-rhombicosidodecahedron");
    c.bench_function("is_planar/srid", |b| b.iter(|| is_planar(&g)));
    c.bench_function("kappa/srid", |b| b.iter(|| vertex_connectivity(&g)));
}

fn rigidity(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_rigid_color");
    for name in SOLIDS {
        let (x, rep) = prepared(name);
        group.bench_function(*name, |b| b.iter(|| find_rigid_color(&x, &rep).unwrap()));
    }
    group.finish();
}

fn candidate_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    for spec in ["alt4/orbits=6+4", "alt5/orbits=20"] {
        let base = inv(&catalog_group(spec).unwrap());
        group.bench_function(spec, |b| b.iter(|| search(&base, &SearchOptions::default()).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, closure, automorphisms, planarity, rigidity, candidate_search);
criterion_main!(benches);

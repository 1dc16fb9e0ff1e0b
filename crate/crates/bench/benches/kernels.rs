use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use cosmohedra::cosmofan::{fan_meet, verify_fan, PairSampling};
use cosmohedra::exactgeom::rat;
use cosmohedra::matryoshka::enumerate;
use cosmohedra::realization::{afv_check, cosmo_vertices, default_params, verify_cosmohedron_vertices, Sampling};
use cosmohedra::series::{correlatron_h_formula, f_polynomials_recurrence, max_matryoshka_counts};
use cosmohedra::uloop::{default_loop_params, u_polytope_vertices};
use cosmohedra_bench::{cosmohedron_fixture, maximal_matryoshkas};

fn combinatorics(c: &mut Criterion) {
    c.bench_function("enumerate_matryoshkas_n5", |b| {
        b.iter(|| enumerate(black_box(5), false))
    });
    let ms = maximal_matryoshkas(4);
    c.bench_function("fan_meet_all_pairs_n4", |b| {
        b.iter(|| {
            ms.iter()
                .take(24)
                .flat_map(|x| ms.iter().take(24).map(move |y| fan_meet(x, y)))
                .count()
        })
    });
}

fn series(c: &mut Criterion) {
    c.bench_function("f_polynomials_recurrence_9", |b| {
        b.iter(|| f_polynomials_recurrence(black_box(9)))
    });
    c.bench_function("correlatron_h_formula_7", |b| {
        b.iter(|| correlatron_h_formula(black_box(7)))
    });
    c.bench_function("max_matryoshka_counts_200", |b| {
        b.iter(|| max_matryoshka_counts(black_box(200)))
    });
}

fn geometry(c: &mut Criterion) {
    let p4 = default_params(4);
    c.bench_function("cosmo_vertices_n4", |b| b.iter(|| cosmo_vertices(black_box(&p4))));
    let (p, vs) = cosmohedron_fixture(4);
    c.bench_function("verify_cosmohedron_n4", |b| {
        b.iter(|| verify_cosmohedron_vertices(&p, black_box(&vs), Sampling::Exhaustive))
    });
    c.bench_function("afv_check_n4", |b| b.iter(|| afv_check(&p, black_box(&vs))));
    c.bench_function("verify_fan_n3", |b| {
        b.iter(|| verify_fan(black_box(3), PairSampling::All))
    });
    let lp = default_loop_params(3, &rat(1, 10));
    c.bench_function("u_polytope_vertices_n3", |b| {
        b.iter(|| u_polytope_vertices(black_box(&lp)))
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = combinatorics, series, geometry
}
criterion_main!(benches);

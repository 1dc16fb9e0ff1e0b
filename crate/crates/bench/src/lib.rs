//! Fixtures shared by the benchmarks in `benches/`.

use cosmohedra::matryoshka::{enumerate, Matryoshka};
use cosmohedra::realization::{cosmo_vertices, default_params, CosmoVertex, RealizationParams};

/// Default cosmohedron parameters with their vertices.
pub fn cosmohedron_fixture(n: usize) -> (RealizationParams, Vec<CosmoVertex>) {
    let p = default_params(n);
    let vs = cosmo_vertices(&p).expect("default parameters realize the cosmohedron");
    (p, vs)
}

/// The maximal Matryoshkas for `n`.
pub fn maximal_matryoshkas(n: usize) -> Vec<Matryoshka> {
    enumerate(n, true)
}

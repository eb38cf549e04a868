//! Inputs shared by the benchmarks.

use bipolar_lab::sampling::{rng_for, sample_t};
use bipolar_lab::slitslidesew::MarkedVertexMap;
use bipolar_lab::BipolarMap;

/// A fixed uniform quasi-triangulation with `k` internal vertices.
pub fn quasi_triangulation(k: usize, j: usize, seed: u64) -> BipolarMap {
    sample_t(k, j, &mut rng_for(seed, 0), 1_000_000)
        .expect("valid parameters")
        .sample
}

/// Every internal vertex of `x`, marked.
pub fn marked_vertices(x: &BipolarMap) -> Vec<MarkedVertexMap> {
    let ext = x.map().external_vertices();
    (0..x.map().n_vertices())
        .filter(|&v| !ext[v])
        .map(|v| MarkedVertexMap { x: x.clone(), v })
        .collect()
}

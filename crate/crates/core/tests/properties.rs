//! Property checks on randomly sampled maps, most of them beyond the
//! exhaustive enumeration bound.

use bipolar_lab::io::MapJson;
use bipolar_lab::rerooting::{orbit, reroot};
use bipolar_lab::sampling::{rng_for, sample_b, sample_s, sample_t};
use bipolar_lab::schnyder::{bipolar_to_schnyder, check_schnyder, schnyder_to_bipolar, schnyder_to_q3};
use bipolar_lab::slitslidesew::{check_ledger, phi, psi, MarkedEdgeMap, MarkedVertexMap};
use bipolar_lab::{BipolarMap, CombMap};
use proptest::prelude::*;
use rand::seq::SliceRandom;

fn sampled(class: u8, k: usize, j: usize, seed: u64) -> BipolarMap {
    let rng = &mut rng_for(seed, 0);
    match class {
        0 => sample_t(k, j, rng, 1_000_000),
        1 => sample_b(k, k + 2, j, rng, 1_000_000),
        _ => sample_s(k, j.max(3), rng, 1_000_000),
    }
    .unwrap()
    .sample
}

/// Renumbers darts with a random permutation; alpha pairs stay pairs but
/// stop being `(2e, 2e+1)`.
fn scrambled(m: &CombMap, seed: u64) -> (Vec<usize>, Vec<usize>, usize) {
    let n = m.n_darts();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng_for(seed, 1));
    let mut alpha = vec![0; n];
    let mut sigma = vec![0; n];
    for d in 0..n {
        alpha[perm[d]] = perm[d ^ 1];
        sigma[perm[d]] = perm[m.sigma(d)];
    }
    (alpha, sigma, perm[m.root()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_and_degree_sums(class in 0u8..3, k in 0usize..6, j in 2usize..6, seed: u64) {
        let x = sampled(class, k, j, seed);
        let m = x.map();
        prop_assert_eq!(m.n_vertices() + m.n_faces(), m.n_edges() + 2);
        let vsum: usize = (0..m.n_vertices()).map(|v| m.degree(v)).sum();
        let fsum: usize = m.face_degrees().iter().map(|&(_, d)| d).sum();
        prop_assert_eq!(vsum, m.n_darts());
        prop_assert_eq!(fsum, m.n_darts());
    }

    #[test]
    fn code_ignores_dart_names(class in 0u8..3, k in 0usize..5, j in 2usize..5, seed: u64) {
        let x = sampled(class, k, j, seed);
        let (alpha, sigma, root) = scrambled(x.map(), seed);
        let (m, _) = CombMap::validate(&alpha, &sigma, root).unwrap();
        prop_assert_eq!(m.canonical_code(), x.map().canonical_code());
        prop_assert_eq!(m.unrooted_code(), x.map().unrooted_code());
    }

    #[test]
    fn growth_roundtrips(class in 0u8..3, k in 1usize..6, j in 2usize..5, seed: u64, pick: prop::sample::Index) {
        let x = sampled(class, k, j, seed);
        let ext = x.map().external_vertices();
        let inner: Vec<usize> = (0..x.map().n_vertices()).filter(|&v| !ext[v]).collect();
        let a = MarkedVertexMap { x: x.clone(), v: inner[pick.index(inner.len())] };
        let b = phi(&a).unwrap();
        prop_assert!(check_ledger(&a, &b).is_ok());
        prop_assert_eq!(psi(&b).unwrap(), a);
        let c = MarkedEdgeMap { x: b.x.clone(), e: b.e };
        prop_assert_eq!(phi(&psi(&c).unwrap()).unwrap(), c);
    }

    #[test]
    fn rerooting_keeps_bipolarity_and_proportions(k in 0usize..4, j in 3usize..6, seed: u64) {
        let x = sampled(0, k, j, seed);
        let y = reroot(&x).unwrap();
        prop_assert_eq!(y.params(), x.params());
        let o = orbit(&x).unwrap();
        prop_assert_eq!(o.len() % j, 0);
        for m in o.multiplicities() {
            prop_assert_eq!(m * j, 2 * o.len());
        }
    }

    #[test]
    fn schnyder_roundtrip(k in 0usize..6, j in 3usize..6, seed: u64) {
        let x = sampled(2, k, j, seed);
        let w = bipolar_to_schnyder(&x).unwrap();
        prop_assert!(check_schnyder(&w).is_ok());
        prop_assert!(schnyder_to_q3(&w).is_ok());
        let (back, _) = schnyder_to_bipolar(&w).unwrap();
        prop_assert_eq!(back.canonical_code(), x.canonical_code());
    }

    #[test]
    fn json_roundtrip(class in 0u8..3, k in 0usize..5, j in 2usize..5, seed: u64) {
        let x = sampled(class, k, j, seed);
        let text = MapJson::from_bipolar(&x).to_string_compact();
        prop_assert_eq!(MapJson::parse(&text).unwrap().to_bipolar().unwrap(), x);
    }
}

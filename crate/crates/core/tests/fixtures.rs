//! Checks on the frozen map fixtures.

use bipolar_lab::io::MapJson;
use bipolar_lab::rerooting::{flip_set, orbit, reroot, separating_path};

fn load(name: &str) -> MapJson {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    MapJson::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn triangle_orbit() {
    let x = load("triangle.json").to_bipolar().unwrap();
    let o = orbit(&x).unwrap();
    assert_eq!(o.len(), 3);
    assert_eq!(o.multiplicities(), vec![2, 2, 2]);
}

#[test]
fn four_flipped_edges() {
    let x = load("four_flips.json").to_bipolar().unwrap();
    let flips = flip_set(&x);
    assert_eq!(flips.len(), 4);
    let y = reroot(&x).unwrap();
    let changed: Vec<usize> = (0..x.map().n_edges())
        .filter(|&e| x.even_tail()[e] != y.even_tail()[e])
        .collect();
    assert_eq!(changed, flips);
    // the separating path never flips
    for d in separating_path(&x).unwrap() {
        assert!(!flips.contains(&(d / 2)));
    }
}

#[test]
fn orbit_fixtures() {
    let x = load("orbit12_j4.json").to_bipolar().unwrap();
    assert_eq!(x.map().external_degree(), 4);
    let o = orbit(&x).unwrap();
    assert_eq!((o.len(), o.multiplicities().iter().all(|&m| m == 6)), (12, true));
    let y = load("quasi_orbit15_j5.json").to_quasi3().unwrap();
    assert_eq!(y.map().external_degree(), 5);
    assert_eq!(bipolar_lab::schnyder::orbit_q3(&y).unwrap().len(), 15);
}

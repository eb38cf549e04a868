//! Rerooting bipolar orientations one step clockwise around the external
//! face, and the orbits of that operation.

use std::collections::{HashMap, VecDeque};

use crate::bipolar::{all_orientations, BipolarMap};
use crate::error::{Error, Result};
use crate::map::{alpha, edge_of, CombMap, Dart, Edge, Face, Vertex};

fn require_j3(x: &BipolarMap) -> Result<usize> {
    let j = x.map().external_degree();
    if j < 3 {
        Err(Error::ExternalDegreeTooSmall(j))
    } else {
        Ok(j)
    }
}

/// Flips every edge that is not boundary-reaching and moves the root to the
/// last edge of the right boundary, now directed away from the old north
/// pole.
pub fn reroot(x: &BipolarMap) -> Result<BipolarMap> {
    require_j3(x)?;
    let mut even_tail = x.even_tail().to_vec();
    for (e, bit) in even_tail.iter_mut().enumerate() {
        if !x.is_boundary_reaching(e) {
            *bit = !*bit;
        }
    }
    let last = *x.right_boundary().last().expect("nonempty boundary");
    x.reoriented(even_tail, alpha(last))
}

/// Edges flipped by [`reroot`].
pub fn flip_set(x: &BipolarMap) -> Vec<Edge> {
    (0..x.map().n_edges())
        .filter(|&e| !x.is_boundary_reaching(e))
        .collect()
}

/// The boundary neighbour `v'` of the north pole on the right boundary.
pub fn north_neighbour(x: &BipolarMap) -> Vertex {
    let last = *x.right_boundary().last().expect("nonempty boundary");
    x.map().origin(last)
}

/// Edges starting a directed path that ends at the north neighbour `v'`.
pub fn reaches_north_neighbour(x: &BipolarMap) -> Vec<bool> {
    let m = x.map();
    let target = north_neighbour(x);
    // backwards search over incoming edges from v'
    let mut seen = vec![false; m.n_vertices()];
    seen[target] = true;
    let mut queue = VecDeque::from([target]);
    while let Some(w) = queue.pop_front() {
        for d in m.rotation(w) {
            if !x.is_tail(d) {
                let u = m.target(d);
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    (0..m.n_edges()).map(|e| seen[x.head(e)]).collect()
}

/// Directed path from S to `v'` built backwards by taking, at each vertex,
/// the leftmost incoming edge. Returned as tail darts from S.
pub fn separating_path(x: &BipolarMap) -> Result<Vec<Dart>> {
    require_j3(x)?;
    let m = x.map();
    let mut w = north_neighbour(x);
    let mut out = Vec::new();
    while w != x.south() {
        let d = x.leftmost_in(w);
        out.push(alpha(d));
        w = m.target(d);
    }
    out.reverse();
    Ok(out)
}

/// Internal faces on the right of a simple path from the boundary to the
/// boundary: those reachable from the faces right of its darts without
/// crossing the path or entering the external face.
pub fn faces_right_of(m: &CombMap, path: &[Dart]) -> Vec<bool> {
    let ext = m.external_face();
    let mut on_path = vec![false; m.n_edges()];
    for &d in path {
        on_path[edge_of(d)] = true;
    }
    let mut region = vec![false; m.n_faces()];
    let mut queue = VecDeque::new();
    for &d in path {
        let f = m.face_right(d);
        if f != ext && !region[f] {
            region[f] = true;
            queue.push_back(f);
        }
    }
    while let Some(f) = queue.pop_front() {
        for d in m.face_darts(f) {
            if on_path[edge_of(d)] {
                continue;
            }
            let g = m.face_left(d);
            if g != ext && !region[g] {
                region[g] = true;
                queue.push_back(g);
            }
        }
    }
    region
}

/// Edges on the path or on its right.
pub fn edges_on_or_right_of(m: &CombMap, path: &[Dart]) -> Vec<bool> {
    let region = faces_right_of(m, path);
    let ext = m.external_face();
    let mut out = vec![false; m.n_edges()];
    for &d in path {
        out[edge_of(d)] = true;
    }
    for (e, slot) in out.iter_mut().enumerate() {
        let (a, b) = (m.face_right(2 * e), m.face_left(2 * e));
        let inside = |f: Face| f == ext || region[f];
        if inside(a) && inside(b) && (region[a] || region[b]) {
            *slot = true;
        }
    }
    out
}

/// A cycle of the rerooting operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub elements: Vec<BipolarMap>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Number of elements in which `e` is not boundary-reaching.
    pub fn multiplicity(&self, e: Edge) -> usize {
        self.elements
            .iter()
            .filter(|x| !x.is_boundary_reaching(e))
            .count()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        let ne = self.elements[0].map().n_edges();
        (0..ne).map(|e| self.multiplicity(e)).collect()
    }
}

type OrientationKey = (Dart, Vec<bool>);

fn key(x: &BipolarMap) -> OrientationKey {
    (x.map().root(), x.even_tail().to_vec())
}

/// Iterates [`reroot`] until the starting orientation and root come back.
pub fn orbit(x: &BipolarMap) -> Result<Orbit> {
    let j = require_j3(x)?;
    let start = key(x);
    let mut elements = vec![x.clone()];
    // an orbit never exceeds j times the number of orientations per root,
    // itself below 2^E
    let limit = j << x.map().n_edges().min(40);
    loop {
        let next = reroot(elements.last().unwrap())?;
        if key(&next) == start {
            return Ok(Orbit { elements });
        }
        if elements.len() >= limit {
            return Err(Error::Internal("rerooting orbit does not close".into()));
        }
        elements.push(next);
    }
}

/// Every bipolar orientation of `m` rooted at any edge having the external
/// face of `m` on its left, grouped by rerooting orbits.
pub fn partition_into_orbits(m: &CombMap) -> Result<Vec<Orbit>> {
    if !m.is_two_connected() {
        return Err(Error::NotTwoConnected);
    }
    let ext = m.external_face();
    let j = m.external_degree();
    if j < 3 {
        return Err(Error::ExternalDegreeTooSmall(j));
    }
    let roots: Vec<Dart> = (0..m.n_darts()).filter(|&d| m.face_left(d) == ext).collect();
    let members: Vec<BipolarMap> = roots
        .iter()
        .flat_map(|&r| all_orientations(&m.with_root(r)))
        .collect();
    let index: HashMap<OrientationKey, usize> =
        members.iter().enumerate().map(|(i, x)| (key(x), i)).collect();
    let mut done = vec![false; members.len()];
    let mut out = Vec::new();
    for i in 0..members.len() {
        if done[i] {
            continue;
        }
        let o = orbit(&members[i])?;
        for x in &o.elements {
            let idx = *index
                .get(&key(x))
                .ok_or_else(|| Error::Internal("rerooting left the orientation family".into()))?;
            if done[idx] {
                return Err(Error::Internal("orbits overlap".into()));
            }
            done[idx] = true;
        }
        out.push(o);
    }
    Ok(out)
}

//! Schnyder woods, 3-orientations and quasi-3-orientations, their rerooting,
//! and the correspondence with bipolar maps whose internal faces all have
//! right length 2.
//!
//! A quasi-triangulation `q` rooted at `rho2 -> rho3` becomes a triangulation
//! `t` by adding an apex `rho1` in its external face joined to every external
//! vertex. Edge ids of `q` are kept in `t`; the apex edges come last.

use std::collections::HashMap;

use crate::bipolar::BipolarMap;
use crate::enumerate::is_quasi_triangulation;
use crate::error::{Error, Result};
use crate::map::{alpha, edge_of, CombMap, Dart, Edge, Face, Vertex};
use crate::rerooting::faces_right_of;

/// Per-edge orientation: `Some(true)` when dart `2e` is the tail,
/// `None` for an unoriented edge.
pub type PartialOrientation = Vec<Option<bool>>;

fn tail_of(orient: &[Option<bool>], d: Dart) -> Option<bool> {
    orient[edge_of(d)].map(|even| even == d.is_multiple_of(2))
}

fn outdegree(m: &CombMap, orient: &[Option<bool>], v: Vertex) -> usize {
    m.rotation(v)
        .into_iter()
        .filter(|&d| tail_of(orient, d) == Some(true))
        .count()
}

/// Outgoing darts met counterclockwise after `d` around its origin.
fn outgoing_after(m: &CombMap, orient: &[Option<bool>], d: Dart) -> Vec<Dart> {
    m.rotation_from(d)[1..]
        .iter()
        .copied()
        .filter(|&x| tail_of(orient, x) == Some(true))
        .collect()
}

/// Orientation of a simple quasi-triangulation in which the root edge is
/// unoriented, its ends have outdegree 0, the other external vertices
/// outdegree 2 and internal vertices outdegree 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quasi3Orientation {
    q: CombMap,
    orient: PartialOrientation,
}

impl Quasi3Orientation {
    pub fn check(q: CombMap, orient: PartialOrientation) -> Result<Self> {
        if !q.is_simple() {
            return Err(Error::NotSimple);
        }
        if !is_quasi_triangulation(&q) {
            return Err(Error::NotQuasiTriangulation);
        }
        if orient.len() != q.n_edges() {
            return Err(Error::OrientationLength {
                got: orient.len(),
                expected: q.n_edges(),
            });
        }
        let root_edge = edge_of(q.root());
        for (e, o) in orient.iter().enumerate() {
            if (e == root_edge) != o.is_none() {
                return Err(Error::NotThreeOrientation(format!(
                    "edge {e} must be {}",
                    if e == root_edge { "unoriented" } else { "oriented" }
                )));
            }
        }
        let ext = q.external_vertices();
        let (r2, r3) = (q.origin(q.root()), q.target(q.root()));
        for v in 0..q.n_vertices() {
            let want = if v == r2 || v == r3 {
                0
            } else if ext[v] {
                2
            } else {
                3
            };
            let got = outdegree(&q, &orient, v);
            if got != want {
                return Err(Error::NotThreeOrientation(format!(
                    "vertex {v} has outdegree {got}, expected {want}"
                )));
            }
        }
        Ok(Quasi3Orientation { q, orient })
    }

    pub fn map(&self) -> &CombMap {
        &self.q
    }
    pub fn orientation(&self) -> &[Option<bool>] {
        &self.orient
    }
    pub fn rho2(&self) -> Vertex {
        self.q.origin(self.q.root())
    }
    pub fn rho3(&self) -> Vertex {
        self.q.target(self.q.root())
    }
    pub fn is_tail(&self, d: Dart) -> Option<bool> {
        tail_of(&self.orient, d)
    }

    pub fn code(&self) -> crate::map::CanonicalCode {
        self.q
            .code_with(self.q.root(), |d| match self.is_tail(d) {
                None => 2,
                Some(t) => t as u32,
            })
            .0
    }
}

/// Every quasi-3-orientation of a rooted simple quasi-triangulation.
pub fn all_quasi3(q: &CombMap) -> Result<Vec<Quasi3Orientation>> {
    if !q.is_simple() {
        return Err(Error::NotSimple);
    }
    if !is_quasi_triangulation(q) {
        return Err(Error::NotQuasiTriangulation);
    }
    let root_edge = edge_of(q.root());
    let others: Vec<Edge> = (0..q.n_edges()).filter(|&e| e != root_edge).collect();
    assert!(others.len() < 28, "exhaustive orientation search is exponential");
    let mut out = Vec::new();
    for bits in 0u64..1 << others.len() {
        let mut orient = vec![None; q.n_edges()];
        for (i, &e) in others.iter().enumerate() {
            orient[e] = Some(bits >> i & 1 == 1);
        }
        if let Ok(y) = Quasi3Orientation::check(q.clone(), orient) {
            out.push(y);
        }
    }
    Ok(out)
}

/// The external dart `z -> rho3` preceding the reversed root on the
/// external face.
fn last_boundary_dart(q: &CombMap) -> Dart {
    let back = alpha(q.root());
    q.phi_inv(back)
}

/// Path from the external neighbour `z` of `rho3` to `rho2`: leave `z` by
/// its outgoing edge not going to `rho3`, then at each vertex leave by the
/// second outgoing edge counterclockwise after the arrival edge, so that
/// exactly one outgoing edge lies on the path's right.
pub fn separating_path_q3(y: &Quasi3Orientation) -> Result<Vec<Dart>> {
    let q = y.map();
    let j = q.external_degree();
    if j < 3 {
        return Err(Error::ExternalDegreeTooSmall(j));
    }
    let last = last_boundary_dart(q);
    let z = q.origin(last);
    let start: Vec<Dart> = outgoing_after(q, &y.orient, last)
        .into_iter()
        .filter(|&d| d != last)
        .collect();
    if start.len() != 1 {
        return Err(Error::StraightPathStuck(z));
    }
    let mut path = vec![start[0]];
    loop {
        let d = *path.last().unwrap();
        let w = q.target(d);
        if w == y.rho2() {
            return Ok(path);
        }
        if w == y.rho3() || path.len() > q.n_edges() {
            return Err(Error::StraightPathStuck(w));
        }
        let outs = outgoing_after(q, &y.orient, alpha(d));
        if outs.len() < 2 {
            return Err(Error::StraightPathStuck(w));
        }
        path.push(outs[1]);
    }
}

/// Internal faces on the right of the separating path.
pub fn right_region(y: &Quasi3Orientation) -> Result<Vec<bool>> {
    let path = separating_path_q3(y)?;
    Ok(faces_right_of(y.map(), &path))
}

/// Reverses the separating path, orients the old root `rho2 -> rho3`, and
/// roots at `rho3 -> z`, unoriented.
pub fn reroot_q3(y: &Quasi3Orientation) -> Result<Quasi3Orientation> {
    let q = y.map();
    let path = separating_path_q3(y)?;
    let mut orient = y.orient.clone();
    for &d in &path {
        let e = edge_of(d);
        orient[e] = orient[e].map(|b| !b);
    }
    let root = q.root();
    orient[edge_of(root)] = Some(root.is_multiple_of(2));
    let last = last_boundary_dart(q);
    orient[edge_of(last)] = None;
    Quasi3Orientation::check(q.with_root(alpha(last)), orient)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q3Orbit {
    pub elements: Vec<Quasi3Orientation>,
}

impl Q3Orbit {
    pub fn len(&self) -> usize {
        self.elements.len()
    }
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
    /// For every face, the number of elements having it in the right region.
    pub fn face_multiplicities(&self) -> Result<Vec<usize>> {
        let q = self.elements[0].map();
        let mut out = vec![0; q.n_faces()];
        for y in &self.elements {
            for (f, inside) in right_region(y)?.into_iter().enumerate() {
                out[f] += inside as usize;
            }
        }
        Ok(out)
    }
}

pub fn orbit_q3(y: &Quasi3Orientation) -> Result<Q3Orbit> {
    let key = |y: &Quasi3Orientation| (y.q.root(), y.orient.clone());
    let start = key(y);
    let mut elements = vec![y.clone()];
    let limit = y.q.external_degree() << y.q.n_edges().min(40);
    loop {
        let next = reroot_q3(elements.last().unwrap())?;
        if key(&next) == start {
            return Ok(Q3Orbit { elements });
        }
        if elements.len() >= limit {
            return Err(Error::Internal("rerooting orbit does not close".into()));
        }
        elements.push(next);
    }
}

/// Every quasi-3-orientation of `q` rooted at any edge having the external
/// face of `q` on its left, grouped by rerooting orbits.
pub fn partition_into_q3_orbits(q: &CombMap) -> Result<Vec<Q3Orbit>> {
    let ext = q.external_face();
    let j = q.external_degree();
    if j < 3 {
        return Err(Error::ExternalDegreeTooSmall(j));
    }
    let mut members = Vec::new();
    for r in (0..q.n_darts()).filter(|&d| q.face_left(d) == ext) {
        members.extend(all_quasi3(&q.with_root(r))?);
    }
    let key = |y: &Quasi3Orientation| (y.q.root(), y.orient.clone());
    let index: HashMap<_, usize> = members.iter().enumerate().map(|(i, y)| (key(y), i)).collect();
    let mut done = vec![false; members.len()];
    let mut out = Vec::new();
    for i in 0..members.len() {
        if done[i] {
            continue;
        }
        let o = orbit_q3(&members[i])?;
        for y in &o.elements {
            let idx = *index
                .get(&key(y))
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

/// Adds a vertex in the external face joined to every external vertex.
/// Returns the new map (same root) and the apex. New edges are appended in
/// the order of the external walk starting at the reversed root, with their
/// even dart on the old external vertex.
pub fn add_apex(q: &CombMap) -> Result<(CombMap, Vertex)> {
    let walk = q.face_walk(alpha(q.root()));
    let n = q.n_darts();
    let jn = walk.len();
    let mut sigma = q.sigma_slice().to_vec();
    sigma.extend(std::iter::repeat_n(0, 2 * jn));
    for i in 0..walk.len() {
        // the corner before walk[i] follows the reversed previous walk dart
        let prev = walk[(i + jn - 1) % jn];
        let corner = alpha(prev);
        let new = n + 2 * i;
        sigma[new] = sigma[corner];
        sigma[corner] = new;
    }
    // apex rotation is the reverse of the walk order
    for i in 0..jn {
        let here = n + 2 * i + 1;
        let next = n + 2 * ((i + jn - 1) % jn) + 1;
        sigma[here] = next;
    }
    let t = CombMap::from_sigma(sigma, q.root())?;
    let apex = t.origin(n + 1);
    Ok((t, apex))
}

/// A simple triangulation with a 3-orientation and the induced colors.
/// `color[e]` is 1, 2 or 3 for inner edges and 0 for the outer triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchnyderWood {
    pub t: CombMap,
    pub orient: PartialOrientation,
    pub color: Vec<u8>,
}

impl SchnyderWood {
    /// `[rho1, rho2, rho3]`: the root is `rho2 -> rho3` and `rho1` is the
    /// third outer vertex.
    pub fn outer(&self) -> [Vertex; 3] {
        outer_vertices(&self.t)
    }
}

fn outer_vertices(t: &CombMap) -> [Vertex; 3] {
    let r = t.root();
    let third = t.target(t.phi(alpha(r)));
    [third, t.origin(r), t.target(r)]
}

pub fn is_triangulation(t: &CombMap) -> bool {
    t.is_simple() && t.face_degrees().iter().all(|&(_, d)| d == 3)
}

/// Colors the inner edges of a 3-oriented triangulation by the outer vertex
/// reached by their straight path (at each vertex, continue along the middle
/// of the three outgoing edges seen from the arrival edge).
pub fn colors_from_3orientation(t: CombMap, orient: PartialOrientation) -> Result<SchnyderWood> {
    if !is_triangulation(&t) {
        return Err(Error::NotSimple);
    }
    if orient.len() != t.n_edges() {
        return Err(Error::OrientationLength {
            got: orient.len(),
            expected: t.n_edges(),
        });
    }
    let outer = outer_vertices(&t);
    let is_outer = |v: Vertex| outer.contains(&v);
    for e in 0..t.n_edges() {
        let (a, b) = (t.origin(2 * e), t.origin(2 * e + 1));
        if (is_outer(a) && is_outer(b)) != orient[e].is_none() {
            return Err(Error::NotThreeOrientation(format!(
                "edge {e}: exactly the outer edges are unoriented"
            )));
        }
    }
    for v in 0..t.n_vertices() {
        let want = if is_outer(v) { 0 } else { 3 };
        if outdegree(&t, &orient, v) != want {
            return Err(Error::NotThreeOrientation(format!("vertex {v}")));
        }
    }
    let mut color = vec![0u8; t.n_edges()];
    for (e, slot) in color.iter_mut().enumerate() {
        let Some(even) = orient[e] else { continue };
        let mut d = if even { 2 * e } else { 2 * e + 1 };
        let mut steps = 0;
        loop {
            let w = t.target(d);
            if let Some(i) = outer.iter().position(|&o| o == w) {
                *slot = i as u8 + 1;
                break;
            }
            let outs = outgoing_after(&t, &orient, alpha(d));
            steps += 1;
            if outs.len() != 3 || steps > t.n_edges() {
                return Err(Error::StraightPathStuck(w));
            }
            d = outs[1];
        }
    }
    Ok(SchnyderWood { t, orient, color })
}

/// Checks the local rule at every inner vertex: the three outgoing edges
/// carry distinct colors in the same cyclic order everywhere, and incoming
/// edges between two outgoing edges carry the third color. Also checks that
/// each color class reaches its outer vertex only through that color.
pub fn check_schnyder(w: &SchnyderWood) -> std::result::Result<(), String> {
    let t = &w.t;
    let outer = w.outer();
    let mut cyclic = None;
    for v in 0..t.n_vertices() {
        if outer.contains(&v) {
            continue;
        }
        let rot = t.rotation(v);
        let outs: Vec<usize> = (0..rot.len())
            .filter(|&i| tail_of(&w.orient, rot[i]) == Some(true))
            .collect();
        let cols: Vec<u8> = outs.iter().map(|&i| w.color[edge_of(rot[i])]).collect();
        let mut sorted = cols.clone();
        sorted.sort_unstable();
        if sorted != [1, 2, 3] {
            return Err(format!("vertex {v}: outgoing colors {cols:?}"));
        }
        let start = cols.iter().position(|&c| c == 1).unwrap();
        let order = [cols[start], cols[(start + 1) % 3], cols[(start + 2) % 3]];
        if *cyclic.get_or_insert(order) != order {
            return Err(format!("vertex {v}: cyclic order {order:?}"));
        }
        for s in 0..3 {
            let (from, to) = (outs[s], outs[(s + 1) % 3]);
            let third = 6 - cols[s] - cols[(s + 1) % 3];
            let mut i = (from + 1) % rot.len();
            while i != to {
                if w.color[edge_of(rot[i])] != third {
                    return Err(format!("vertex {v}: incoming color out of sector"));
                }
                i = (i + 1) % rot.len();
            }
        }
    }
    for (i, &o) in outer.iter().enumerate() {
        for d in t.rotation(o) {
            let c = w.color[edge_of(d)];
            if c != 0 && c as usize != i + 1 {
                return Err(format!("outer vertex {i} reached by color {c}"));
            }
        }
    }
    Ok(())
}

/// Every 3-orientation of a rooted simple triangulation.
pub fn all_three_orientations(t: &CombMap) -> Result<Vec<SchnyderWood>> {
    if !is_triangulation(t) {
        return Err(Error::NotSimple);
    }
    let outer = outer_vertices(t);
    let inner: Vec<Edge> = (0..t.n_edges())
        .filter(|&e| !(outer.contains(&t.origin(2 * e)) && outer.contains(&t.origin(2 * e + 1))))
        .collect();
    assert!(inner.len() < 28, "exhaustive orientation search is exponential");
    let mut out = Vec::new();
    for bits in 0u64..1 << inner.len() {
        let mut orient = vec![None; t.n_edges()];
        for (i, &e) in inner.iter().enumerate() {
            orient[e] = Some(bits >> i & 1 == 1);
        }
        let ok = (0..t.n_vertices()).all(|v| {
            outdegree(t, &orient, v) == if outer.contains(&v) { 0 } else { 3 }
        });
        if ok {
            out.push(colors_from_3orientation(t.clone(), orient)?);
        }
    }
    Ok(out)
}

/// The 3-orientation of the triangulation obtained by adding the apex:
/// apex edges point to the apex, except the two outer ones.
pub fn q3_to_schnyder(y: &Quasi3Orientation) -> Result<SchnyderWood> {
    let q = y.map();
    let (t, _) = add_apex(q)?;
    let mut orient = y.orient.clone();
    for e in q.n_edges()..t.n_edges() {
        let z = t.origin(2 * e);
        orient.push(if z == y.rho2() || z == y.rho3() { None } else { Some(true) });
    }
    colors_from_3orientation(t, orient)
}

/// Inverse of [`q3_to_schnyder`]: deletes the apex `rho1`.
pub fn schnyder_to_q3(w: &SchnyderWood) -> Result<Quasi3Orientation> {
    let t = &w.t;
    let [r1, _, _] = w.outer();
    let apex_edges: Vec<Edge> = t.rotation(r1).into_iter().map(edge_of).collect();
    let (q, relabel) = t.delete_edges(&apex_edges)?;
    let mut orient = vec![None; q.n_edges()];
    for e in 0..t.n_edges() {
        if let Some(nd) = relabel[2 * e] {
            orient[edge_of(nd)] = w.orient[e].map(|b| b == (nd % 2 == 0));
        }
    }
    Quasi3Orientation::check(q, orient)
}

/// Deletes the edges of color 1 and the apex, reverses color 2 and orients
/// the root `rho2 -> rho3`. Also returns the old-to-new dart map.
pub fn schnyder_to_bipolar(w: &SchnyderWood) -> Result<(BipolarMap, Vec<Option<Dart>>)> {
    let t = &w.t;
    let [r1, _, _] = w.outer();
    let mut gone: Vec<Edge> = (0..t.n_edges()).filter(|&e| w.color[e] == 1).collect();
    gone.extend(t.rotation(r1).into_iter().map(edge_of).filter(|&e| w.color[e] == 0));
    gone.sort_unstable();
    gone.dedup();
    let (m, relabel) = t.delete_edges(&gone)?;
    let mut even_tail = vec![false; m.n_edges()];
    for e in 0..t.n_edges() {
        let Some(nd) = relabel[2 * e] else { continue };
        // tail dart in t, before recoloring
        let tail_even = match w.orient[e] {
            Some(b) => b != (w.color[e] == 2),
            None => t.root().is_multiple_of(2),
        };
        even_tail[edge_of(nd)] = tail_even == (nd % 2 == 0);
    }
    Ok((BipolarMap::check(m, even_tail)?, relabel))
}

/// Inverse of [`schnyder_to_bipolar`] for maps whose internal faces all have
/// right length 2: fans every face from its left side to the middle vertex
/// of its right side, adds the apex, and recolors.
pub fn bipolar_to_schnyder(x: &BipolarMap) -> Result<SchnyderWood> {
    let m = x.map();
    let ext = m.external_face();
    for f in 0..m.n_faces() {
        if f != ext && x.face_lengths(f).1 != 2 {
            return Err(Error::RightLengthNotTwo(f));
        }
    }
    let mut q = m.clone();
    let mut even_tail = x.even_tail().to_vec();
    for f in 0..m.n_faces() {
        if f == ext {
            continue;
        }
        let walk = m.face_darts(f);
        // rotate the walk to start on the left path right after the bottom
        let start = (0..walk.len())
            .find(|&i| x.is_tail(walk[i]) && !x.is_tail(walk[(i + walk.len() - 1) % walk.len()]))
            .expect("face rule");
        let walk: Vec<Dart> = walk[start..].iter().chain(&walk[..start]).copied().collect();
        let left_len = x.face_lengths(f).0;
        // walk = left path (forward), then c -> b, b -> a (backward)
        let t_bc = alpha(walk[left_len]);
        let mut corner_b = t_bc;
        for i in (1..left_len).rev() {
            let corner_y = alpha(walk[i - 1]);
            let n = q.n_darts();
            q = q.insert_edge(corner_y, corner_b, q.root())?;
            even_tail.push(true);
            corner_b = n + 1;
        }
    }
    let fan_edges = m.n_edges()..q.n_edges();
    let (t, _) = add_apex(&q)?;
    let (s, n) = (x.south(), x.north());
    let mut orient: PartialOrientation = vec![None; t.n_edges()];
    let mut color = vec![0u8; t.n_edges()];
    let root_edge = edge_of(m.root());
    for e in 0..m.n_edges() {
        if e == root_edge {
            continue;
        }
        let reversed = x.head(e) != n && x.leftmost_in(x.head(e)) == alpha(x.tail_dart(e));
        orient[e] = Some(even_tail[e] != reversed);
        color[e] = if reversed { 2 } else { 3 };
    }
    for e in fan_edges.clone() {
        orient[e] = Some(true);
        color[e] = 1;
    }
    for e in q.n_edges()..t.n_edges() {
        let z = t.origin(2 * e);
        if z != s && z != n {
            orient[e] = Some(true);
            color[e] = 1;
        }
    }
    let w = colors_from_3orientation(t, orient)?;
    if w.color != color {
        return Err(Error::Internal("recomputed colors differ from the construction".into()));
    }
    Ok(w)
}

/// The bipolar map of a quasi-3-orientation, with the dart map from `q`.
pub fn q3_to_bipolar(y: &Quasi3Orientation) -> Result<(BipolarMap, Vec<Option<Dart>>)> {
    let w = q3_to_schnyder(y)?;
    let (x, relabel) = schnyder_to_bipolar(&w)?;
    // darts of q are the first darts of t
    Ok((x, relabel[..y.map().n_darts()].to_vec()))
}

/// Pairs each right-internal edge `e` of the associated bipolar map with the
/// face of `q` on the right of `e`. Returns `(face of q, edge of x)`.
pub fn face_edge_correspondence(y: &Quasi3Orientation) -> Result<(BipolarMap, Vec<(Face, Edge)>)> {
    let (x, relabel) = q3_to_bipolar(y)?;
    let q = y.map();
    let back: HashMap<Dart, Dart> = relabel
        .iter()
        .enumerate()
        .filter_map(|(d, nd)| nd.map(|nd| (nd, d)))
        .collect();
    let pairs = (0..x.map().n_edges())
        .filter(|&e| x.is_right_internal(e))
        .map(|e| (q.face_right(back[&x.tail_dart(e)]), e))
        .collect();
    Ok((x, pairs))
}

/// Rooted simple quasi-triangulations among the given maps.
pub fn simple_quasi_triangulations(maps: &[CombMap]) -> Vec<CombMap> {
    maps.iter()
        .filter(|q| q.is_simple() && is_quasi_triangulation(q))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{ClassFilter, Enumerator};
    use crate::map::fixtures::{k4, triangle};
    use std::collections::HashSet;

    #[test]
    fn k4_has_one_schnyder_wood() {
        let ws = all_three_orientations(&k4()).unwrap();
        assert_eq!(ws.len(), 1);
        check_schnyder(&ws[0]).unwrap();
        let (x, _) = schnyder_to_bipolar(&ws[0]).unwrap();
        assert!(ClassFilter::s(0, 3).contains(&x));
        let back = bipolar_to_schnyder(&x).unwrap();
        assert_eq!(schnyder_to_bipolar(&back).unwrap().0.canonical_code(), x.canonical_code());
    }

    #[test]
    fn triangle_quasi_orbit() {
        let ys = all_quasi3(&triangle()).unwrap();
        assert_eq!(ys.len(), 1);
        let o = orbit_q3(&ys[0]).unwrap();
        assert_eq!(o.len(), 3);
        let ext = triangle().external_face();
        let mult = o.face_multiplicities().unwrap();
        for (f, m) in mult.into_iter().enumerate() {
            assert_eq!(m, if f == ext { 0 } else { 3 });
        }
    }

    #[test]
    fn quasi3_matches_s_counts_and_bijection() {
        let mut en = Enumerator::new(8);
        for (k, j) in [(0, 3), (0, 4), (1, 3), (0, 5), (1, 4)] {
            let e = 3 * k + 2 * j - 3;
            let qs = simple_quasi_triangulations(&en.rooted_maps(e, true).unwrap());
            let mut codes = HashSet::new();
            for q in qs.iter().filter(|q| crate::bipolar::params_of(q) == (k, 2 * k + j - 2, j)) {
                for y in all_quasi3(q).unwrap() {
                    let w = q3_to_schnyder(&y).unwrap();
                    check_schnyder(&w).unwrap();
                    assert_eq!(schnyder_to_q3(&w).unwrap(), y);
                    let (x, _) = schnyder_to_bipolar(&w).unwrap();
                    assert!(ClassFilter::s(k, j).contains(&x), "{k} {j}");
                    let back = bipolar_to_schnyder(&x).unwrap();
                    assert_eq!(schnyder_to_q3(&back).unwrap().code(), y.code());
                    assert!(codes.insert(x.canonical_code()));
                }
            }
            let want: HashSet<_> = en
                .class(ClassFilter::s(k, j))
                .unwrap()
                .iter()
                .map(|x| x.canonical_code())
                .collect();
            assert_eq!(codes, want, "{k} {j}");
        }
    }

    fn all_q3_up_to(e_max: usize) -> Vec<Quasi3Orientation> {
        let mut en = Enumerator::new(e_max);
        let mut out = Vec::new();
        for e in 3..=e_max {
            for q in simple_quasi_triangulations(&en.rooted_maps(e, true).unwrap()) {
                if q.external_degree() >= 3 {
                    out.extend(all_quasi3(&q).unwrap());
                }
            }
        }
        out
    }

    #[test]
    fn quasi_orbit_proportions_and_correspondence() {
        for y in all_q3_up_to(8) {
            let j = y.map().external_degree();
            let o = orbit_q3(&y).unwrap();
            assert_eq!(o.len() % j, 0);
            let ext = y.map().external_face();
            for (f, m) in o.face_multiplicities().unwrap().into_iter().enumerate() {
                if f != ext {
                    assert_eq!(m * j, 3 * o.len());
                }
            }
            // internal faces <-> right-internal edges; left region <-> br
            let (x, pairs) = face_edge_correspondence(&y).unwrap();
            let faces: HashSet<Face> = pairs.iter().map(|p| p.0).collect();
            assert_eq!(faces.len(), pairs.len());
            assert_eq!(faces.len(), y.map().n_faces() - 1);
            let right = right_region(&y).unwrap();
            for (f, e) in pairs {
                assert_eq!(!right[f], x.is_boundary_reaching(e));
            }
        }
    }

    #[test]
    fn separating_paths_coincide() {
        for y in all_q3_up_to(8) {
            let (x, relabel) = q3_to_bipolar(&y).unwrap();
            let qp: Vec<Option<Dart>> = separating_path_q3(&y)
                .unwrap()
                .into_iter()
                .rev()
                .map(|d| relabel[alpha(d)])
                .collect();
            let xp: Vec<Option<Dart>> = crate::rerooting::separating_path(&x)
                .unwrap()
                .into_iter()
                .map(Some)
                .collect();
            assert_eq!(qp, xp);
        }
    }
}

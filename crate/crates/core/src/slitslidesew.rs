//! The growth bijections: slit a bipolar map along the internal part of a
//! rightmost path, slide one side by one step, and sew it back.
//!
//! `phi` removes an internal vertex and produces a boundary-reaching,
//! right-internal marked edge; `psi` undoes it. Both only rewrite `sigma`
//! at the vertices of the path: darts, edges and orientations are kept.
//!
//! Notation used below. Along the path, `p_i` is the tail dart of the i-th
//! edge and `q_i = alpha(p_i)` its head dart. At a path vertex, darts
//! strictly counterclockwise between the incoming path dart and the outgoing
//! one lie on the right of the path (`R`), the others on the left (`L`).

use crate::bipolar::{BipolarMap, PathStart};
use crate::enumerate::is_quasi_triangulation;
use crate::error::{Error, Result};
use crate::map::{alpha, edge_of, CanonicalCode, Dart, Edge, Face, Vertex};

/// A bipolar map with a marked internal vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedVertexMap {
    pub x: BipolarMap,
    pub v: Vertex,
}

/// A bipolar map with a marked edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedEdgeMap {
    pub x: BipolarMap,
    pub e: Edge,
}

impl MarkedVertexMap {
    /// The internal face on the right of the vertex's rightmost path.
    pub fn marked_face(&self) -> Face {
        let m = self.x.map();
        m.face_right(self.x.rightmost_out(self.v))
    }

    pub fn delta(&self) -> usize {
        self.x.rightmost_path(PathStart::Vertex(self.v)).external_index
    }

    pub fn code(&self) -> CanonicalCode {
        let m = self.x.map();
        m.code_with(m.root(), |d| {
            self.x.is_tail(d) as u32 | ((m.origin(d) == self.v) as u32) << 1
        })
        .0
    }
}

impl MarkedEdgeMap {
    pub fn marked_face(&self) -> Face {
        self.x.map().face_right(self.x.tail_dart(self.e))
    }

    pub fn delta(&self) -> usize {
        self.x.external_index(self.e)
    }

    pub fn code(&self) -> CanonicalCode {
        let m = self.x.map();
        m.code_with(m.root(), |d| {
            self.x.is_tail(d) as u32 | ((edge_of(d) == self.e) as u32) << 1
        })
        .0
    }
}

/// Splits the rotation starting at `first` right after `split`:
/// returns the darts strictly between them and the darts after `split`.
fn cut(rot: &[Dart], split: Dart) -> (Vec<Dart>, Vec<Dart>) {
    let pos = rot.iter().position(|&d| d == split).expect("dart in rotation");
    (rot[1..pos].to_vec(), rot[pos + 1..].to_vec())
}

fn cat(parts: &[&[Dart]]) -> Vec<Dart> {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

/// Slit-slide-sew removing the internal vertex `v`.
pub fn phi(input: &MarkedVertexMap) -> Result<MarkedEdgeMap> {
    let x = &input.x;
    let m = x.map();
    let v = input.v;
    if v >= m.n_vertices() || m.external_vertices()[v] {
        return Err(Error::NotInternalVertex(v));
    }
    let path = x.rightmost_path(PathStart::Vertex(v));
    let k = path.internal_len;
    if k == 0 {
        return Err(Error::Internal("empty internal part from an internal vertex".into()));
    }
    let p = &path.darts[..k];
    let a0 = m.sigma_inv(p[0]);
    // q[0] is the dart preceding p_1 clockwise at v; q[i] = alpha(p_i)
    let mut q = vec![a0];
    q.extend(p.iter().map(|&d| alpha(d)));

    let mut left = Vec::with_capacity(k + 1);
    let mut right = vec![Vec::new()];
    left.push(cut(&m.rotation_from(a0), p[0]).1);
    for i in 1..k {
        let (r, l) = cut(&m.rotation_from(q[i]), p[i]);
        right.push(r);
        left.push(l);
    }
    let ext = m.external_face();
    let top = m.rotation_from(q[k]);
    let xpos = top
        .iter()
        .position(|&d| m.face_left(d) == ext)
        .ok_or_else(|| Error::Internal("path end is not on the boundary".into()))?;
    right.push(top[1..=xpos].to_vec());
    left.push(top[xpos + 1..].to_vec());

    let mut rotations = Vec::with_capacity(k + 1);
    for i in 1..=k {
        rotations.push(cat(&[&[q[i - 1]], &right[i], &[p[i - 1]], &left[i - 1]]));
    }
    rotations.push(cat(&[&left[k], &[q[k]]]));
    let map = m.with_rotations(&rotations, m.root())?;
    let y = BipolarMap::check(map, x.even_tail().to_vec())?;
    Ok(MarkedEdgeMap { x: y, e: edge_of(a0) })
}

/// Inverse of [`phi`]: inserts an internal vertex below the marked edge.
pub fn psi(input: &MarkedEdgeMap) -> Result<MarkedVertexMap> {
    let x = &input.x;
    let m = x.map();
    let e = input.e;
    if e >= m.n_edges() || !x.is_right_internal(e) {
        return Err(Error::NotRightInternal(e));
    }
    let path = x.rightmost_path(PathStart::Edge(e));
    if path.external_index == 0 {
        return Err(Error::NotBoundaryReaching(e));
    }
    let k = path.internal_len;
    // big_p[i] = P_{i+1}, for i = 0..=k (P_{k+1} leaves the boundary vertex)
    let big_p = &path.darts[..=k];
    let big_q: Vec<Dart> = big_p.iter().map(|&d| alpha(d)).collect();

    let mut right = vec![Vec::new()];
    let mut left = Vec::with_capacity(k + 1);
    for i in 1..=k {
        let (r, l) = cut(&m.rotation_from(big_q[i - 1]), big_p[i]);
        right.push(r);
        left.push(l);
    }
    left.push(m.rotation_from(big_q[k])[1..].to_vec());

    let mut rotations = Vec::with_capacity(k + 1);
    rotations.push(cat(&[&[big_q[0]], &[big_p[1]], &left[0]]));
    for i in 1..k {
        rotations.push(cat(&[&[big_q[i]], &right[i], &[big_p[i + 1]], &left[i]]));
    }
    rotations.push(cat(&[&[big_q[k]], &right[k], &left[k]]));
    let map = m.with_rotations(&rotations, m.root())?;
    let v = map.origin(big_q[0]);
    let y = BipolarMap::check(map, x.even_tail().to_vec())?;
    Ok(MarkedVertexMap { x: y, v })
}

/// Doubles edge `e` into a face of degree 2. The new edge is the last one,
/// lies on the left of `e`, and has the new face on its right.
pub fn blow(x: &BipolarMap, e: Edge) -> Result<MarkedEdgeMap> {
    let m = x.map();
    let t = x.tail_dart(e);
    let h = alpha(t);
    let n = m.n_darts();
    let map = m.insert_edge(t, m.sigma_inv(h), m.root())?;
    let mut even_tail = x.even_tail().to_vec();
    even_tail.push(true);
    let y = BipolarMap::check(map, even_tail)?;
    Ok(MarkedEdgeMap { x: y, e: edge_of(n) })
}

/// Inverse of [`blow`]: `e` must have a face of degree 2 on its right.
/// Deletes `e` and marks the other edge of that face.
pub fn collapse(x: &BipolarMap, e: Edge) -> Result<MarkedEdgeMap> {
    let m = x.map();
    let t = x.tail_dart(e);
    let face = m.face_walk(t);
    if face.len() != 2 {
        return Err(Error::Internal(format!("edge {e} does not bound a digon on its right")));
    }
    let other = edge_of(face[1]);
    let (map, relabel) = m.delete_edges(&[e])?;
    let even_tail: Vec<bool> = (0..m.n_edges())
        .filter(|&f| f != e)
        .map(|f| x.even_tail()[f])
        .collect();
    let y = BipolarMap::check(map, even_tail)?;
    let new_e = edge_of(relabel[2 * other].expect("survivor"));
    Ok(MarkedEdgeMap { x: y, e: new_e })
}

/// Growth bijection restricted to quasi-triangulations: `phi` followed by
/// sewing the resulting face of degree 2.
pub fn phi_hat(input: &MarkedVertexMap) -> Result<MarkedEdgeMap> {
    if !is_quasi_triangulation(input.x.map()) {
        return Err(Error::NotQuasiTriangulation);
    }
    let mid = phi(input)?;
    collapse(&mid.x, mid.e)
}

/// Inverse of [`phi_hat`]: double the marked edge, then apply `psi`.
pub fn psi_hat(input: &MarkedEdgeMap) -> Result<MarkedVertexMap> {
    if !is_quasi_triangulation(input.x.map()) {
        return Err(Error::NotQuasiTriangulation);
    }
    if !input.x.is_boundary_reaching(input.e) {
        return Err(Error::NotBoundaryReaching(input.e));
    }
    let mid = blow(&input.x, input.e)?;
    psi(&mid)
}

/// Checks the parameter changes caused by `phi`, returning a description of
/// the first mismatch.
pub fn check_ledger(before: &MarkedVertexMap, after: &MarkedEdgeMap) -> std::result::Result<(), String> {
    let (k0, l0, j0) = before.x.params();
    let (k1, l1, j1) = after.x.params();
    if (k1 + 1, l1, j1) != (k0, l0, j0 + 1) {
        return Err(format!("parameters ({k0},{l0},{j0}) -> ({k1},{l1},{j1})"));
    }
    if after.delta() != before.delta() + 1 {
        return Err(format!("external index {} -> {}", before.delta(), after.delta()));
    }
    let (ml, mr) = before.x.face_lengths(before.marked_face());
    if after.x.face_lengths(after.marked_face()) != (ml - 1, mr) {
        return Err("marked face lengths".into());
    }
    let mut expect = before.x.face_length_multiset();
    let pos = expect.iter().position(|&f| f == (ml, mr)).expect("marked face listed");
    expect[pos] = (ml - 1, mr);
    expect.sort_unstable();
    if after.x.face_length_multiset() != expect {
        return Err("lateral lengths of unmarked faces changed".into());
    }
    Ok(())
}

//! Bipolar orientations: local rules, rightmost paths and edge classes.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::map::{alpha, edge_of, CombMap, Dart, Edge, Face, Vertex};

/// A rooted map together with an orientation satisfying the bipolar rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipolarMap {
    map: CombMap,
    even_tail: Vec<bool>,
    south: Vertex,
    north: Vertex,
}

/// Where a rightmost path starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathStart {
    Vertex(Vertex),
    Edge(Edge),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightmostPath {
    /// Tail darts of the path edges, in order.
    pub darts: Vec<Dart>,
    /// Number of leading edges before the path first touches the boundary.
    pub internal_len: usize,
    /// Number of edges after that point.
    pub external_index: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    Root,
    RightBoundary,
    Internal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeClass {
    pub kind: EdgeKind,
    pub right_internal: bool,
    pub boundary_reaching: bool,
}

/// Number of cyclic changes of value in a boolean sequence.
fn switches(bits: &[bool]) -> usize {
    (0..bits.len())
        .filter(|&i| bits[i] != bits[(i + 1) % bits.len()])
        .count()
}

impl BipolarMap {
    /// Checks the local rules and acyclicity. `even_tail[e]` tells whether
    /// dart `2e` is the tail of edge `e`.
    pub fn check(map: CombMap, even_tail: Vec<bool>) -> Result<BipolarMap> {
        if even_tail.len() != map.n_edges() {
            return Err(Error::OrientationLength {
                got: even_tail.len(),
                expected: map.n_edges(),
            });
        }
        let is_tail = |d: Dart| even_tail[edge_of(d)] == d.is_multiple_of(2);
        let root = map.root();
        let south = map.origin(root);
        let north = map.target(root);
        if !is_tail(root) {
            return Err(Error::SourceSinkViolation(south));
        }
        for pole in [south, north] {
            let want_out = pole == south;
            if map.rotation(pole).iter().any(|&d| is_tail(d) != want_out) {
                return Err(Error::SourceSinkViolation(pole));
            }
        }
        for v in 0..map.n_vertices() {
            if v == south || v == north {
                continue;
            }
            let bits: Vec<bool> = map.rotation(v).iter().map(|&d| is_tail(d)).collect();
            if switches(&bits) != 2 {
                return Err(Error::VertexRuleViolation(v));
            }
        }
        let ext = map.external_face();
        for f in 0..map.n_faces() {
            let darts = map.face_darts(f);
            if f == ext {
                if darts.iter().any(|&d| d != alpha(root) && !is_tail(d)) {
                    return Err(Error::RightBoundaryViolation);
                }
            } else {
                let bits: Vec<bool> = darts.iter().map(|&d| is_tail(d)).collect();
                if switches(&bits) != 2 {
                    return Err(Error::FaceRuleViolation(f));
                }
            }
        }
        let x = BipolarMap {
            map,
            even_tail,
            south,
            north,
        };
        if !x.is_acyclic() {
            return Err(Error::DirectedCycle);
        }
        Ok(x)
    }

    /// Kahn's algorithm over the directed edges.
    pub fn is_acyclic(&self) -> bool {
        let nv = self.map.n_vertices();
        let mut indeg = vec![0usize; nv];
        let mut out: Vec<Vec<Vertex>> = vec![Vec::new(); nv];
        for e in 0..self.map.n_edges() {
            let t = self.tail_dart(e);
            indeg[self.map.target(t)] += 1;
            out[self.map.origin(t)].push(self.map.target(t));
        }
        let mut queue: VecDeque<Vertex> = (0..nv).filter(|&v| indeg[v] == 0).collect();
        let mut done = 0;
        while let Some(v) = queue.pop_front() {
            done += 1;
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        done == nv
    }

    pub fn map(&self) -> &CombMap {
        &self.map
    }
    pub fn into_parts(self) -> (CombMap, Vec<bool>) {
        (self.map, self.even_tail)
    }
    pub fn even_tail(&self) -> &[bool] {
        &self.even_tail
    }
    pub fn south(&self) -> Vertex {
        self.south
    }
    pub fn north(&self) -> Vertex {
        self.north
    }

    pub fn is_tail(&self, d: Dart) -> bool {
        self.even_tail[edge_of(d)] == d.is_multiple_of(2)
    }
    pub fn tail_dart(&self, e: Edge) -> Dart {
        if self.even_tail[e] {
            2 * e
        } else {
            2 * e + 1
        }
    }
    pub fn tail(&self, e: Edge) -> Vertex {
        self.map.origin(self.tail_dart(e))
    }
    pub fn head(&self, e: Edge) -> Vertex {
        self.map.target(self.tail_dart(e))
    }

    /// Internal vertices, internal faces and external degree `(k, l, j)`.
    pub fn params(&self) -> (usize, usize, usize) {
        params_of(&self.map)
    }

    /// Left and right lengths of an internal face: the number of edges
    /// having the face on their right (left lateral path) and on their left.
    pub fn face_lengths(&self, f: Face) -> (usize, usize) {
        let darts = self.map.face_darts(f);
        let left = darts.iter().filter(|&&d| self.is_tail(d)).count();
        (left, darts.len() - left)
    }

    /// `(left, right)` lengths of all internal faces, sorted.
    pub fn face_length_multiset(&self) -> Vec<(usize, usize)> {
        let ext = self.map.external_face();
        let mut v: Vec<_> = (0..self.map.n_faces())
            .filter(|&f| f != ext)
            .map(|f| self.face_lengths(f))
            .collect();
        v.sort_unstable();
        v
    }

    /// The outgoing dart at `v` that follows its incoming group
    /// counterclockwise; at the south pole, the outgoing dart having the
    /// external face on its right.
    pub fn rightmost_out(&self, v: Vertex) -> Dart {
        assert_ne!(v, self.north, "the north pole has no outgoing edge");
        let ext = self.map.external_face();
        let rot = self.map.rotation(v);
        if v == self.south {
            return rot
                .into_iter()
                .find(|&d| self.map.face_right(d) == ext)
                .expect("south pole lies on the external face");
        }
        rot.into_iter()
            .find(|&d| self.is_tail(d) && !self.is_tail(self.map.sigma_inv(d)))
            .expect("vertex rule")
    }

    /// The incoming dart (seen from `w`) that follows the outgoing group
    /// counterclockwise.
    pub fn leftmost_in(&self, w: Vertex) -> Dart {
        assert_ne!(w, self.south, "the south pole has no incoming edge");
        self.map
            .rotation(w)
            .into_iter()
            .find(|&d| !self.is_tail(d) && self.is_tail(self.map.sigma_inv(d)))
            .expect("vertex rule")
    }

    pub fn rightmost_path(&self, start: PathStart) -> RightmostPath {
        let first = match start {
            PathStart::Vertex(v) => self.rightmost_out(v),
            PathStart::Edge(e) => self.tail_dart(e),
        };
        let ext = self.map.external_vertices();
        let mut darts = vec![first];
        let mut internal_len = None;
        let mut d = first;
        loop {
            let w = self.map.target(d);
            if w == self.north {
                break;
            }
            if internal_len.is_none() && ext[w] {
                internal_len = Some(darts.len());
            }
            d = self.rightmost_out(w);
            darts.push(d);
        }
        let internal_len = internal_len.unwrap_or(darts.len());
        RightmostPath {
            external_index: darts.len() - internal_len,
            internal_len,
            darts,
        }
    }

    pub fn external_index(&self, e: Edge) -> usize {
        self.rightmost_path(PathStart::Edge(e)).external_index
    }

    pub fn is_boundary_reaching(&self, e: Edge) -> bool {
        self.external_index(e) > 0
    }

    pub fn is_right_internal(&self, e: Edge) -> bool {
        self.map.face_right(self.tail_dart(e)) != self.map.external_face()
    }

    pub fn classify_edge(&self, e: Edge) -> EdgeClass {
        let ext = self.map.external_face();
        let kind = if e == edge_of(self.map.root()) {
            EdgeKind::Root
        } else if self.map.face_right(2 * e) == ext || self.map.face_left(2 * e) == ext {
            EdgeKind::RightBoundary
        } else {
            EdgeKind::Internal
        };
        EdgeClass {
            kind,
            right_internal: self.is_right_internal(e),
            boundary_reaching: self.is_boundary_reaching(e),
        }
    }

    /// Right boundary darts from S to N.
    pub fn right_boundary(&self) -> Vec<Dart> {
        let mut out = vec![self.rightmost_out(self.south)];
        while self.map.target(*out.last().unwrap()) != self.north {
            let d = self.map.phi(*out.last().unwrap());
            out.push(d);
        }
        out
    }

    /// Same map with a new orientation and root, re-checked.
    pub fn reoriented(&self, even_tail: Vec<bool>, root: Dart) -> Result<BipolarMap> {
        BipolarMap::check(self.map.with_root(root), even_tail)
    }

    /// Canonical code including the orientation.
    pub fn canonical_code(&self) -> crate::map::CanonicalCode {
        self.map
            .code_with(self.map.root(), |d| self.is_tail(d) as u32)
            .0
    }
}

/// `(k, l, j)`: vertices off the external face, faces other than the
/// external one, and degree of the external face.
pub fn params_of(map: &CombMap) -> (usize, usize, usize) {
    let k = map.external_vertices().iter().filter(|&&b| !b).count();
    (k, map.n_faces() - 1, map.external_degree())
}

/// All bipolar orientations of a rooted map, by exhaustive search over the
/// `2^E` orientations.
pub fn all_orientations(map: &CombMap) -> Vec<BipolarMap> {
    let ne = map.n_edges();
    assert!(ne < 28, "exhaustive orientation search is exponential");
    (0u64..1 << ne)
        .filter_map(|bits| {
            let even_tail = (0..ne).map(|e| bits >> e & 1 == 1).collect();
            BipolarMap::check(map.clone(), even_tail).ok()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::fixtures::*;

    /// Triangle with S -> v, v -> N and root S -> N.
    pub(crate) fn triangle_bipolar() -> BipolarMap {
        BipolarMap::check(triangle(), vec![true, true, true]).unwrap()
    }

    #[test]
    fn triangle_is_bipolar() {
        let x = triangle_bipolar();
        let m = x.map();
        assert_eq!(x.south(), m.origin(0));
        assert_eq!(x.north(), m.origin(1));
        assert_eq!(x.params(), (0, 1, 3));
        assert_eq!(x.face_length_multiset(), vec![(1, 2)]);
        // the other three orientations of the non-root edges fail
        assert_eq!(all_orientations(m).len(), 1);
    }

    #[test]
    fn triangle_reversed_edge_into_south() {
        // edge 1 oriented v -> S
        let err = BipolarMap::check(triangle(), vec![true, false, true]).unwrap_err();
        assert_eq!(err, Error::SourceSinkViolation(triangle().origin(0)));
    }

    #[test]
    fn digon_orientation() {
        let all = all_orientations(&digon());
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].params(), (0, 1, 2));
        for e in 0..2 {
            assert!(!all[0].is_boundary_reaching(e));
        }
    }

    #[test]
    fn triangle_paths_and_classes() {
        let x = triangle_bipolar();
        let p = x.rightmost_path(PathStart::Edge(1));
        assert_eq!(p.darts, vec![2, 4]);
        assert_eq!(p.external_index, 1);
        let p = x.rightmost_path(PathStart::Edge(0));
        assert_eq!(p.darts, vec![0]);
        assert_eq!(p.external_index, 0);
        let br: Vec<bool> = (0..3).map(|e| x.is_boundary_reaching(e)).collect();
        assert_eq!(br, vec![false, true, false]);
        assert_eq!(x.classify_edge(0).kind, EdgeKind::Root);
        assert!(x.classify_edge(0).right_internal);
        assert!(!x.classify_edge(1).right_internal);
        assert_eq!(x.right_boundary(), vec![2, 4]);
    }

    #[test]
    fn k4_orientations() {
        // K4 rooted on an outer edge: the count of bipolar orientations with
        // fixed poles on an edge of K4 is 2 (the centre and the third outer
        // vertex are ordered either way relative to each other).
        let all = all_orientations(&k4());
        assert_eq!(all.len(), 2);
        for x in &all {
            assert!(x.is_acyclic());
            assert_eq!(x.params(), (1, 3, 3));
        }
    }
}

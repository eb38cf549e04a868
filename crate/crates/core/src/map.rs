//! Rooted planar maps as rotation systems on darts.
//!
//! Darts are the integers `0..n_darts`. The edge involution is fixed to
//! `alpha(d) = d ^ 1`, so edge `e` owns darts `2e` and `2e + 1`. `sigma(d)` is
//! the next dart counterclockwise around the origin of `d`, and
//! `phi = sigma ∘ alpha` walks the face lying to the *right* of a dart.
//! The external face is the face to the left of the root dart.

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type Dart = usize;
pub type Vertex = usize;
pub type Face = usize;
pub type Edge = usize;

#[inline]
pub fn alpha(d: Dart) -> Dart {
    d ^ 1
}

#[inline]
pub fn edge_of(d: Dart) -> Edge {
    d >> 1
}

/// An immutable, validated rooted planar map.
#[derive(Clone, Debug)]
pub struct CombMap {
    sigma: Vec<Dart>,
    sigma_inv: Vec<Dart>,
    root: Dart,
    vertex: Vec<Vertex>,
    face: Vec<Face>,
    vertex_rep: Vec<Dart>,
    face_rep: Vec<Dart>,
}

/// Breadth-first relabeling trace; equal codes iff the rooted maps are
/// isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(pub Vec<u32>);

fn orbits(n: usize, next: impl Fn(Dart) -> Dart) -> (Vec<usize>, Vec<Dart>) {
    let mut id = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for start in 0..n {
        if id[start] != usize::MAX {
            continue;
        }
        let k = reps.len();
        reps.push(start);
        let mut d = start;
        loop {
            id[d] = k;
            d = next(d);
            if d == start {
                break;
            }
        }
    }
    (id, reps)
}

fn check_permutation(p: &[usize], which: &'static str) -> Result<()> {
    let mut seen = vec![false; p.len()];
    for (d, &x) in p.iter().enumerate() {
        if x >= p.len() || seen[x] {
            return Err(Error::NotPermutation { which, dart: d });
        }
        seen[x] = true;
    }
    Ok(())
}

impl CombMap {
    /// Builds a map from a rotation `sigma` with the implicit involution
    /// `d ^ 1`, checking connectivity and planarity.
    pub fn from_sigma(sigma: Vec<Dart>, root: Dart) -> Result<Self> {
        let n = sigma.len();
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::BadLength(format!("n_darts = {n}")));
        }
        if root >= n {
            return Err(Error::BadRoot(root));
        }
        check_permutation(&sigma, "sigma")?;
        let mut sigma_inv = vec![0; n];
        for (d, &s) in sigma.iter().enumerate() {
            sigma_inv[s] = d;
        }
        let (vertex, vertex_rep) = orbits(n, |d| sigma[d]);
        let (face, face_rep) = orbits(n, |d| sigma[alpha(d)]);

        // connectivity under <alpha, sigma>
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(d) = queue.pop_front() {
            for nb in [sigma[d], alpha(d)] {
                if !seen[nb] {
                    seen[nb] = true;
                    count += 1;
                    queue.push_back(nb);
                }
            }
        }
        if count != n {
            return Err(Error::Disconnected);
        }
        let chi = vertex_rep.len() as i64 - (n / 2) as i64 + face_rep.len() as i64;
        if chi != 2 {
            return Err(Error::PositiveGenus(((2 - chi) / 2) as usize));
        }
        Ok(CombMap {
            sigma,
            sigma_inv,
            root,
            vertex,
            face,
            vertex_rep,
            face_rep,
        })
    }

    /// Validates raw dart arrays with an arbitrary involution. Darts are
    /// renumbered so that paired darts become `2e, 2e + 1`, edges ordered by
    /// their smaller dart; the smaller dart of each pair becomes the even one.
    /// Returns the map together with the old-to-new dart renumbering.
    pub fn validate(alpha_raw: &[usize], sigma_raw: &[usize], root: usize) -> Result<(Self, Vec<Dart>)> {
        let n = alpha_raw.len();
        if sigma_raw.len() != n {
            return Err(Error::BadLength(format!(
                "alpha has {} entries, sigma has {}",
                n,
                sigma_raw.len()
            )));
        }
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::BadLength(format!("n_darts = {n}")));
        }
        for (d, &a) in alpha_raw.iter().enumerate() {
            if a >= n || a == d || alpha_raw[a] != d {
                return Err(Error::NotInvolution(d));
            }
        }
        check_permutation(sigma_raw, "sigma")?;
        if root >= n {
            return Err(Error::BadRoot(root));
        }
        let mut relabel = vec![usize::MAX; n];
        let mut next = 0;
        for d in 0..n {
            if relabel[d] == usize::MAX {
                relabel[d] = next;
                relabel[alpha_raw[d]] = next + 1;
                next += 2;
            }
        }
        let mut sigma = vec![0; n];
        for d in 0..n {
            sigma[relabel[d]] = relabel[sigma_raw[d]];
        }
        let map = CombMap::from_sigma(sigma, relabel[root])?;
        Ok((map, relabel))
    }

    pub fn n_darts(&self) -> usize {
        self.sigma.len()
    }
    pub fn n_edges(&self) -> usize {
        self.sigma.len() / 2
    }
    pub fn n_vertices(&self) -> usize {
        self.vertex_rep.len()
    }
    pub fn n_faces(&self) -> usize {
        self.face_rep.len()
    }
    pub fn root(&self) -> Dart {
        self.root
    }
    pub fn sigma(&self, d: Dart) -> Dart {
        self.sigma[d]
    }
    pub fn sigma_inv(&self, d: Dart) -> Dart {
        self.sigma_inv[d]
    }
    pub fn sigma_slice(&self) -> &[Dart] {
        &self.sigma
    }
    /// Next dart along the face to the right of `d`.
    pub fn phi(&self, d: Dart) -> Dart {
        self.sigma[alpha(d)]
    }
    pub fn phi_inv(&self, d: Dart) -> Dart {
        alpha(self.sigma_inv[d])
    }
    /// Vertex the dart starts from.
    pub fn origin(&self, d: Dart) -> Vertex {
        self.vertex[d]
    }
    pub fn target(&self, d: Dart) -> Vertex {
        self.vertex[alpha(d)]
    }
    pub fn face_right(&self, d: Dart) -> Face {
        self.face[d]
    }
    pub fn face_left(&self, d: Dart) -> Face {
        self.face[alpha(d)]
    }
    pub fn external_face(&self) -> Face {
        self.face_left(self.root)
    }
    pub fn vertex_dart(&self, v: Vertex) -> Dart {
        self.vertex_rep[v]
    }
    pub fn face_dart(&self, f: Face) -> Dart {
        self.face_rep[f]
    }

    /// Darts around `v` in counterclockwise order.
    pub fn rotation(&self, v: Vertex) -> Vec<Dart> {
        self.rotation_from(self.vertex_rep[v])
    }

    pub fn rotation_from(&self, start: Dart) -> Vec<Dart> {
        let mut out = vec![start];
        let mut d = self.sigma[start];
        while d != start {
            out.push(d);
            d = self.sigma[d];
        }
        out
    }

    /// Darts having `f` on their right, in walking order.
    pub fn face_darts(&self, f: Face) -> Vec<Dart> {
        self.face_walk(self.face_rep[f])
    }

    pub fn face_walk(&self, start: Dart) -> Vec<Dart> {
        let mut out = vec![start];
        let mut d = self.phi(start);
        while d != start {
            out.push(d);
            d = self.phi(d);
        }
        out
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rotation(v).len()
    }

    pub fn face_degrees(&self) -> Vec<(Face, usize)> {
        let mut deg = vec![0; self.n_faces()];
        for &f in &self.face {
            deg[f] += 1;
        }
        deg.into_iter().enumerate().collect()
    }

    pub fn face_degree(&self, f: Face) -> usize {
        self.face_darts(f).len()
    }

    pub fn external_degree(&self) -> usize {
        self.face_degree(self.external_face())
    }

    /// Vertices incident to the external face.
    pub fn external_vertices(&self) -> Vec<bool> {
        let mut ext = vec![false; self.n_vertices()];
        for d in self.face_darts(self.external_face()) {
            ext[self.origin(d)] = true;
        }
        ext
    }

    pub fn is_loop(&self, e: Edge) -> bool {
        self.origin(2 * e) == self.origin(2 * e + 1)
    }

    pub fn is_loopless(&self) -> bool {
        (0..self.n_edges()).all(|e| !self.is_loop(e))
    }

    /// Loopless and without multiple edges.
    pub fn is_simple(&self) -> bool {
        if !self.is_loopless() {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        (0..self.n_edges()).all(|e| {
            let (a, b) = (self.origin(2 * e), self.origin(2 * e + 1));
            seen.insert((a.min(b), a.max(b)))
        })
    }

    /// Loopless and no single vertex deletion disconnects the map.
    pub fn is_two_connected(&self) -> bool {
        if !self.is_loopless() {
            return false;
        }
        let nv = self.n_vertices();
        if nv <= 2 {
            return true;
        }
        let mut adj = vec![Vec::new(); nv];
        for e in 0..self.n_edges() {
            let (a, b) = (self.origin(2 * e), self.origin(2 * e + 1));
            adj[a].push(b);
            adj[b].push(a);
        }
        (0..nv).all(|cut| {
            let start = if cut == 0 { 1 } else { 0 };
            let mut seen = vec![false; nv];
            seen[cut] = true;
            seen[start] = true;
            let mut stack = vec![start];
            let mut count = 1;
            while let Some(u) = stack.pop() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        count += 1;
                        stack.push(w);
                    }
                }
            }
            count == nv - 1
        })
    }

    /// Same map with a different root dart.
    pub fn with_root(&self, root: Dart) -> CombMap {
        assert!(root < self.n_darts());
        CombMap {
            root,
            ..self.clone()
        }
    }

    /// Breadth-first order of darts from `root`, exploring `sigma` then
    /// `alpha`. Position in the returned vector is the canonical label.
    pub fn canonical_order(&self, root: Dart) -> Vec<Dart> {
        let n = self.n_darts();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        seen[root] = true;
        order.push(root);
        let mut i = 0;
        while i < order.len() {
            let d = order[i];
            i += 1;
            for nb in [self.sigma[d], alpha(d)] {
                if !seen[nb] {
                    seen[nb] = true;
                    order.push(nb);
                }
            }
        }
        order
    }

    /// Canonical code rooted at `root`, with one extra tag per dart.
    pub fn code_with(&self, root: Dart, tag: impl Fn(Dart) -> u32) -> (CanonicalCode, Vec<u32>) {
        let order = self.canonical_order(root);
        let mut label = vec![0u32; self.n_darts()];
        for (i, &d) in order.iter().enumerate() {
            label[d] = i as u32;
        }
        let mut code = Vec::with_capacity(3 * order.len());
        for &d in &order {
            code.push(label[self.sigma[d]]);
            code.push(label[alpha(d)]);
            code.push(tag(d));
        }
        (CanonicalCode(code), label)
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        self.code_with(self.root, |_| 0).0
    }

    /// Smallest code over all rootings; identifies the unrooted map.
    pub fn unrooted_code(&self) -> CanonicalCode {
        (0..self.n_darts())
            .map(|r| self.code_with(r, |_| 0).0)
            .min()
            .expect("nonempty map")
    }

    /// Rebuilds the map with new rotations for the listed vertices. Every
    /// listed dart gets `sigma` following the cyclic order of its list; all
    /// other darts keep their successor.
    pub fn with_rotations(&self, rotations: &[Vec<Dart>], root: Dart) -> Result<CombMap> {
        let mut sigma = self.sigma.clone();
        for rot in rotations {
            for (i, &d) in rot.iter().enumerate() {
                sigma[d] = rot[(i + 1) % rot.len()];
            }
        }
        CombMap::from_sigma(sigma, root)
    }

    /// Inserts an edge whose first dart goes right after corner dart `x`
    /// (counterclockwise) and whose second dart goes right after `y`. When
    /// `x == y` both darts land in the same corner, producing a loop. The
    /// corners must lie in a common face for the result to stay planar.
    /// Existing darts keep their numbers; the new edge is the last one.
    pub fn insert_edge(&self, x: Dart, y: Dart, root: Dart) -> Result<CombMap> {
        let n = self.n_darts();
        let (a, b) = (n, n + 1);
        let mut sigma = self.sigma.clone();
        sigma.extend([0, 0]);
        if x == y {
            let after = self.sigma[x];
            sigma[x] = a;
            sigma[a] = b;
            sigma[b] = after;
        } else {
            sigma[a] = self.sigma[x];
            sigma[x] = a;
            sigma[b] = self.sigma[y];
            sigma[y] = b;
        }
        CombMap::from_sigma(sigma, root)
    }

    /// Adds a pendant edge from the corner after `x` to a new vertex.
    pub fn insert_pendant(&self, x: Dart, root: Dart) -> Result<CombMap> {
        let n = self.n_darts();
        let mut sigma = self.sigma.clone();
        sigma.extend([self.sigma[x], n + 1]);
        sigma[x] = n;
        CombMap::from_sigma(sigma, root)
    }

    /// Splits the vertex of `first` so that the counterclockwise run of `len`
    /// darts starting at `first` moves to a new vertex joined to the old one
    /// by a new edge (the inverse of an edge contraction).
    pub fn split_vertex(&self, first: Dart, len: usize, root: Dart) -> Result<CombMap> {
        let rot = self.rotation_from(first);
        assert!(len >= 1 && len < rot.len());
        let n = self.n_darts();
        let (a, b) = (n, n + 1);
        let mut moved: Vec<Dart> = rot[..len].to_vec();
        moved.push(b);
        let mut kept: Vec<Dart> = rot[len..].to_vec();
        kept.push(a);
        let mut sigma = self.sigma.clone();
        sigma.extend([0, 0]);
        for list in [&moved, &kept] {
            for (i, &d) in list.iter().enumerate() {
                sigma[d] = list[(i + 1) % list.len()];
            }
        }
        CombMap::from_sigma(sigma, root)
    }

    /// Deletes the given edges. Returns the new map and the old-to-new dart
    /// renumbering (`None` for deleted darts). Surviving edges keep their
    /// relative order and parity. The root must survive.
    pub fn delete_edges(&self, edges: &[Edge]) -> Result<(CombMap, Vec<Option<Dart>>)> {
        let n = self.n_darts();
        let mut gone = vec![false; n];
        for &e in edges {
            gone[2 * e] = true;
            gone[2 * e + 1] = true;
        }
        if gone[self.root] {
            return Err(Error::Internal("cannot delete the root edge".into()));
        }
        let mut relabel = vec![None; n];
        let mut next = 0;
        for d in 0..n {
            if !gone[d] {
                relabel[d] = Some(next);
                next += 1;
            }
        }
        let mut sigma = vec![0; next];
        for d in 0..n {
            if let Some(nd) = relabel[d] {
                let mut s = self.sigma[d];
                while gone[s] {
                    s = self.sigma[s];
                }
                sigma[nd] = relabel[s].expect("survivor");
            }
        }
        let root = relabel[self.root].expect("root survives");
        Ok((CombMap::from_sigma(sigma, root)?, relabel))
    }
}

impl PartialEq for CombMap {
    fn eq(&self, other: &Self) -> bool {
        self.sigma == other.sigma && self.root == other.root
    }
}
impl Eq for CombMap {}

/// Small fixed maps used across tests, fixtures and documentation.
pub mod fixtures {
    use super::*;

    /// Two vertices joined by two parallel edges; root is dart 0.
    pub fn digon() -> CombMap {
        // vertex 0: darts 0, 2 ; vertex 1: darts 1, 3
        CombMap::from_sigma(vec![2, 3, 0, 1], 0).unwrap()
    }

    /// A triangle S, v, N with the root S -> N and v on the right of it.
    /// Edge 0 = S-N (root dart 0), edge 1 = S-v (dart 2 at S), edge 2 = v-N
    /// (dart 4 at v).
    pub fn triangle() -> CombMap {
        // S: 0 (to N), 2 (to v). ccw at S: with v to the right of S->N,
        // the ccw successor of the dart to N... order [2, 0].
        // v: 3 (to S), 4 (to N). N: 1 (to S), 5 (to v).
        let mut sigma = vec![0; 6];
        let rot = |s: &mut Vec<usize>, r: &[usize]| {
            for i in 0..r.len() {
                s[r[i]] = r[(i + 1) % r.len()];
            }
        };
        rot(&mut sigma, &[2, 0]);
        rot(&mut sigma, &[3, 4]);
        rot(&mut sigma, &[1, 5]);
        CombMap::from_sigma(sigma, 0).unwrap()
    }

    /// The complete graph on four vertices embedded with the outer triangle
    /// a, b, c and the centre d.
    pub fn k4() -> CombMap {
        // edges: 0 a-b, 1 b-c, 2 c-a, 3 d-a, 4 d-b, 5 d-c
        // a: 0 (ab), 5 (ac), 7 (ad)
        // b: 1 (ba), 2 (bc), 9 (bd)
        // c: 3 (cb), 4 (ca), 11 (cd)
        // d: 6 (da), 8 (db), 10 (dc)
        let mut sigma = vec![0; 12];
        let rot = |s: &mut Vec<usize>, r: &[usize]| {
            for i in 0..r.len() {
                s[r[i]] = r[(i + 1) % r.len()];
            }
        };
        rot(&mut sigma, &[0, 7, 5]);
        rot(&mut sigma, &[2, 9, 1]);
        rot(&mut sigma, &[4, 11, 3]);
        rot(&mut sigma, &[6, 8, 10]);
        CombMap::from_sigma(sigma, 0).unwrap()
    }

    /// Two triangles sharing a single vertex.
    pub fn bowtie() -> CombMap {
        // centre c; triangle 1: c,x,y ; triangle 2: c,z,w
        // edges: 0 c-x, 1 x-y, 2 y-c, 3 c-z, 4 z-w, 5 w-c
        let mut sigma = vec![0; 12];
        let rot = |s: &mut Vec<usize>, r: &[usize]| {
            for i in 0..r.len() {
                s[r[i]] = r[(i + 1) % r.len()];
            }
        };
        rot(&mut sigma, &[0, 5, 6, 11]); // c: to x, to y, to z, to w
        rot(&mut sigma, &[1, 2]); // x
        rot(&mut sigma, &[3, 4]); // y
        rot(&mut sigma, &[7, 8]); // z
        rot(&mut sigma, &[9, 10]); // w
        CombMap::from_sigma(sigma, 0).unwrap()
    }

    /// A single loop on one vertex.
    pub fn single_loop() -> CombMap {
        CombMap::from_sigma(vec![1, 0], 0).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn digon_counts() {
        let m = digon();
        assert_eq!((m.n_vertices(), m.n_edges(), m.n_faces()), (2, 2, 2));
        let mut degs: Vec<usize> = m.face_degrees().into_iter().map(|x| x.1).collect();
        degs.sort();
        assert_eq!(degs, vec![2, 2]);
    }

    #[test]
    fn triangle_counts_and_external_face() {
        let m = triangle();
        assert_eq!((m.n_vertices(), m.n_edges(), m.n_faces()), (3, 3, 2));
        let degs: Vec<usize> = m.face_degrees().into_iter().map(|x| x.1).collect();
        assert_eq!(degs, vec![3, 3]);
        // the external face is on the left of the root, and the vertex v lies
        // on the right of S -> N, i.e. the S->v->N path bounds the external face
        let ext = m.external_face();
        assert_eq!(m.face_left(0), ext);
        assert_ne!(m.face_right(0), ext);
        // S -> v (dart 2) has the external face on its right
        assert_eq!(m.face_right(2), ext);
    }

    #[test]
    fn k4_faces() {
        let m = k4();
        assert_eq!(m.n_faces(), 4);
        assert!(m.face_degrees().iter().all(|&(_, d)| d == 3));
        assert!(m.is_simple());
        assert!(m.is_two_connected());
    }

    #[test]
    fn two_connectivity_cases() {
        assert!(triangle().is_two_connected());
        assert!(digon().is_two_connected());
        assert!(!bowtie().is_two_connected());
        assert!(!single_loop().is_two_connected());
    }

    #[test]
    fn validate_errors() {
        let t = triangle();
        let alpha: Vec<usize> = (0..6).map(|d| d ^ 1).collect();
        let (m, _) = CombMap::validate(&alpha, t.sigma_slice(), 0).unwrap();
        assert_eq!(m, t);
        let mut bad = alpha.clone();
        bad[2] = 2;
        assert_eq!(CombMap::validate(&bad, t.sigma_slice(), 0).unwrap_err(), Error::NotInvolution(2));
        let mut s = t.sigma_slice().to_vec();
        s[0] = s[1];
        assert!(matches!(
            CombMap::validate(&alpha, &s, 0),
            Err(Error::NotPermutation { .. })
        ));
        // two disjoint loops
        assert_eq!(CombMap::from_sigma(vec![1, 0, 3, 2], 0).unwrap_err(), Error::Disconnected);
        // one vertex, two interleaved loops: a torus
        assert_eq!(
            CombMap::from_sigma(vec![2, 3, 1, 0], 0).unwrap_err(),
            Error::PositiveGenus(1)
        );
    }

    #[test]
    fn general_involution_is_normalized() {
        // the digon with darts paired (0,2) and (1,3)
        let alpha = [2, 3, 0, 1];
        // vertex A: darts 0, 1 ; vertex B: darts 2, 3
        let sigma = [1, 0, 3, 2];
        let (m, relabel) = CombMap::validate(&alpha, &sigma, 0).unwrap();
        assert_eq!(relabel, vec![0, 2, 1, 3]);
        assert_eq!((m.n_vertices(), m.n_edges(), m.n_faces()), (2, 2, 2));
    }

    #[test]
    fn canonical_codes() {
        let t = triangle();
        // relabel darts consistently: swap edges 0 and 2, keeping parity
        let perm = [4, 5, 2, 3, 0, 1];
        let mut sigma = vec![0; 6];
        for d in 0..6 {
            sigma[perm[d]] = perm[t.sigma(d)];
        }
        let r = CombMap::from_sigma(sigma, perm[0]).unwrap();
        assert_eq!(t.canonical_code(), r.canonical_code());
        // every rooting of a triangle is equivalent, but not of the bowtie
        assert_eq!(t.canonical_code(), t.with_root(3).canonical_code());
        let b = bowtie();
        assert_ne!(b.canonical_code(), b.with_root(2).canonical_code());
        assert_ne!(t.canonical_code(), digon().canonical_code());
        assert_eq!(t.unrooted_code(), t.with_root(3).unrooted_code());
    }

    #[test]
    fn insert_and_delete_roundtrip() {
        let t = triangle();
        // chord inside the internal face would create a digon: corners at S and N
        let internal = t.face_right(0);
        let corners: Vec<Dart> = (0..6).filter(|&d| t.face_left(d) == internal).collect();
        let x = corners.iter().copied().find(|&d| t.origin(d) == t.origin(0)).unwrap();
        let y = corners.iter().copied().find(|&d| t.origin(d) == t.target(0)).unwrap();
        let m = t.insert_edge(x, y, 0).unwrap();
        assert_eq!(m.n_faces(), 3);
        let (back, _) = m.delete_edges(&[3]).unwrap();
        assert_eq!(back, t);
    }
}

//! Exhaustive generation of small rooted maps and of the bipolar classes.
//!
//! Unrooted 2-connected maps with `E` edges are obtained from those with
//! `E - 1` edges by inserting an edge inside a face or by splitting a vertex;
//! every 2-connected map arises this way since each edge can be deleted or
//! contracted while staying 2-connected. Duplicates are removed with the
//! minimum code over all rootings, then every distinct rooting is emitted.

use std::collections::{BTreeMap, HashSet};

use crate::bipolar::{all_orientations, params_of, BipolarMap};
use crate::error::{Error, Result};
use crate::map::{CanonicalCode, CombMap, Dart, Edge, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Class {
    /// Bipolar oriented quasi-triangulations.
    T,
    /// All bipolar oriented maps.
    B,
    /// Bipolar oriented maps whose internal faces all have right length 2.
    S,
}

impl std::str::FromStr for Class {
    type Err = Error;
    fn from_str(s: &str) -> Result<Class> {
        match s {
            "T" | "t" => Ok(Class::T),
            "B" | "b" => Ok(Class::B),
            "S" | "s" => Ok(Class::S),
            _ => Err(Error::Parse(format!("unknown class {s:?}"))),
        }
    }
}

/// Parameters of a class: internal vertices `k`, internal faces `l`
/// (`B` only; forced by Euler's formula for `T` and `S`) and external
/// degree `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClassFilter {
    pub class: Class,
    pub k: usize,
    pub l: Option<usize>,
    pub j: usize,
}

impl ClassFilter {
    pub fn t(k: usize, j: usize) -> Self {
        ClassFilter { class: Class::T, k, l: None, j }
    }
    pub fn b(k: usize, l: usize, j: usize) -> Self {
        ClassFilter { class: Class::B, k, l: Some(l), j }
    }
    pub fn s(k: usize, j: usize) -> Self {
        ClassFilter { class: Class::S, k, l: None, j }
    }

    /// Number of internal faces.
    pub fn faces(&self) -> Result<usize> {
        let bad = |m: &str| Err(Error::InconsistentParameters(m.to_string()));
        match self.class {
            Class::T => {
                if self.j < 2 {
                    return bad("T needs j >= 2");
                }
                let l = 2 * self.k + self.j - 2;
                match self.l {
                    Some(x) if x != l => bad("T forces l = 2k + j - 2"),
                    _ => Ok(l),
                }
            }
            Class::B => match self.l {
                None => bad("B needs l"),
                Some(_) if self.j < 2 => bad("B needs j >= 2"),
                Some(0) => bad("B needs l >= 1"),
                Some(l) => Ok(l),
            },
            Class::S => {
                if self.j < 3 {
                    return bad("S needs j >= 3");
                }
                let l = self.k + self.j - 2;
                match self.l {
                    Some(x) if x != l => bad("S forces l = k + j - 2"),
                    _ => Ok(l),
                }
            }
        }
    }

    /// Edge count `k + l + j - 1`.
    pub fn edges(&self) -> Result<usize> {
        Ok(self.k + self.faces()? + self.j - 1)
    }

    pub fn contains(&self, x: &BipolarMap) -> bool {
        let Ok(l) = self.faces() else { return false };
        x.params() == (self.k, l, self.j) && in_class(self.class, x)
    }
}

/// Class membership ignoring the parameters.
pub fn in_class(class: Class, x: &BipolarMap) -> bool {
    match class {
        Class::B => true,
        Class::T => is_quasi_triangulation(x.map()),
        Class::S => {
            let ext = x.map().external_face();
            x.map().external_degree() >= 3
                && (0..x.map().n_faces())
                    .filter(|&f| f != ext)
                    .all(|f| x.face_lengths(f).1 == 2)
        }
    }
}

/// All internal faces have degree 3 and the external contour is simple.
pub fn is_quasi_triangulation(m: &CombMap) -> bool {
    let ext = m.external_face();
    let contour = m.face_darts(ext);
    let distinct: HashSet<Vertex> = contour.iter().map(|&d| m.origin(d)).collect();
    distinct.len() == contour.len()
        && m.face_degrees()
            .iter()
            .all(|&(f, deg)| f == ext || deg == 3)
}

/// One representative of each unrooted class, keyed by its code.
fn dedupe(maps: impl IntoIterator<Item = CombMap>) -> Vec<CombMap> {
    let mut by_code = BTreeMap::new();
    for m in maps {
        by_code.entry(m.unrooted_code()).or_insert(m);
    }
    by_code.into_values().collect()
}

/// All distinct rootings of `m`, ordered by code.
pub fn rootings(m: &CombMap) -> Vec<CombMap> {
    let mut by_code: BTreeMap<CanonicalCode, Dart> = BTreeMap::new();
    for r in 0..m.n_darts() {
        by_code.entry(m.with_root(r).canonical_code()).or_insert(r);
    }
    by_code.into_values().map(|r| m.with_root(r)).collect()
}

/// Maps obtained by adding one edge between two corners of a common face.
/// With `loops`, corners at the same vertex are allowed too.
fn chord_extensions(m: &CombMap, loops: bool) -> Vec<CombMap> {
    let mut out = Vec::new();
    for x in 0..m.n_darts() {
        for y in x..m.n_darts() {
            if m.face_left(x) != m.face_left(y) || (!loops && m.origin(x) == m.origin(y)) {
                continue;
            }
            if let Ok(n) = m.insert_edge(x, y, 0) {
                out.push(n);
            }
        }
    }
    out
}

fn split_extensions(m: &CombMap) -> Vec<CombMap> {
    let mut out = Vec::new();
    for v in 0..m.n_vertices() {
        let rot = m.rotation(v);
        for &first in &rot {
            for len in 1..rot.len() {
                if let Ok(n) = m.split_vertex(first, len, 0) {
                    out.push(n);
                }
            }
        }
    }
    out
}

fn pendant_extensions(m: &CombMap) -> Vec<CombMap> {
    (0..m.n_darts())
        .filter_map(|x| m.insert_pendant(x, 0).ok())
        .collect()
}

/// A single edge between two vertices.
pub fn bridge() -> CombMap {
    CombMap::from_sigma(vec![0, 1], 0).expect("valid")
}

/// Memoizing generator for rooted maps, bipolar maps and class sets.
pub struct Enumerator {
    e_max: usize,
    nonsep: Vec<Vec<CombMap>>,
    general: Vec<Vec<CombMap>>,
    bipolar: BTreeMap<usize, Vec<BipolarMap>>,
}

impl Enumerator {
    pub fn new(e_max: usize) -> Self {
        Enumerator {
            e_max,
            nonsep: Vec::new(),
            general: Vec::new(),
            bipolar: BTreeMap::new(),
        }
    }

    pub fn e_max(&self) -> usize {
        self.e_max
    }

    fn check_bound(&self, e: usize) -> Result<()> {
        if e > self.e_max {
            Err(Error::BoundExceeded { got: e, max: self.e_max })
        } else {
            Ok(())
        }
    }

    /// Unrooted 2-connected maps with `e` edges, one per class.
    pub fn unrooted_two_connected(&mut self, e: usize) -> Result<&[CombMap]> {
        self.check_bound(e)?;
        if e == 0 {
            return Ok(&[]);
        }
        while self.nonsep.len() < e {
            let next = match self.nonsep.last() {
                None => vec![bridge()],
                Some(prev) => dedupe(prev.iter().flat_map(|m| {
                    let mut ext = chord_extensions(m, false);
                    ext.extend(split_extensions(m));
                    ext.into_iter().filter(|n| n.is_two_connected())
                })),
            };
            self.nonsep.push(next);
        }
        Ok(&self.nonsep[e - 1])
    }

    /// Unrooted connected planar maps with `e` edges, one per class.
    pub fn unrooted_maps(&mut self, e: usize) -> Result<&[CombMap]> {
        self.check_bound(e)?;
        if e == 0 {
            return Ok(&[]);
        }
        while self.general.len() < e {
            let next = match self.general.last() {
                None => vec![bridge(), CombMap::from_sigma(vec![1, 0], 0).expect("loop")],
                Some(prev) => dedupe(prev.iter().flat_map(|m| {
                    let mut ext = chord_extensions(m, true);
                    ext.extend(pendant_extensions(m));
                    ext
                })),
            };
            self.general.push(next);
        }
        Ok(&self.general[e - 1])
    }

    /// Every rooted planar map with `e` edges exactly once.
    pub fn rooted_maps(&mut self, e: usize, two_connected: bool) -> Result<Vec<CombMap>> {
        let reps = if two_connected {
            self.unrooted_two_connected(e)?
        } else {
            self.unrooted_maps(e)?
        };
        Ok(reps.iter().flat_map(rootings).collect())
    }

    /// Every bipolar oriented map with `e` edges.
    pub fn bipolar_maps(&mut self, e: usize) -> Result<&[BipolarMap]> {
        if !self.bipolar.contains_key(&e) {
            let maps = self.rooted_maps(e, true)?;
            let all = maps.iter().flat_map(all_orientations).collect();
            self.bipolar.insert(e, all);
        }
        Ok(&self.bipolar[&e])
    }

    /// The class set selected by `f`.
    pub fn class(&mut self, f: ClassFilter) -> Result<Vec<BipolarMap>> {
        let e = f.edges()?;
        Ok(self
            .bipolar_maps(e)?
            .iter()
            .filter(|x| f.contains(x))
            .cloned()
            .collect())
    }

    /// Pairs (map, internal vertex) over the class.
    pub fn marked_vertices(&mut self, f: ClassFilter) -> Result<Vec<(BipolarMap, Vertex)>> {
        Ok(self
            .class(f)?
            .into_iter()
            .flat_map(|x| {
                let ext = x.map().external_vertices();
                (0..x.map().n_vertices())
                    .filter(|&v| !ext[v])
                    .map(|v| (x.clone(), v))
                    .collect::<Vec<_>>()
            })
            .collect())
    }

    /// Pairs (map, edge) over the class whose edge is boundary-reaching and,
    /// except for class `T`, right-internal.
    pub fn marked_br_edges(&mut self, f: ClassFilter) -> Result<Vec<(BipolarMap, Edge)>> {
        let need_right_internal = f.class != Class::T;
        Ok(self
            .class(f)?
            .into_iter()
            .flat_map(|x| {
                (0..x.map().n_edges())
                    .filter(|&e| {
                        x.is_boundary_reaching(e) && (!need_right_internal || x.is_right_internal(e))
                    })
                    .map(|e| (x.clone(), e))
                    .collect::<Vec<_>>()
            })
            .collect())
    }
}

/// Class parameters of a bipolar map; `None` when it is in no set of the
/// class (e.g. `S` with `j < 3`).
pub fn class_filter_of(class: Class, x: &BipolarMap) -> Option<ClassFilter> {
    if !in_class(class, x) {
        return None;
    }
    let (k, l, j) = params_of(x.map());
    let f = ClassFilter { class, k, l: Some(l), j };
    f.faces().ok().filter(|&lf| lf == l)?;
    Some(match class {
        Class::B => f,
        _ => ClassFilter { l: None, ..f },
    })
}

/// Independent oracle: every rotation system on `2e` darts with root 0,
/// filtered for connectivity and genus 0, deduplicated by rooted code.
pub fn brute_force_rooted_count(e: usize, two_connected: bool) -> usize {
    let n = 2 * e;
    let mut codes = HashSet::new();
    let mut perm: Vec<usize> = (0..n).collect();
    // Heap's algorithm over all permutations
    let mut c = vec![0usize; n];
    let mut visit = |p: &[usize]| {
        if let Ok(m) = CombMap::from_sigma(p.to_vec(), 0) {
            if !two_connected || m.is_two_connected() {
                codes.insert(m.canonical_code());
            }
        }
    };
    visit(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            visit(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    codes.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rooted_general_counts() {
        let mut en = Enumerator::new(8);
        let counts: Vec<usize> = (1..=4).map(|e| en.rooted_maps(e, false).unwrap().len()).collect();
        assert_eq!(counts, vec![2, 9, 54, 378]);
    }

    #[test]
    fn rooted_two_connected_counts() {
        let mut en = Enumerator::new(8);
        let counts: Vec<usize> = (1..=7).map(|e| en.rooted_maps(e, true).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 22, 91, 408]);
    }

    #[test]
    fn brute_force_agrees_small() {
        let mut en = Enumerator::new(8);
        for e in 1..=3 {
            assert_eq!(brute_force_rooted_count(e, false), en.rooted_maps(e, false).unwrap().len());
            assert_eq!(brute_force_rooted_count(e, true), en.rooted_maps(e, true).unwrap().len());
        }
    }

    #[test]
    fn bipolar_counts_are_baxter() {
        let mut en = Enumerator::new(8);
        let counts: Vec<usize> = (2..=7).map(|e| en.bipolar_maps(e).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 6, 22, 92, 422]);
    }

    #[test]
    fn bound_is_enforced() {
        let mut en = Enumerator::new(3);
        assert_eq!(
            en.rooted_maps(4, true).unwrap_err(),
            Error::BoundExceeded { got: 4, max: 3 }
        );
        assert!(matches!(
            en.class(ClassFilter::s(0, 2)),
            Err(Error::InconsistentParameters(_))
        ));
    }

    #[test]
    fn small_class_sizes() {
        let mut en = Enumerator::new(8);
        assert_eq!(en.class(ClassFilter::t(2, 2)).unwrap().len(), 5);
        assert_eq!(en.class(ClassFilter::t(1, 3)).unwrap().len(), 5);
        assert_eq!(en.class(ClassFilter::b(0, 2, 3)).unwrap().len(), 3);
        assert_eq!(en.class(ClassFilter::s(2, 3)).unwrap().len(), 3);
        assert_eq!(en.class(ClassFilter::s(1, 3)).unwrap().len(), 1);
    }
}

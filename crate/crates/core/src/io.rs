//! JSON interchange and DOT export.
//!
//! A map is `{"n_darts", "alpha", "sigma", "root"}` plus optional `"orient"`
//! (one entry per edge, `1` when the even dart of the edge is its tail, `0`
//! otherwise, `null` for an unoriented edge) and `"colors"` (one entry per
//! edge, `1..=3` for inner edges of a Schnyder wood, `0` for outer edges).
//! Edges are numbered by their smaller dart; that dart is the "even" one.

use serde::{Deserialize, Serialize};

use crate::bipolar::BipolarMap;
use crate::error::{Error, Result};
use crate::map::{alpha, CombMap};
use crate::schnyder::{colors_from_3orientation, PartialOrientation, Quasi3Orientation, SchnyderWood};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub n_darts: usize,
    pub alpha: Vec<usize>,
    pub sigma: Vec<usize>,
    pub root: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orient: Option<Vec<Option<u8>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<Vec<u8>>,
}

impl MapJson {
    pub fn from_map(m: &CombMap) -> Self {
        MapJson {
            n_darts: m.n_darts(),
            alpha: (0..m.n_darts()).map(alpha).collect(),
            sigma: m.sigma_slice().to_vec(),
            root: m.root(),
            orient: None,
            colors: None,
        }
    }

    fn with_orient(m: &CombMap, orient: &[Option<bool>]) -> Self {
        let mut j = Self::from_map(m);
        j.orient = Some(orient.iter().map(|o| o.map(u8::from)).collect());
        j
    }

    pub fn from_bipolar(x: &BipolarMap) -> Self {
        let o: PartialOrientation = x.even_tail().iter().map(|&b| Some(b)).collect();
        Self::with_orient(x.map(), &o)
    }

    pub fn from_quasi3(y: &Quasi3Orientation) -> Self {
        Self::with_orient(y.map(), y.orientation())
    }

    pub fn from_schnyder(w: &SchnyderWood) -> Self {
        let mut j = Self::with_orient(&w.t, &w.orient);
        j.colors = Some(w.color.clone());
        j
    }

    pub fn parse(text: &str) -> Result<Self> {
        let j: MapJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if j.alpha.len() != j.n_darts {
            return Err(Error::BadLength(format!(
                "n_darts = {} but alpha has {} entries",
                j.n_darts,
                j.alpha.len()
            )));
        }
        Ok(j)
    }

    pub fn to_string_compact(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    /// The map, renumbered so that `alpha(d) = d ^ 1`.
    pub fn to_map(&self) -> Result<CombMap> {
        Ok(CombMap::validate(&self.alpha, &self.sigma, self.root)?.0)
    }

    fn orientation(&self, ne: usize) -> Result<Option<PartialOrientation>> {
        let Some(o) = &self.orient else { return Ok(None) };
        if o.len() != ne {
            return Err(Error::OrientationLength { got: o.len(), expected: ne });
        }
        o.iter()
            .map(|b| match b {
                None => Ok(None),
                Some(0) => Ok(Some(false)),
                Some(1) => Ok(Some(true)),
                Some(v) => Err(Error::Parse(format!("orientation bit {v}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    fn oriented(&self) -> Result<(CombMap, PartialOrientation)> {
        let m = self.to_map()?;
        let o = self
            .orientation(m.n_edges())?
            .ok_or_else(|| Error::Parse("missing \"orient\"".into()))?;
        Ok((m, o))
    }

    pub fn to_bipolar(&self) -> Result<BipolarMap> {
        let (m, o) = self.oriented()?;
        let bits = o
            .into_iter()
            .map(|b| b.ok_or_else(|| Error::Parse("bipolar maps orient every edge".into())))
            .collect::<Result<Vec<bool>>>()?;
        BipolarMap::check(m, bits)
    }

    pub fn to_quasi3(&self) -> Result<Quasi3Orientation> {
        let (m, o) = self.oriented()?;
        Quasi3Orientation::check(m, o)
    }

    /// Colors are recomputed from the orientation; given colors must agree.
    pub fn to_schnyder(&self) -> Result<SchnyderWood> {
        let (m, o) = self.oriented()?;
        let w = colors_from_3orientation(m, o)?;
        if let Some(c) = &self.colors {
            if *c != w.color {
                return Err(Error::Parse("colors disagree with the 3-orientation".into()));
            }
        }
        Ok(w)
    }
}

/// Graphviz rendering: directed edges follow the orientation, colors follow
/// the Schnyder colors, and the root edge is bold.
pub fn to_dot(m: &CombMap, orient: Option<&[Option<bool>]>, colors: Option<&[u8]>) -> String {
    const PALETTE: [&str; 4] = ["black", "red", "blue", "darkgreen"];
    let mut s = String::from("digraph map {\n  node [shape=circle];\n");
    for v in 0..m.n_vertices() {
        s.push_str(&format!("  v{v} [label=\"{v}\"];\n"));
    }
    let root_edge = m.root() / 2;
    for e in 0..m.n_edges() {
        let (mut a, mut b) = (m.origin(2 * e), m.origin(2 * e + 1));
        let mut attrs = vec![format!("label=\"{e}\"")];
        match orient.and_then(|o| o[e]) {
            Some(even_tail) => {
                if !even_tail {
                    std::mem::swap(&mut a, &mut b);
                }
            }
            None => attrs.push("dir=none".into()),
        }
        if let Some(c) = colors {
            attrs.push(format!("color={}", PALETTE[c[e] as usize % 4]));
        }
        if e == root_edge {
            attrs.push("penwidth=3".into());
        }
        s.push_str(&format!("  v{a} -> v{b} [{}];\n", attrs.join(", ")));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::fixtures::{k4, triangle};
    use crate::schnyder::all_three_orientations;

    #[test]
    fn bipolar_roundtrip() {
        let x = BipolarMap::check(triangle(), vec![true, true, true]).unwrap();
        let j = MapJson::from_bipolar(&x);
        let back = MapJson::parse(&j.to_string_compact()).unwrap().to_bipolar().unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn arbitrary_alpha_is_renumbered() {
        // a digon with darts 0,1 at one vertex and alpha pairing 0-2, 1-3
        let j = MapJson {
            n_darts: 4,
            alpha: vec![2, 3, 0, 1],
            sigma: vec![1, 0, 3, 2],
            root: 0,
            orient: None,
            colors: None,
        };
        let m = j.to_map().unwrap();
        assert_eq!(m.n_vertices(), 2);
        assert_eq!(m.n_faces(), 2);
    }

    #[test]
    fn schnyder_roundtrip_and_dot() {
        let w = all_three_orientations(&k4()).unwrap().remove(0);
        let j = MapJson::from_schnyder(&w);
        let text = j.to_string_compact();
        assert!(text.contains("null"));
        assert_eq!(MapJson::parse(&text).unwrap().to_schnyder().unwrap(), w);
        let dot = to_dot(&w.t, Some(&w.orient), Some(&w.color));
        assert_eq!(dot.matches("->").count(), 6);
        assert!(dot.contains("dir=none"));
    }

    #[test]
    fn malformed_input() {
        assert!(matches!(MapJson::parse("{"), Err(Error::Parse(_))));
        let mut j = MapJson::from_map(&triangle());
        j.orient = Some(vec![Some(1)]);
        assert!(matches!(j.to_bipolar(), Err(Error::OrientationLength { .. })));
    }
}

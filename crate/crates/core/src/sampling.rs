//! Exact uniform samplers.
//!
//! A map with `k` internal vertices is produced from a uniform map with
//! `k - 1` internal vertices and one more external edge: pick a uniform
//! edge of the eligible kind, and if it is boundary-reaching apply the
//! inverse growth bijection; otherwise start that smaller map over. The
//! base case (no internal vertex) is a polygon dissection drawn through its
//! dual tree.
//!
//! Randomness comes from ChaCha8 seeded with a `u64`; sample `i` of a batch
//! uses stream `i` of that seed.

use std::collections::BTreeMap;

use num_bigint::RandBigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bipolar::{BipolarMap, PathStart};
use crate::counting::{count_b, hook_length_count, YoungShape};
use crate::enumerate::{bridge, Class};
use crate::error::{Error, Result};
use crate::map::Edge;
use crate::slitslidesew::{psi, psi_hat, MarkedEdgeMap};
use crate::trees::{dissection_from_plane_tree, sample_binary_tree, sample_narayana_tree, triangulation_from_binary_tree};

/// Deterministic generator for sample `stream` of a run seeded by `seed`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Attempts and acceptances of the growth steps that produced a map of
/// external degree `j`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StepStats {
    pub attempts: u64,
    pub accepted: u64,
}

#[derive(Clone, Debug)]
pub struct SampleReport {
    pub sample: BipolarMap,
    /// Total rejected attempts.
    pub rejections: u64,
    /// Edges walked along rightmost paths, plus one per attempt.
    pub path_work: u64,
    /// Keyed by the external degree of the map produced by the step.
    pub steps: BTreeMap<usize, StepStats>,
}

struct Run<'a, R: Rng + ?Sized> {
    rng: &'a mut R,
    cap: u64,
    rejections: u64,
    path_work: u64,
    steps: BTreeMap<usize, StepStats>,
}

impl<R: Rng + ?Sized> Run<'_, R> {
    fn base(&mut self, class: Class, l: usize, j: usize) -> Result<BipolarMap> {
        match class {
            Class::T if j == 2 => BipolarMap::check(bridge(), vec![true]),
            Class::T | Class::S => {
                let t = sample_binary_tree(j - 1, self.rng)?;
                triangulation_from_binary_tree(&t)
            }
            Class::B => {
                let t = sample_narayana_tree(l, j - 1, self.rng)?;
                dissection_from_plane_tree(&t.to_plane_by_rotation())
            }
        }
    }

    fn eligible(class: Class, x: &BipolarMap) -> Vec<Edge> {
        let m = x.map();
        let ext = m.external_face();
        (0..m.n_edges())
            .filter(|&e| match class {
                Class::T => true,
                Class::B => m.face_right(2 * e) != ext && m.face_left(2 * e) != ext,
                Class::S => x.is_right_internal(e),
            })
            .collect()
    }

    fn sample(&mut self, class: Class, k: usize, l: usize, j: usize) -> Result<BipolarMap> {
        if k == 0 {
            return self.base(class, l, j);
        }
        let mut rejected_here = 0;
        loop {
            let small = self.sample(class, k - 1, l, j + 1)?;
            let edges = Self::eligible(class, &small);
            if edges.is_empty() {
                return Err(Error::DomainError("no eligible edge to grow from".into()));
            }
            let e = edges[self.rng.gen_range(0..edges.len())];
            let path = small.rightmost_path(PathStart::Edge(e));
            self.path_work += 1 + path.darts.len() as u64;
            let stats = self.steps.entry(j).or_default();
            stats.attempts += 1;
            if path.external_index > 0 {
                stats.accepted += 1;
                let marked = MarkedEdgeMap { x: small, e };
                let grown = match class {
                    Class::T => psi_hat(&marked)?,
                    _ => psi(&marked)?,
                };
                return Ok(grown.x);
            }
            self.rejections += 1;
            rejected_here += 1;
            if rejected_here >= self.cap {
                return Err(Error::RejectionCap(self.cap));
            }
        }
    }
}

fn run<R: Rng + ?Sized>(class: Class, k: usize, l: usize, j: usize, rng: &mut R, cap: u64) -> Result<SampleReport> {
    let mut r = Run {
        rng,
        cap,
        rejections: 0,
        path_work: 0,
        steps: BTreeMap::new(),
    };
    let sample = r.sample(class, k, l, j)?;
    Ok(SampleReport {
        sample,
        rejections: r.rejections,
        path_work: r.path_work,
        steps: r.steps,
    })
}

/// Uniform bipolar oriented quasi-triangulation with parameters `(k, j)`.
pub fn sample_t<R: Rng + ?Sized>(k: usize, j: usize, rng: &mut R, cap: u64) -> Result<SampleReport> {
    if j < 2 {
        return Err(Error::DomainError("sample_T needs j >= 2".into()));
    }
    run(Class::T, k, 0, j, rng, cap)
}

/// Uniform bipolar oriented map with parameters `(k, l, j)`.
pub fn sample_b<R: Rng + ?Sized>(k: usize, l: usize, j: usize, rng: &mut R, cap: u64) -> Result<SampleReport> {
    if j < 2 || l < 1 {
        return Err(Error::DomainError("sample_B needs j >= 2 and l >= 1".into()));
    }
    if count_b(k, l, j)? == num_bigint::BigUint::from(0u32) {
        return Err(Error::DomainError(format!("the class B({k},{l},{j}) is empty")));
    }
    run(Class::B, k, l, j, rng, cap)
}

/// Uniform bipolar map with all internal faces of right length 2.
pub fn sample_s<R: Rng + ?Sized>(k: usize, j: usize, rng: &mut R, cap: u64) -> Result<SampleReport> {
    if j < 3 {
        return Err(Error::DomainError("sample_S needs j >= 3".into()));
    }
    run(Class::S, k, 0, j, rng, cap)
}

/// Acceptance probability of a growth step producing external degree `j`.
pub fn acceptance_probability(class: Class, j: usize) -> f64 {
    let bad = if class == Class::S { 3.0 } else { 2.0 };
    1.0 - bad / (j as f64 + 1.0)
}

/// Uniform standard Young tableau of shape `(a, b, c)`: the largest entry
/// goes to a removable corner chosen with probability proportional to the
/// number of tableaux of the remaining shape. Rows are returned top-down.
pub fn sample_y<R: Rng + ?Sized>(a: usize, b: usize, c: usize, rng: &mut R) -> Result<Vec<Vec<usize>>> {
    if a < b || b < c {
        return Err(Error::DomainError("shape must satisfy a >= b >= c".into()));
    }
    let mut shape = [a, b, c];
    let mut rows = vec![vec![0; a], vec![0; b], vec![0; c]];
    let count = |s: &[usize; 3]| hook_length_count(&YoungShape::new(s.to_vec()).expect("partition"));
    let mut n = a + b + c;
    while n > 0 {
        let total = count(&shape);
        let mut pick = rng.gen_biguint_below(&total);
        let mut chosen = None;
        for r in 0..3 {
            let below = if r < 2 { shape[r + 1] } else { 0 };
            if shape[r] > below {
                let mut s = shape;
                s[r] -= 1;
                let w = count(&s);
                if pick < w {
                    chosen = Some(r);
                    break;
                }
                pick -= w;
            }
        }
        let r = chosen.expect("corner weights sum to the total");
        shape[r] -= 1;
        rows[r][shape[r]] = n;
        n -= 1;
    }
    rows.retain(|row| !row.is_empty());
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{ClassFilter, Enumerator};

    #[test]
    fn deterministic_streams() {
        let a = sample_t(2, 3, &mut rng_for(7, 0), 1000).unwrap();
        let b = sample_t(2, 3, &mut rng_for(7, 0), 1000).unwrap();
        assert_eq!(a.sample, b.sample);
        assert_eq!(a.rejections, b.rejections);
    }

    #[test]
    fn samples_land_in_class() {
        let mut rng = rng_for(1, 0);
        for _ in 0..20 {
            let x = sample_t(2, 3, &mut rng, 1000).unwrap().sample;
            assert!(ClassFilter::t(2, 3).contains(&x));
            let x = sample_b(2, 3, 3, &mut rng, 1000).unwrap().sample;
            assert!(ClassFilter::b(2, 3, 3).contains(&x));
            let x = sample_s(2, 4, &mut rng, 1000).unwrap().sample;
            assert!(ClassFilter::s(2, 4).contains(&x));
        }
    }

    #[test]
    fn support_is_covered() {
        let mut en = Enumerator::new(8);
        let want: std::collections::HashSet<_> = en
            .class(ClassFilter::t(1, 3))
            .unwrap()
            .iter()
            .map(|x| x.canonical_code())
            .collect();
        let mut rng = rng_for(3, 0);
        let got: std::collections::HashSet<_> = (0..400)
            .map(|_| sample_t(1, 3, &mut rng, 1000).unwrap().sample.canonical_code())
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn empty_b_class_is_rejected() {
        assert!(matches!(
            sample_b(1, 1, 3, &mut rng_for(0, 0), 10),
            Err(Error::DomainError(_))
        ));
    }

    #[test]
    fn tableau_sampler() {
        let mut rng = rng_for(0, 0);
        assert_eq!(sample_y(4, 0, 0, &mut rng).unwrap(), vec![vec![1, 2, 3, 4]]);
        for _ in 0..50 {
            let t = sample_y(3, 2, 2, &mut rng).unwrap();
            // rows and columns increase
            for row in &t {
                assert!(row.windows(2).all(|w| w[0] < w[1]));
            }
            for r in 1..t.len() {
                for c in 0..t[r].len() {
                    assert!(t[r - 1][c] < t[r][c]);
                }
            }
        }
    }
}

//! The acceptance suite as library functions, shared by the `verify-all`
//! command and the `acceptance` test target.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_rational::Ratio;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::bipolar::BipolarMap;
use crate::counting::{
    count_b, count_s, count_t, hook_content_count, hook_length_count, identity_check, identity_grid,
    shapes_up_to, syt_bruteforce, Identity, YoungShape,
};
use crate::enumerate::{class_filter_of, in_class, Class, ClassFilter, Enumerator};
use crate::error::Result;
use crate::io::MapJson;
use crate::map::{alpha, CanonicalCode};
use crate::rerooting::{orbit, partition_into_orbits};
use crate::sampling::{acceptance_probability, rng_for, sample_b, sample_s, sample_t, SampleReport};
use crate::schnyder::{
    face_edge_correspondence, orbit_q3, partition_into_q3_orbits, right_region, simple_quasi_triangulations,
};
use crate::slitslidesew::{check_ledger, phi, phi_hat, psi, psi_hat, MarkedEdgeMap, MarkedVertexMap};

pub const ORBIT12_J4: &str = include_str!("../fixtures/orbit12_j4.json");
pub const QUASI_ORBIT15_J5: &str = include_str!("../fixtures/quasi_orbit15_j5.json");

#[derive(Clone, Debug)]
pub struct Options {
    /// Edge bound for criteria 1, 2, 3 and 6.
    pub e_max: usize,
    /// Edge bound for the orbit checks.
    pub orbit_e_max: usize,
    /// Grid bound for the integer identities.
    pub grid: usize,
    /// Samples per class for the uniformity test.
    pub samples: usize,
    /// Trials per class for the rejection statistics.
    pub trials: usize,
    pub seed: u64,
    pub rejection_cap: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            e_max: 8,
            orbit_e_max: 7,
            grid: 20,
            samples: 50_000,
            trials: 10_000,
            seed: 2024,
            rejection_cap: 1_000_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Report {
    fn new(id: u8, name: &'static str, failures: &[String], summary: String) -> Self {
        let passed = failures.is_empty();
        let detail = if passed {
            summary
        } else {
            let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
            format!("{} failure(s): {}", failures.len(), shown.join("; "))
        };
        Report { id, name, passed, detail }
    }

    fn from_result(id: u8, name: &'static str, r: Result<Report>) -> Self {
        r.unwrap_or_else(|e| Report { id, name, passed: false, detail: format!("error: {e}") })
    }

    pub fn line(&self) -> String {
        format!(
            "criterion {} [{}] {}: {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

/// Every class tuple whose maps have exactly `e` edges.
pub fn tuples_with_edges(e: usize) -> Vec<ClassFilter> {
    let mut out = Vec::new();
    for j in 2..=e + 1 {
        for k in 0..=e {
            if 3 * k + 2 * j == e + 3 {
                out.push(ClassFilter::t(k, j));
            }
            if j >= 3 && 2 * k + 2 * j == e + 3 {
                out.push(ClassFilter::s(k, j));
            }
            if k + j <= e {
                let l = e + 1 - k - j;
                out.push(ClassFilter::b(k, l, j));
            }
        }
    }
    out
}

fn formula(f: &ClassFilter) -> Result<num_bigint::BigUint> {
    match f.class {
        Class::T => count_t(f.k, f.j),
        Class::B => count_b(f.k, f.l.expect("B has l"), f.j),
        Class::S => count_s(f.k, f.j),
    }
}

/// Criterion 1: enumeration cardinalities equal the closed formulas.
pub fn formula_agreement(en: &mut Enumerator, opts: &Options) -> Report {
    Report::from_result(1, "formula-enumeration agreement", (|| {
        let mut failures = Vec::new();
        let mut checked = 0;
        let mut maps = 0;
        for e in 1..=opts.e_max {
            let mut found: HashMap<ClassFilter, usize> = HashMap::new();
            for x in en.bipolar_maps(e)? {
                maps += 1;
                for class in [Class::T, Class::B, Class::S] {
                    if let Some(f) = class_filter_of(class, x) {
                        *found.entry(f).or_default() += 1;
                    }
                }
            }
            let tuples = tuples_with_edges(e);
            for f in found.keys() {
                if !tuples.contains(f) {
                    failures.push(format!("{f:?} found outside the tuple grid"));
                }
            }
            for f in tuples {
                checked += 1;
                let want = formula(&f)?;
                let got = found.get(&f).copied().unwrap_or(0);
                if want != got.into() {
                    failures.push(format!("{f:?}: enumerated {got}, formula {want}"));
                }
            }
        }
        Ok(Report::new(1, "formula-enumeration agreement", &failures, format!(
            "{checked} tuples, {maps} bipolar maps with E <= {}",
            opts.e_max
        )))
    })())
}

fn internal_vertices(x: &BipolarMap) -> Vec<usize> {
    let ext = x.map().external_vertices();
    (0..x.map().n_vertices()).filter(|&v| !ext[v]).collect()
}

/// Criterion 2: both compositions are the identity, hatted variants
/// included, and the parameter ledger holds for every application.
pub fn bijection_roundtrips(en: &mut Enumerator, opts: &Options) -> Report {
    Report::from_result(2, "bijection roundtrips", (|| {
        let mut failures = Vec::new();
        let mut pairs = 0;
        for e in 1..=opts.e_max {
            for x in en.bipolar_maps(e)? {
                let quasi = in_class(Class::T, x);
                for v in internal_vertices(x) {
                    pairs += 1;
                    let a = MarkedVertexMap { x: x.clone(), v };
                    let b = phi(&a)?;
                    if let Err(msg) = check_ledger(&a, &b) {
                        failures.push(format!("ledger: {msg}"));
                    }
                    if psi(&b)? != a {
                        failures.push("psi(phi(x)) != x".into());
                    }
                    if quasi {
                        let b = phi_hat(&a)?;
                        if !in_class(Class::T, &b.x) || psi_hat(&b)?.code() != a.code() {
                            failures.push("psi_hat(phi_hat(x)) != x".into());
                        }
                    }
                }
                for ed in 0..e {
                    if !x.is_boundary_reaching(ed) {
                        continue;
                    }
                    let b = MarkedEdgeMap { x: x.clone(), e: ed };
                    if x.is_right_internal(ed) {
                        pairs += 1;
                        if phi(&psi(&b)?)? != b {
                            failures.push("phi(psi(x)) != x".into());
                        }
                    }
                    if quasi {
                        pairs += 1;
                        if phi_hat(&psi_hat(&b)?)?.code() != b.code() {
                            failures.push("phi_hat(psi_hat(x)) != x".into());
                        }
                    }
                }
            }
        }
        Ok(Report::new(2, "bijection roundtrips", &failures, format!(
            "{pairs} marked pairs with E <= {}",
            opts.e_max
        )))
    })())
}

/// Criterion 3: the growth bijections map each marked set onto its target
/// set, and the integer identities hold on the grid.
pub fn growth_identities(en: &mut Enumerator, opts: &Options) -> Report {
    Report::from_result(3, "growth identities", (|| {
        let mut failures = Vec::new();
        let mut sets = 0;
        for e in 1..=opts.e_max {
            for f in tuples_with_edges(e) {
                if f.k == 0 {
                    continue;
                }
                let smaller = ClassFilter { k: f.k - 1, j: f.j + 1, ..f };
                let smaller = match f.class {
                    Class::B => smaller,
                    _ => ClassFilter { l: None, ..smaller },
                };
                let mut images: Vec<CanonicalCode> = Vec::new();
                for (x, v) in en.marked_vertices(f)? {
                    let a = MarkedVertexMap { x, v };
                    let b = if f.class == Class::T { phi_hat(&a)? } else { phi(&a)? };
                    images.push(b.code());
                }
                let mut targets: Vec<CanonicalCode> = en
                    .marked_br_edges(smaller)?
                    .into_iter()
                    .map(|(x, e)| MarkedEdgeMap { x, e }.code())
                    .collect();
                images.sort();
                targets.sort();
                sets += 1;
                if images != targets {
                    failures.push(format!(
                        "{f:?}: {} marked vertices, {} marked edges",
                        images.len(),
                        targets.len()
                    ));
                }
            }
        }
        let mut points = 0;
        for which in [Identity::T, Identity::B, Identity::S] {
            for p in identity_grid(which, opts.grid) {
                points += 1;
                if !identity_check(which, &p)? {
                    failures.push(format!("{which:?} fails at {p:?}"));
                }
            }
        }
        Ok(Report::new(3, "growth identities", &failures, format!(
            "{sets} marked-set bijections, {points} grid points up to {}",
            opts.grid
        )))
    })())
}

/// Criterion 4: orbit lengths and multiplicities for bipolar orientations
/// and quasi-3-orientations.
pub fn orbit_proportions(en: &mut Enumerator, opts: &Options) -> Report {
    Report::from_result(4, "orbit proportions", (|| {
        let mut failures = Vec::new();
        let (mut orbits, mut q_orbits) = (0, 0);
        for e in 1..=opts.orbit_e_max {
            for m in en.unrooted_two_connected(e)?.to_vec() {
                for face in 0..m.n_faces() {
                    let m = m.with_root(alpha(m.face_dart(face)));
                    let j = m.external_degree();
                    if j < 3 {
                        continue;
                    }
                    for o in partition_into_orbits(&m)? {
                        orbits += 1;
                        if o.len() % j != 0 {
                            failures.push(format!("orbit length {} with j = {j}", o.len()));
                        }
                        for mult in o.multiplicities() {
                            if Ratio::new(mult, o.len()) != Ratio::new(2, j) {
                                failures.push(format!("edge multiplicity {mult} in orbit {}", o.len()));
                            }
                        }
                    }
                    if simple_quasi_triangulations(std::slice::from_ref(&m)).is_empty() {
                        continue;
                    }
                    let ext = m.external_face();
                    for o in partition_into_q3_orbits(&m)? {
                        q_orbits += 1;
                        if o.len() % j != 0 {
                            failures.push(format!("quasi orbit length {} with j = {j}", o.len()));
                        }
                        for (f, mult) in o.face_multiplicities()?.into_iter().enumerate() {
                            if f != ext && Ratio::new(mult, o.len()) != Ratio::new(3, j) {
                                failures.push(format!("face multiplicity {mult} in quasi orbit {}", o.len()));
                            }
                        }
                    }
                }
            }
        }
        Ok(Report::new(4, "orbit proportions", &failures, format!(
            "{orbits} bipolar orbits, {q_orbits} quasi-3-orientation orbits, E <= {}",
            opts.orbit_e_max
        )))
    })())
}

/// Criterion 5: the frozen orbit fixtures.
pub fn orbit_fixtures() -> Report {
    Report::from_result(5, "orbit fixtures", (|| {
        let mut failures = Vec::new();
        let x = MapJson::parse(ORBIT12_J4)?.to_bipolar()?;
        let o = orbit(&x)?;
        let mults = o.multiplicities();
        if o.len() != 12 || mults.iter().any(|&m| m != 6) {
            failures.push(format!("bipolar orbit length {}, multiplicities {mults:?}", o.len()));
        }
        let y = MapJson::parse(QUASI_ORBIT15_J5)?.to_quasi3()?;
        let o = orbit_q3(&y)?;
        let ext = y.map().external_face();
        let faces: Vec<usize> = o
            .face_multiplicities()?
            .into_iter()
            .enumerate()
            .filter(|&(f, _)| f != ext)
            .map(|(_, m)| m)
            .collect();
        if o.len() != 15 || faces.iter().any(|&m| m != 9) {
            failures.push(format!("quasi orbit length {}, face multiplicities {faces:?}", o.len()));
        }
        Ok(Report::new(5, "orbit fixtures", &failures,
            "j=4 orbit of length 12 with every edge 6 times; j=5 quasi orbit of length 15 with every face 9 times".into()))
    })())
}

/// Criterion 6: boundary-reaching proportions as exact rationals, per tuple.
/// The right-length-2 class is checked twice: on its right-internal edges
/// and on the left regions of the matching quasi-3-orientations.
pub fn boundary_reaching_ratios(en: &mut Enumerator, opts: &Options) -> Report {
    Report::from_result(6, "boundary-reaching ratios", (|| {
        let mut failures = Vec::new();
        let mut tuples = 0;
        for e in 1..=opts.e_max {
            for f in tuples_with_edges(e) {
                let (mut br, mut all) = (0usize, 0usize);
                for x in en.class(f)? {
                    let ext = x.map().external_face();
                    for ed in 0..e {
                        let counted = match f.class {
                            Class::T => true,
                            Class::B => x.map().face_left(2 * ed) != ext && x.map().face_right(2 * ed) != ext,
                            Class::S => x.is_right_internal(ed),
                        };
                        if counted {
                            all += 1;
                            br += x.is_boundary_reaching(ed) as usize;
                        }
                    }
                }
                if all == 0 {
                    continue;
                }
                tuples += 1;
                let bad = if f.class == Class::S { 3 } else { 2 };
                let want = Ratio::new(f.j - bad, f.j);
                if Ratio::new(br, all) != want {
                    failures.push(format!("{f:?}: {br}/{all}, expected {want}"));
                }
            }
        }
        // second route for the right-length-2 class
        let mut by_tuple: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
        for e in 3..=opts.e_max {
            for q in simple_quasi_triangulations(&en.rooted_maps(e, true)?) {
                let (k, _, j) = crate::bipolar::params_of(&q);
                if j < 3 {
                    continue;
                }
                for y in crate::schnyder::all_quasi3(&q)? {
                    let right = right_region(&y)?;
                    let ext = q.external_face();
                    let slot = by_tuple.entry((k, j)).or_default();
                    for (face, inside) in right.into_iter().enumerate() {
                        if face != ext {
                            slot.1 += 1;
                            slot.0 += !inside as usize;
                        }
                    }
                    let (_, pairs) = face_edge_correspondence(&y)?;
                    if pairs.len() != q.n_faces() - 1 {
                        failures.push("faces and right-internal edges differ in number".into());
                    }
                }
            }
        }
        for (&(k, j), &(left, all)) in &by_tuple {
            tuples += 1;
            if Ratio::new(left, all) != Ratio::new(j - 3, j) {
                failures.push(format!("quasi-3-orientations ({k},{j}): {left}/{all} faces on the left"));
            }
        }
        Ok(Report::new(6, "boundary-reaching ratios", &failures, format!(
            "{tuples} tuples with exact 1-2/j and 1-3/j, E <= {}",
            opts.e_max
        )))
    })())
}

/// Criterion 7: tableau formulas against the class formulas and brute force.
pub fn tableau_crosschecks() -> Report {
    Report::from_result(7, "tableau cross-checks", (|| {
        let mut failures = Vec::new();
        let mut checks = 0;
        for j in 2..=10 {
            for k in 0..=10 - j {
                let shape = YoungShape::lambda(k, j)?;
                checks += 1;
                if hook_length_count(&shape) != count_t(k, j)? {
                    failures.push(format!("hook length vs T({k},{j})"));
                }
                for l in 1..=8 {
                    checks += 1;
                    if hook_content_count(&shape, l + 1)? != count_b(k, l, j)? {
                        failures.push(format!("hook content vs B({k},{l},{j})"));
                    }
                }
            }
        }
        for shape in shapes_up_to(12) {
            checks += 1;
            if syt_bruteforce(&shape) != hook_length_count(&shape) {
                failures.push(format!("shape {:?}", shape.rows()));
            }
        }
        Ok(Report::new(7, "tableau cross-checks", &failures, format!("{checks} equalities")))
    })())
}

fn draw(f: &ClassFilter, seed: u64, i: u64, cap: u64) -> Result<SampleReport> {
    let rng = &mut rng_for(seed, i);
    match f.class {
        Class::T => sample_t(f.k, f.j, rng, cap),
        Class::B => sample_b(f.k, f.l.expect("B has l"), f.j, rng, cap),
        Class::S => sample_s(f.k, f.j, rng, cap),
    }
}

/// Pearson statistic and upper-tail p-value of counts against the uniform
/// distribution on `cells` outcomes.
pub fn chi_square_uniform(counts: &[u64], cells: usize) -> (f64, f64) {
    let n: u64 = counts.iter().sum();
    let expected = n as f64 / cells as f64;
    let mut stat: f64 = counts.iter().map(|&o| (o as f64 - expected).powi(2) / expected).sum();
    // cells never observed
    stat += (cells - counts.len()) as f64 * expected;
    if cells < 2 {
        return (stat, 1.0);
    }
    let dist = ChiSquared::new((cells - 1) as f64).expect("positive degrees of freedom");
    (stat, 1.0 - dist.cdf(stat))
}

/// Classes used by the uniformity test.
pub fn uniformity_classes() -> Vec<ClassFilter> {
    vec![
        ClassFilter::t(0, 5),
        ClassFilter::t(1, 3),
        ClassFilter::t(2, 2),
        ClassFilter::b(0, 2, 3),
        ClassFilter::s(1, 4),
    ]
}

/// Criterion 8: chi-square goodness of fit against the enumerated support,
/// and reproducibility under a fixed seed.
pub fn sampler_uniformity(opts: &Options) -> Report {
    Report::from_result(8, "sampler uniformity", (|| {
        let classes = uniformity_classes();
        let bound = classes.iter().map(|f| f.edges()).collect::<Result<Vec<_>>>()?;
        let mut en = Enumerator::new(bound.into_iter().max().unwrap_or(1));
        let mut failures = Vec::new();
        let mut parts = Vec::new();
        for (c, f) in classes.into_iter().enumerate() {
            let seed = opts.seed.wrapping_add(c as u64);
            let support: HashSet<CanonicalCode> = en.class(f)?.iter().map(|x| x.canonical_code()).collect();
            let mut counts: HashMap<CanonicalCode, u64> = HashMap::new();
            let mut first = Vec::new();
            for i in 0..opts.samples as u64 {
                let code = draw(&f, seed, i, opts.rejection_cap)?.sample.canonical_code();
                if !support.contains(&code) {
                    failures.push(format!("{f:?}: sample outside the class"));
                    break;
                }
                if i < 100 {
                    first.push(code.clone());
                }
                *counts.entry(code).or_default() += 1;
            }
            for (i, code) in first.iter().enumerate() {
                if draw(&f, seed, i as u64, opts.rejection_cap)?.sample.canonical_code() != *code {
                    failures.push(format!("{f:?}: seed {seed} stream {i} not reproducible"));
                    break;
                }
            }
            let counts: Vec<u64> = counts.into_values().collect();
            let (stat, p) = chi_square_uniform(&counts, support.len());
            if p < 1e-3 {
                failures.push(format!("{f:?}: chi2 = {stat:.2} on {} cells, p = {p:.2e}", support.len()));
            }
            parts.push(format!("{:?}({},{}) p={p:.3}", f.class, f.k, f.j));
        }
        Ok(Report::new(8, "sampler uniformity", &failures, format!(
            "{} samples per class; {}",
            opts.samples,
            parts.join(", ")
        )))
    })())
}

/// Classes used by the rejection statistics.
pub fn rejection_classes() -> Vec<ClassFilter> {
    vec![ClassFilter::t(3, 3), ClassFilter::b(2, 3, 3), ClassFilter::s(2, 4)]
}

/// Criterion 9: mean rejections per growth step against `(1 - p) / p`
/// within three standard errors, per class and per external degree.
pub fn rejection_statistics(opts: &Options) -> Report {
    Report::from_result(9, "rejection statistics", (|| {
        let mut failures = Vec::new();
        let mut parts = Vec::new();
        for (c, f) in rejection_classes().into_iter().enumerate() {
            let seed = opts.seed.wrapping_add(100 + c as u64);
            let mut steps: BTreeMap<usize, (u64, u64)> = BTreeMap::new();
            for i in 0..opts.trials as u64 {
                for (j, s) in draw(&f, seed, i, opts.rejection_cap)?.steps {
                    let slot = steps.entry(j).or_default();
                    slot.0 += s.attempts;
                    slot.1 += s.accepted;
                }
            }
            for (j, (attempts, accepted)) in steps {
                let p = acceptance_probability(f.class, j);
                let mean = (attempts - accepted) as f64 / accepted as f64;
                let predicted = (1.0 - p) / p;
                let se = ((1.0 - p) / (p * p) / accepted as f64).sqrt();
                let z = (mean - predicted) / se;
                if z.abs() > 3.0 {
                    failures.push(format!(
                        "{:?} j'={j}: mean {mean:.4}, predicted {predicted:.4}, z = {z:.2}",
                        f.class
                    ));
                }
                parts.push(format!("{:?} j'={j} z={z:+.2}", f.class));
            }
        }
        Ok(Report::new(9, "rejection statistics", &failures, format!(
            "{} trials per class; {}",
            opts.trials,
            parts.join(", ")
        )))
    })())
}

/// Runs criteria 1 to 9 in order.
pub fn verify_all(opts: &Options) -> Vec<Report> {
    let mut en = Enumerator::new(opts.e_max.max(opts.orbit_e_max));
    vec![
        formula_agreement(&mut en, opts),
        bijection_roundtrips(&mut en, opts),
        growth_identities(&mut en, opts),
        orbit_proportions(&mut en, opts),
        orbit_fixtures(),
        boundary_reaching_ratios(&mut en, opts),
        tableau_crosschecks(),
        sampler_uniformity(opts),
        rejection_statistics(opts),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_square_of_perfect_counts() {
        let (stat, p) = chi_square_uniform(&[10, 10, 10], 3);
        assert_eq!(stat, 0.0);
        assert!((p - 1.0).abs() < 1e-12);
        let (stat, _) = chi_square_uniform(&[30], 3);
        assert!((stat - 60.0).abs() < 1e-9);
    }

    #[test]
    fn tuple_grid_is_consistent() {
        for e in 1..=8 {
            for f in tuples_with_edges(e) {
                assert_eq!(f.edges().unwrap(), e, "{f:?}");
            }
        }
    }

    #[test]
    fn small_suite_passes() {
        let opts = Options { e_max: 5, orbit_e_max: 5, grid: 6, samples: 2000, trials: 500, ..Options::default() };
        for r in verify_all(&opts) {
            assert!(r.passed, "{}", r.line());
        }
    }
}

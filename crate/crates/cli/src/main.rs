use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bipolar_lab::config::{OutputFormat, EMAX_ENV};
use bipolar_lab::counting::{BigCount, count_b, count_s, count_t, identity_check, identity_grid, Identity};
use bipolar_lab::enumerate::{Class, ClassFilter, Enumerator};
use bipolar_lab::io::{to_dot, MapJson};
use bipolar_lab::rerooting::orbit;
use bipolar_lab::sampling::{rng_for, sample_b, sample_s, sample_t, SampleReport};
use bipolar_lab::schnyder::{
    bipolar_to_schnyder, orbit_q3, q3_to_schnyder, schnyder_to_bipolar, schnyder_to_q3, SchnyderWood,
};
use bipolar_lab::slitslidesew::{phi, phi_hat, psi, psi_hat, MarkedEdgeMap, MarkedVertexMap};
use bipolar_lab::verify::{self, Options};
use bipolar_lab::{BipolarMap, EdgeKind, Error};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "bipolar-lab", version, about = "Count, enumerate, transform and sample bipolar oriented planar maps")]
struct Cli {
    /// Largest edge count accepted by the exhaustive enumerators.
    #[arg(long, global = true, env = EMAX_ENV, default_value_t = 8,
          value_parser = clap::value_parser!(u64).range(1..))]
    e_max: u64,
    /// Rejections allowed per growth step before a sampler gives up.
    #[arg(long, global = true, default_value_t = 1_000_000,
          value_parser = clap::value_parser!(u64).range(1..))]
    rejection_cap: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Copy)]
struct ClassArgs {
    /// T (quasi-triangulations), B (all), S (right length 2).
    #[arg(long, value_parser = parse_class)]
    class: Class,
    #[arg(long)]
    k: usize,
    /// Internal faces; required for class B.
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    j: usize,
}

impl ClassArgs {
    fn filter(&self) -> ClassFilter {
        ClassFilter { class: self.class, k: self.k, l: self.l, j: self.j }
    }
}

fn parse_class(s: &str) -> Result<Class, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Ndjson,
    Dot,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Ndjson => OutputFormat::Ndjson,
            Format::Dot => OutputFormat::Dot,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Bipolar,
    Schnyder,
    Quasi,
}

#[derive(Subcommand)]
enum Cmd {
    /// Closed-form cardinality of a class.
    Count(ClassArgs),
    /// Every map of a class, by exhaustive enumeration.
    Enumerate {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, value_enum, default_value = "ndjson")]
        out: Format,
        /// Print only the number of maps.
        #[arg(long)]
        count_only: bool,
    },
    /// Per-edge classification of a bipolar map, as ndjson.
    Classify {
        /// JSON map file, or - for stdin.
        #[arg(long)]
        map: PathBuf,
    },
    /// Rerooting orbit of a bipolar map or quasi-3-orientation.
    Orbit {
        #[arg(long)]
        map: PathBuf,
    },
    /// Inverse growth: a map with a marked boundary-reaching edge to one
    /// with a marked internal vertex.
    Grow {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        edge: usize,
        /// Quasi-triangulation variant.
        #[arg(long)]
        hat: bool,
    },
    /// Growth: a map with a marked internal vertex to one with one less
    /// internal vertex and a marked edge.
    Shrink {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        vertex: usize,
        #[arg(long)]
        hat: bool,
    },
    /// Schnyder woods and their correspondences.
    Schnyder {
        #[command(subcommand)]
        cmd: SchnyderCmd,
    },
    /// Exact uniform samples.
    Sample {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        n: u64,
        #[arg(long, value_enum, default_value = "ndjson")]
        out: Format,
    },
    /// Checks a counting identity on a parameter grid.
    VerifyIdentity {
        /// 1 (Catalan), 5 (T), 6 (B), 7 (S) or 8 (Narayana).
        #[arg(long)]
        eq: u32,
        #[arg(long, default_value_t = 10)]
        grid: usize,
    },
    /// Runs the acceptance suite and prints a pass/fail table.
    VerifyAll {
        /// Reduced sizes for a fast smoke run.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Subcommand)]
enum SchnyderCmd {
    /// Converts between bipolar maps, Schnyder woods and quasi-3-orientations.
    Convert {
        #[arg(long)]
        map: PathBuf,
        #[arg(long, value_enum)]
        from: Kind,
        #[arg(long, value_enum)]
        to: Kind,
        /// Write Graphviz instead of JSON.
        #[arg(long)]
        dot: bool,
    },
}

enum Failure {
    Usage(String),
    Invariant(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BoundExceeded { .. }
            | Error::DomainError(_)
            | Error::InconsistentParameters(_)
            | Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => {
                let debug = format!("{e:?}");
                let name = debug.split(['(', ' ', '{']).next().unwrap_or("").to_string();
                Failure::Invariant(format!("{name}: {e}"))
            }
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<(), Failure>;

fn read_map(path: &PathBuf) -> Result<MapJson, Failure> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    }
    Ok(MapJson::parse(&text)?)
}

fn dot_of(x: &BipolarMap) -> String {
    let o: Vec<Option<bool>> = x.even_tail().iter().map(|&b| Some(b)).collect();
    to_dot(x.map(), Some(&o), None)
}

fn write_maps(out: &mut impl Write, format: OutputFormat, items: &[(BipolarMap, Value)]) -> io::Result<()> {
    match format {
        OutputFormat::Ndjson => {
            for (_, v) in items {
                writeln!(out, "{v}")?;
            }
        }
        OutputFormat::Json => {
            let all: Vec<&Value> = items.iter().map(|(_, v)| v).collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&all).expect("json"))?;
        }
        OutputFormat::Dot => {
            for (x, _) in items {
                write!(out, "{}", dot_of(x))?;
            }
        }
    }
    Ok(())
}

fn map_value(x: &BipolarMap) -> Value {
    serde_json::to_value(MapJson::from_bipolar(x)).expect("json")
}

fn count(f: ClassFilter) -> Result<BigCount, Error> {
    f.faces()?;
    Ok(match f.class {
        Class::T => count_t(f.k, f.j)?,
        Class::B => count_b(f.k, f.l.expect("checked by faces"), f.j)?,
        Class::S => count_s(f.k, f.j)?,
    })
}

fn sample(f: ClassFilter, seed: u64, i: u64, cap: u64) -> Result<SampleReport, Error> {
    f.faces()?;
    let rng = &mut rng_for(seed, i);
    match f.class {
        Class::T => sample_t(f.k, f.j, rng, cap),
        Class::B => sample_b(f.k, f.l.expect("checked by faces"), f.j, rng, cap),
        Class::S => sample_s(f.k, f.j, rng, cap),
    }
}

fn to_wood(j: &MapJson, from: Kind) -> Result<SchnyderWood, Error> {
    match from {
        Kind::Bipolar => bipolar_to_schnyder(&j.to_bipolar()?),
        Kind::Quasi => q3_to_schnyder(&j.to_quasi3()?),
        Kind::Schnyder => j.to_schnyder(),
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Outcome {
    let e_max = cli.e_max as usize;
    let cap = cli.rejection_cap;
    match cli.cmd {
        Cmd::Count(c) => writeln!(out, "{}", count(c.filter())?)?,
        Cmd::Enumerate { class, out: format, count_only } => {
            let f = class.filter();
            let mut maps = Enumerator::new(e_max).class(f)?;
            maps.sort_by_cached_key(|x| x.canonical_code());
            if count_only {
                writeln!(out, "{}", maps.len())?;
            } else {
                let items: Vec<_> = maps.into_iter().map(|x| { let v = map_value(&x); (x, v) }).collect();
                write_maps(out, format.into(), &items)?;
            }
        }
        Cmd::Classify { map } => {
            let x = read_map(&map)?.to_bipolar()?;
            for e in 0..x.map().n_edges() {
                let c = x.classify_edge(e);
                let kind = match c.kind {
                    EdgeKind::Root => "root",
                    EdgeKind::RightBoundary => "right-boundary",
                    EdgeKind::Internal => "internal",
                };
                let v = json!({
                    "edge": e,
                    "tail": x.tail(e),
                    "head": x.head(e),
                    "kind": kind,
                    "right_internal": c.right_internal,
                    "boundary_reaching": c.boundary_reaching,
                    "external_index": x.external_index(e),
                });
                writeln!(out, "{v}")?;
            }
        }
        Cmd::Orbit { map } => {
            let j = read_map(&map)?;
            let quasi = j.orient.as_ref().is_some_and(|o| o.iter().any(Option::is_none));
            let (report, ok) = if quasi {
                let y = j.to_quasi3()?;
                let o = orbit_q3(&y)?;
                let deg = y.map().external_degree();
                let ext = y.map().external_face();
                let faces: Vec<(usize, usize)> = o
                    .face_multiplicities()?
                    .into_iter()
                    .enumerate()
                    .filter(|&(f, _)| f != ext)
                    .collect();
                let ok = faces.iter().all(|&(_, m)| m * deg == 3 * o.len());
                let fm: serde_json::Map<String, Value> =
                    faces.iter().map(|&(f, m)| (f.to_string(), json!(m))).collect();
                (json!({
                    "length": o.len(), "j": deg, "face_multiplicities": fm,
                    "ratio": format!("3/{deg}"), "check": ok,
                }), ok)
            } else {
                let x = j.to_bipolar()?;
                let o = orbit(&x)?;
                let deg = x.map().external_degree();
                let mults = o.multiplicities();
                let ok = o.len() % deg == 0 && mults.iter().all(|&m| m * deg == 2 * o.len());
                (json!({
                    "length": o.len(), "j": deg, "multiplicities": mults,
                    "ratio": format!("2/{deg}"), "check": ok,
                }), ok)
            };
            writeln!(out, "{report}")?;
            if !ok {
                return Err(Failure::Invariant("orbit multiplicities differ from the predicted proportion".into()));
            }
        }
        Cmd::Grow { map, edge, hat } => {
            let x = read_map(&map)?.to_bipolar()?;
            if edge >= x.map().n_edges() {
                return Err(Failure::Usage(format!("edge {edge} out of range")));
            }
            let b = MarkedEdgeMap { x, e: edge };
            let a = if hat { psi_hat(&b)? } else { psi(&b)? };
            writeln!(out, "{}", json!({ "map": map_value(&a.x), "vertex": a.v }))?;
        }
        Cmd::Shrink { map, vertex, hat } => {
            let x = read_map(&map)?.to_bipolar()?;
            if vertex >= x.map().n_vertices() {
                return Err(Failure::Usage(format!("vertex {vertex} out of range")));
            }
            let a = MarkedVertexMap { x, v: vertex };
            let b = if hat { phi_hat(&a)? } else { phi(&a)? };
            writeln!(out, "{}", json!({ "map": map_value(&b.x), "edge": b.e }))?;
        }
        Cmd::Schnyder { cmd: SchnyderCmd::Convert { map, from, to, dot } } => {
            let w = to_wood(&read_map(&map)?, from)?;
            let (j, d) = match to {
                Kind::Schnyder => (MapJson::from_schnyder(&w), to_dot(&w.t, Some(&w.orient), Some(&w.color))),
                Kind::Bipolar => {
                    let x = schnyder_to_bipolar(&w)?.0;
                    (MapJson::from_bipolar(&x), dot_of(&x))
                }
                Kind::Quasi => {
                    let y = schnyder_to_q3(&w)?;
                    (MapJson::from_quasi3(&y), to_dot(y.map(), Some(y.orientation()), None))
                }
            };
            if dot {
                write!(out, "{d}")?;
            } else {
                writeln!(out, "{}", j.to_string_compact())?;
            }
        }
        Cmd::Sample { class, seed, n, out: format } => {
            let f = class.filter();
            let mut items = Vec::new();
            for i in 0..n {
                let r = sample(f, seed, i, cap)?;
                let steps: serde_json::Map<String, Value> = r
                    .steps
                    .iter()
                    .map(|(j, s)| (j.to_string(), json!({ "attempts": s.attempts, "accepted": s.accepted })))
                    .collect();
                let v = json!({
                    "index": i,
                    "map": map_value(&r.sample),
                    "rejections": r.rejections,
                    "path_work": r.path_work,
                    "steps": steps,
                });
                items.push((r.sample, v));
            }
            write_maps(out, format.into(), &items)?;
        }
        Cmd::VerifyIdentity { eq, grid } => {
            let which = Identity::from_number(eq)?;
            let points = identity_grid(which, grid);
            for p in &points {
                if !identity_check(which, p)? {
                    writeln!(out, "fail at {p:?}")?;
                    return Err(Failure::Invariant(format!("identity {eq} fails at {p:?}")));
                }
            }
            writeln!(out, "pass ({} points)", points.len())?;
        }
        Cmd::VerifyAll { quick } => {
            let mut opts = if quick {
                Options { e_max: 6, orbit_e_max: 6, grid: 8, samples: 5_000, trials: 1_000, ..Options::default() }
            } else {
                Options::default()
            };
            opts.e_max = opts.e_max.min(e_max);
            opts.orbit_e_max = opts.orbit_e_max.min(e_max);
            opts.rejection_cap = cap;
            let mut failed = 0;
            for r in verify::verify_all(&opts) {
                writeln!(out, "{}", r.line())?;
                out.flush()?;
                failed += !r.passed as usize;
            }
            if failed > 0 {
                return Err(Failure::Invariant(format!("{failed} acceptance criteria failed")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match result.and(flushed.map_err(Failure::Io)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("invariant violated: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("i/o error: {e}");
            ExitCode::from(1)
        }
    }
}

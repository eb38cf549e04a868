use std::io::Write;
use std::process::{Command, Output, Stdio};

fn fixture(name: &str) -> String {
    format!("{}/../core/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    run_env(args, None)
}

fn run_env(args: &[&str], emax: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bipolar-lab"));
    cmd.args(args).env_remove("BIPOLAR_LAB_EMAX");
    if let Some(v) = emax {
        cmd.env("BIPOLAR_LAB_EMAX", v);
    }
    cmd.output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bipolar-lab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(stdout(o).trim()).unwrap()
}

#[test]
fn count_example() {
    let o = run(&["count", "--class", "T", "--k", "2", "--j", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "5");
}

#[test]
fn identity_example() {
    let o = run(&["verify-identity", "--eq", "5", "--grid", "10"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("pass"));
}

#[test]
fn orbit_of_triangle() {
    let o = run(&["orbit", "--map", &fixture("triangle.json")]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["length"], 3);
    assert_eq!(v["multiplicities"], serde_json::json!([2, 2, 2]));
    assert_eq!(v["ratio"], "2/3");
}

#[test]
fn enumerate_matches_count() {
    let o = run(&["enumerate", "--class", "B", "--k", "1", "--l", "3", "--j", "3"]);
    assert!(o.status.success());
    let lines = stdout(&o).lines().count();
    let c = run(&["count", "--class", "B", "--k", "1", "--l", "3", "--j", "3"]);
    assert_eq!(lines.to_string(), stdout(&c).trim());
}

#[test]
fn emax_from_environment() {
    let args = ["enumerate", "--class", "T", "--k", "2", "--j", "3", "--count-only"];
    assert_eq!(run(&args).status.code(), Some(2));
    let o = run_env(&args, Some("9"));
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "42");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--class", "Q", "--k", "1", "--j", "3"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--class", "B", "--k", "1", "--j", "3"]).status.code(), Some(2));
    // the root points into the source
    let bad = r#"{"n_darts":6,"alpha":[1,0,3,2,5,4],"sigma":[2,5,0,4,3,1],"root":0,"orient":[0,1,1]}"#;
    let o = run_stdin(&["classify", "--map", "-"], bad);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("SourceSinkViolation"));
    let o = run_stdin(&["classify", "--map", "-"], "{not json");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sampling_is_reproducible() {
    let args = ["sample", "--class", "T", "--k", "3", "--j", "3", "--seed", "42", "--n", "5"];
    let a = run(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&run(&args)));
    assert_eq!(stdout(&a).lines().count(), 5);
}

#[test]
fn shrink_then_grow() {
    let map = fixture("four_flips.json");
    let classes: Vec<serde_json::Value> = stdout(&run(&["classify", "--map", &map]))
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let inner: Vec<u64> = classes
        .iter()
        .flat_map(|c| [c["tail"].as_u64().unwrap(), c["head"].as_u64().unwrap()])
        .collect();
    let dir = std::env::temp_dir().join(format!("bipolar-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let original = std::fs::read_to_string(&map).unwrap();
    let original: serde_json::Value = serde_json::from_str(&original).unwrap();
    let mut grown_any = false;
    for v in 0..=*inner.iter().max().unwrap() {
        let o = run(&["shrink", "--map", &map, "--vertex", &v.to_string()]);
        if !o.status.success() {
            continue;
        }
        let out = json(&o);
        let path = dir.join("small.json");
        std::fs::write(&path, out["map"].to_string()).unwrap();
        let e = out["edge"].to_string();
        let back = json(&run(&["grow", "--map", path.to_str().unwrap(), "--edge", &e]));
        assert_eq!(back["map"], original);
        assert_eq!(back["vertex"], v);
        grown_any = true;
    }
    assert!(grown_any);
}

#[test]
fn schnyder_convert_roundtrip() {
    let tri = fixture("triangle.json");
    let o = run(&["schnyder", "convert", "--map", &tri, "--from", "bipolar", "--to", "schnyder"]);
    assert!(o.status.success());
    let w = json(&o);
    assert_eq!(w["n_darts"], 12);
    let dir = std::env::temp_dir().join(format!("bipolar-lab-cli-w-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k4.json");
    std::fs::write(&path, w.to_string()).unwrap();
    let p = path.to_str().unwrap();
    let back = json(&run(&["schnyder", "convert", "--map", p, "--from", "schnyder", "--to", "bipolar"]));
    let orbit_in = dir.join("back.json");
    std::fs::write(&orbit_in, back.to_string()).unwrap();
    let o = run(&["orbit", "--map", orbit_in.to_str().unwrap()]);
    assert_eq!(json(&o)["length"], 3);
    let dot = run(&["schnyder", "convert", "--map", p, "--from", "schnyder", "--to", "quasi", "--dot"]);
    assert!(stdout(&dot).starts_with("digraph"));
}

#[test]
fn verify_all_quick() {
    let o = run(&["verify-all", "--quick"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.contains("[PASS]")).count(), 9);
}

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_fibered-links"));
    c.env_remove("FIBERED_LINKS_MAX_ITERS");
    c
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).unwrap()
}

fn gen_twist(dir: &Path, n: u32) -> String {
    let p = dir.join(format!("twist{n}.lift"));
    let out = run(&["gen", "twist", &n.to_string(), "-o", p.to_str().unwrap()]);
    assert!(out.status.success());
    p.to_str().unwrap().to_string()
}

fn floats(v: &Value, out: &mut Vec<f64>) {
    match v {
        Value::Number(n) if n.is_f64() => out.push(n.as_f64().unwrap()),
        Value::Array(a) => a.iter().for_each(|x| floats(x, out)),
        Value::Object(o) => o.values().for_each(|x| floats(x, out)),
        _ => {}
    }
}

#[test]
fn twist_pipeline_counts_eight_tetrahedra_per_crossing() {
    let dir = tempfile::tempdir().unwrap();
    let f = gen_twist(dir.path(), 1);
    let out = run(&["--json", "pipeline", &f, "--family", "1"]);
    assert!(out.status.success());
    let r = json_of(&out);
    let i = r["self_intersection"].as_u64().unwrap();
    assert_eq!(i, 3);
    assert_eq!(r["triangulation"]["tetrahedra"].as_u64().unwrap(), 8 * i);
    assert_eq!(r["sandwich"], "holds");
    assert_eq!(r["solver"]["geometric"], true);
}

#[test]
fn figure_eight_volume() {
    let out = run(&["--json", "solve", fixture("fig8.tri").to_str().unwrap()]);
    assert!(out.status.success());
    let v = json_of(&out)["volume"].as_f64().unwrap();
    assert!((v - 2.0298832128).abs() < 1e-9, "{v}");
}

#[test]
fn non_taut_check_reports_bigon() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("twist1.lift")).unwrap();
    let bad = dir.path().join("bad.lift");
    std::fs::write(&bad, text.replace("1.3-3.1 puncture", "1.3-3.1 disk")).unwrap();
    let out = run(&["--json", "check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["offending_faces"][0]["reason"], "bigon");
    let err = stderr_json(&out);
    assert_eq!(err["error"], "validation");
    assert!(err["message"].as_str().unwrap().contains("bigon"));
}

#[test]
fn capped_solver_exits_two() {
    let out = bin()
        .env("FIBERED_LINKS_MAX_ITERS", "0")
        .args(["solve", fixture("whitehead.tri").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "not-converged");
}

#[test]
fn format_and_io_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.tri");
    std::fs::write(&junk, "tri v2\n").unwrap();
    let out = run(&["solve", junk.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stderr_json(&out)["error"], "format");

    let out = run(&["check", dir.path().join("missing").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stderr_json(&out)["error"], "io");
}

#[test]
fn pipeline_json_is_deterministic_with_fifteen_digits() {
    let dir = tempfile::tempdir().unwrap();
    let f = gen_twist(dir.path(), 2);
    let a = run(&["--json", "pipeline", &f]);
    let b = run(&["--json", "pipeline", &f]);
    assert_eq!(a.stdout, b.stdout);
    let mut xs = Vec::new();
    floats(&json_of(&a), &mut xs);
    assert!(!xs.is_empty());
    for x in xs {
        let r: f64 = format!("{x:.14e}").parse().unwrap();
        assert_eq!(r, x);
    }
}

#[test]
fn parallel_pipeline_keeps_input_order() {
    let dir = tempfile::tempdir().unwrap();
    let files: Vec<String> = (1..=4).map(|n| gen_twist(dir.path(), n)).collect();
    let mut args = vec!["--json", "pipeline", "--jobs", "4"];
    args.extend(files.iter().map(|s| s.as_str()));
    let out = run(&args);
    assert!(out.status.success());
    let reports = json_of(&out);
    let is: Vec<u64> = reports
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["self_intersection"].as_u64().unwrap())
        .collect();
    assert_eq!(is, [3, 5, 7, 9]);
}

#[test]
fn star_triangulate_and_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (gen_twist(dir.path(), 1), gen_twist(dir.path(), 1));
    let s = dir.path().join("star.lift");
    let s = s.to_str().unwrap();
    assert!(run(&["gen", "star", &a, &b, "-o", s]).status.success());
    let out = run(&["--json", "intersect", s]);
    assert_eq!(json_of(&out)["self_intersection"], 6);

    let tri = dir.path().join("star.tri");
    let out = run(&["--json", "triangulate", s, "-o", tri.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["tetrahedra"], 48);
    let out = run(&["--json", "solve", tri.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["geometric"], true);

    let arcs = dir.path().join("a.arcs");
    assert!(run(&["gen", "arcs", &a, "-o", arcs.to_str().unwrap()]).status.success());
    let out = run(&["--json", "bounds", &a, "--arcs", arcs.to_str().unwrap(), "--family", "1"]);
    let r = json_of(&out);
    assert_eq!(r["per_pants_counts"], serde_json::json!([1]));
    assert!(r["family_lower"].as_f64().unwrap() < r["upper"].as_f64().unwrap());
}

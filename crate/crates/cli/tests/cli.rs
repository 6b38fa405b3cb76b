use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn mvgrass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mvgrass"))
        .args(args)
        .env_remove("MVGRASS_PRIME")
        .env_remove("MVGRASS_PREC")
        .output()
        .expect("binary runs")
}

fn json_of(args: &[&str]) -> Value {
    let out = mvgrass(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn vertex(v: &Value, key: &str) -> Vec<i64> {
    v["family"]["vertices"][key]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_i64().unwrap())
        .collect()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn polytope_vertices() {
    let v = json_of(&["polytope", "--word", "121", "--n", "2,1,1"]);
    assert_eq!(v["n212"], serde_json::json!([1, 1, 2]));
    assert_eq!(v["dimension"], 5);
    assert_eq!(vertex(&v, "123"), [2, 0, -1]);
    assert_eq!(v["family"]["vertices"].as_object().unwrap().len(), 6);
}

#[test]
fn trivial_polytope_is_a_point() {
    let v = json_of(&["polytope", "--word", "121", "--n", "0,0,0"]);
    let verts: Vec<&Value> = v["family"]["vertices"]
        .as_object()
        .unwrap()
        .values()
        .collect();
    assert!(verts.iter().all(|x| *x == verts[0]));
}

#[test]
fn crystal_operator_flag() {
    let v = json_of(&["polytope", "--word", "121", "--n", "2,1,0", "--apply", "E2"]);
    assert_eq!(v["n121"], serde_json::json!([1, 1, 0]));
    let z = json_of(&["polytope", "--n", "0,0,0", "--apply", "E1"]);
    assert_eq!(z["zero"], true);
    let c = json_of(&["crystal", "--n", "2,1,1", "--j", "21"]);
    assert_eq!(c["result"]["n121"], serde_json::json!([1, 1, 0]));
    assert_eq!(
        json_of(&["crystal", "--n", "2,1,1", "--j", "121"])["zero"],
        true
    );
}

#[test]
fn braid_round_trip() {
    let v = json_of(&["braid", "--word", "121", "--n", "3,1,2"]);
    let back = json_of(&[
        "braid",
        "--word",
        "212",
        "--n",
        &v["to"]["n"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(","),
    ]);
    assert_eq!(back["to"]["n"], serde_json::json!([3, 1, 2]));
}

#[test]
fn graph_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "p.json", r#"{"word": "121", "n": [1, 0, 1]}"#);
    let dot = dir.path().join("g.dot");
    let g = json_of(&["graph", "--polytope", &p, "--dot", dot.to_str().unwrap()]);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph moment {"));
    assert_eq!(
        text.matches(" -- ").count(),
        g["edges"].as_array().unwrap().len()
    );
    assert!(text.contains("α"));
}

#[test]
fn pave_reports_verification() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "p.json", r#"{"word": "121", "n": [2, 1, 1]}"#);
    let out = dir.path().join("plan.json");
    let v = json_of(&[
        "pave",
        "--polytope",
        &p,
        "--verify-q",
        "2,3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(v["verified"], true);
    assert_eq!(v["dims"].as_array().unwrap().len(), 10);
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(saved, v);
    let w = json_of(&["pave", "--polytope", &p, "--method", "iwahori"]);
    assert_eq!(w["poincare"], v["poincare"]);
}

#[test]
fn family_input_and_betti() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "w.json",
        r#"{"nu": 1, "vertices": {"123": [1,0,0], "132": [1,0,0], "312": [0,0,1], "321": [0,0,1], "231": [0,1,0], "213": [0,1,0]}}"#,
    );
    let v = json_of(&["betti", "--polytope", &p]);
    assert_eq!(v["betti"], serde_json::json!([1, 1, 1]));
    let n = json_of(&["points", "--polytope", &p, "--count", "--prime", "5"]);
    assert_eq!(n["count"], 31);
}

#[test]
fn springer_truncation() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", r#"{"pattern": [2, 1, 1]}"#);
    let v = json_of(&[
        "springer",
        "--gamma",
        &g,
        "--truncate",
        "j=21",
        "--verify-q",
        "2,3",
    ]);
    assert_eq!(v["verified"], true);
    assert_eq!(v["dimension"], 4);
    let series = write(
        dir.path(),
        "s.json",
        r#"{"series": [{"lead": 0, "coeffs": [], "prec": "exact"}, {"lead": 2, "coeffs": [1], "prec": "exact"}, {"lead": 1, "coeffs": [1], "prec": "exact"}], "prime": 3}"#,
    );
    let s = json_of(&["springer", "--gamma", &series]);
    assert_eq!(s["pattern"], serde_json::json!([2, 1, 1]));
    assert_eq!(s["counts"][0]["q"], 3);
    assert_eq!(s["counts"][0]["points"], 220);
    let off = write(dir.path(), "o.json", r#"{"pattern": [1, 1, 2]}"#);
    assert_eq!(
        json_of(&["springer", "--gamma", &off])["fundamental_domain"],
        Value::Null
    );
}

#[test]
fn domain_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", r#"{"pattern": [1, 1, 1]}"#);
    assert_eq!(
        mvgrass(&["springer", "--gamma", &g, "--verify-q", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        mvgrass(&["points", "--n", "1,0,0", "--prime", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        mvgrass(&["points", "--weyl", "12,0,-12", "--count"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        mvgrass(&["pave", "--n", "0,1,0", "--method", "iwahori"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn environment_sets_the_prime() {
    let out = Command::new(env!("CARGO_BIN_EXE_mvgrass"))
        .args(["points", "--n", "1,0,0", "--count"])
        .env("MVGRASS_PRIME", "7")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], 8);
}

#[test]
fn check_is_deterministic() {
    let a = mvgrass(&["check", "--suite", "1,2,3,10", "--seed", "7"]);
    let b = mvgrass(&["check", "--suite", "1,2,3,10", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 4);
}

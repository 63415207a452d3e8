use std::process::{Command, Output};

use serde_json::Value;

fn chibound(dir: &std::path::Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chibound")).current_dir(dir).args(args).output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn non_prime_is_an_operational_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = chibound(dir.path(), &["construct", "power", "--k", "4", "--p", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("4 is not prime"));
}

#[test]
fn construct_writes_headers_and_provenance() {
    let dir = tempfile::tempdir().unwrap();
    let out = chibound(dir.path(), &["construct", "zykov", "--k", "3", "--out", "g3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("g3.edges")).unwrap();
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body, ["n 5 5", "2 1", "3 0", "3 1", "4 0", "4 2"]);
    assert!(text.starts_with("# run_config {"));
    let prov: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("g3.provenance.json")).unwrap()).unwrap();
    assert_eq!(prov["vertices"].as_array().unwrap().len(), 5);
    assert_eq!(prov["input_sha256"], report(&out)["input_sha256"]);
}

#[test]
fn size_cap_is_operational() {
    let dir = tempfile::tempdir().unwrap();
    let out = chibound(dir.path(), &["construct", "zykov", "--k", "6", "--max-vertices", "1000"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn understated_clique_number_is_a_violation_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    chibound(dir.path(), &["construct", "power", "--k", "4", "--p", "5", "--out", "p"]);
    let out = chibound(dir.path(), &["color", "--input", "p.edges", "--p", "5", "--n", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    let failing: Vec<&Value> = r["reports"].as_array().unwrap().iter().filter(|x| x["verdict"] == "fail").collect();
    assert!(failing.iter().any(|x| x["check"] == "bounded_coloring" && x["witness"]["kind"] == "clique"));
}

#[test]
fn verify_all_passes_and_is_sorted() {
    let dir = tempfile::tempdir().unwrap();
    let out = chibound(dir.path(), &["verify", "all", "--k", "3", "--p", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = report(&out);
    let keys: Vec<(String, String)> = r["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| (x["check"].as_str().unwrap().into(), x["instance"].as_str().unwrap().into()))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(r["reports"].as_array().unwrap().iter().all(|x| x.get("wall_time_ms").is_none()));
}

#[test]
fn node_budget_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let out = chibound(dir.path(), &["verify", "zykov", "--k", "5", "--budget-nodes", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    let chi = r["reports"].as_array().unwrap().iter().find(|x| x["check"] == "chromatic_number").unwrap();
    assert_eq!(chi["verdict"], "budget_exceeded");
}

#[test]
fn params_reports_g_and_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let out = chibound(dir.path(), &["params", "--f", "n^2", "--n-max", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["parameters"]["g"], serde_json::json!({"2": 4, "3": 16, "5": 36}));
    assert_eq!(r["chi_bounds"][1]["bound"], "18");
}

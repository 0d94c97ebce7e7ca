use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quandlekit")).args(args).output().expect("binary runs")
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quandlekit")).args(args).env(key, value).output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn construct_to(dir: &Path, name: &str, recipe: &str) -> String {
    let path = dir.join(name);
    let o = run(&["construct", recipe, "--out", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path.to_str().unwrap().to_string()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn construct_sizes() {
    for (recipe, n) in [("affine:Z5:2", 5), ("coset:Gpq:5:3:d0", 15), ("product:affine:Z2^2:ord3|affine:Z7:3", 28)] {
        let o = run(&["construct", recipe]);
        assert!(o.status.success());
        let text = String::from_utf8(o.stdout).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), n.to_string());
        assert_eq!(lines.count(), n);
    }
}

#[test]
fn bad_recipe_exits_two_with_hint() {
    let o = run(&["construct", "affine:Q5:2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("coset:Gpq"));
}

#[test]
fn analyze_examples() {
    let dir = tempfile::tempdir().unwrap();
    let d3 = construct_to(dir.path(), "d3.q", "affine:Z3:2");
    let r = json(&run(&["analyze", &d3]));
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["latin"], true);
    assert_eq!(r["simple"], true);

    let q1 = construct_to(dir.path(), "q1.q", "coset:Gpq:5:3:d0");
    let r = json(&run(&["analyze", &q1]));
    assert_eq!(r["lattice_shape"], "SI-chain");
    assert_eq!(r["lss_label"], "LSS(5, 3, gamma)");
    assert_eq!(r["latin"], true);

    let p4 = construct_to(dir.path(), "p4.q", "projection:4");
    assert_eq!(json(&run(&["analyze", &p4]))["connected"], false);

    let o = run(&["analyze", &d3, "--format", "text"]);
    assert!(String::from_utf8_lossy(&o.stdout).contains("latin: true"));
}

#[test]
fn parse_and_axiom_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.q", "3\n0 2 1\n2 1 x\n1 0 2\n");
    let o = run(&["analyze", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3, column 5"));

    let ax = write(dir.path(), "ax.q", "2\n0 0\n1 1\n");
    let o = run(&["analyze", &ax]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("row 0"));
}

#[test]
fn iso_examples() {
    let dir = tempfile::tempdir().unwrap();
    let q1 = construct_to(dir.path(), "q1.q", "coset:Gpq:5:3:d0");
    let qa = construct_to(dir.path(), "qa.q", "coset:Gpq:5:3:d1");
    let pr = construct_to(dir.path(), "pr.q", "product:affine:Z3:2|affine:Z5:2");
    let d3 = construct_to(dir.path(), "d3.q", "affine:Z3:2");

    let v = json(&run(&["iso", &q1, &q1]));
    assert_eq!(v["isomorphic"], true);
    let id: Vec<Value> = (0..15).map(Value::from).collect();
    assert_eq!(v["bijection"], Value::Array(id));

    assert_eq!(json(&run(&["iso", &q1, &qa]))["isomorphic"], false);

    let v = json(&run(&["iso", &q1, &pr]));
    assert_eq!(v["isomorphic"], false);
    assert!(v["separating_invariants"].as_array().unwrap().contains(&Value::from("congruence count")));

    let o = run(&["iso", &q1, &d3]);
    assert_eq!(o.status.code(), Some(5));
    assert_eq!(json(&o)["separating_invariant"], "size");
}

#[test]
fn classify_pq_writes_reproducible_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cat");
    let o = run(&["classify", "pq", "3", "5", "--verify", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&o);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["counts"]["reducible"], 3);
    assert_eq!(r["counts"]["si"], 2);
    let catalog: Value = serde_json::from_str(&std::fs::read_to_string(out.join("catalog.json")).unwrap()).unwrap();
    let entries = catalog["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 5);
    for e in entries {
        let stored = std::fs::read(out.join(e["quandle_file"].as_str().unwrap())).unwrap();
        let rebuilt = run(&["construct", e["recipe"].as_str().unwrap()]).stdout;
        assert_eq!(stored, rebuilt, "{}", e["id"]);
    }
}

#[test]
fn classify_4p_thirteen() {
    let r = json(&run(&["classify", "4p", "13"]));
    assert_eq!(r["counts"]["reducible"], 11);
    assert_eq!(r["counts"]["si_factor4"], 2);
    assert_eq!(r["counts"]["si_factorp"], 0);
}

#[test]
fn classify_8p_seven_finds_none() {
    let o = run(&["classify", "8p", "7"]);
    assert!(o.status.success());
    let r = json(&o);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["found"], 0);
}

#[test]
fn classify_8p_guards() {
    let o = run(&["classify", "8p", "31"]);
    assert_eq!(o.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--slow"));
    let o = run(&["classify", "8p", "11", "--slow"]);
    assert_eq!(o.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&o.stderr).contains("infeasible"));
    assert_eq!(run(&["classify", "pq", "3"]).status.code(), Some(5));
}

#[test]
fn output_is_independent_of_worker_count() {
    let a = run_env(&["classify", "pq", "3", "7"], "QUANDLEKIT_WORKERS", "1");
    let b = run_env(&["classify", "pq", "3", "7"], "QUANDLEKIT_WORKERS", "3");
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(run_env(&["classify", "pq", "3", "7"], "QUANDLEKIT_WORKERS", "zero").status.code(), Some(5));
}

#[test]
fn verify_suites() {
    let o = run(&["verify", "appendix"]);
    let r = json(&o);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(o.status.code(), Some(if r["passed"] == true { 0 } else { 1 }));
    assert_eq!(r["suites"][0]["criterion"], 2);

    let o = run(&["verify", "nonconnected", "--format", "text"]);
    assert!(String::from_utf8_lossy(&o.stdout).contains("criterion 10 [nonconnected]"));

    assert_eq!(run(&["verify", "everything"]).status.code(), Some(5));
}

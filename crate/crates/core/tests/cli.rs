use std::path::Path;
use std::process::{Command, Output};

use cage_expander::report::REPORT_SCHEMA;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cage-expander"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json-only"];
    all.extend_from_slice(args);
    let out = run(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn validate(report: &Value) {
    let schema: Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let msgs: Vec<String> = match compiled.validate(report) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    assert!(msgs.is_empty(), "schema violations: {msgs:#?}");
}

#[test]
fn analyze_petersen() {
    let r = json(&["analyze", "catalog:petersen"]);
    validate(&r);
    assert_eq!(r["excess"], 0);
    assert_eq!(r["cheeger"]["h"]["exact"], "1/1");
    assert!((r["spectrum"]["lambda"].as_f64().unwrap() - 2.0).abs() < 1e-8);
    assert_eq!(r["spectrum"]["ramanujan"]["is_ramanujan"], true);
    assert_eq!(r["theorem_bound"]["bound"]["bound_value"]["exact"], "2/5");
    assert_eq!(r["theorem_bound"]["verdict"], "holds");
    assert_eq!(r["settings"]["seed"], 0);
    assert!(r.get("timings").is_none());
}

#[test]
fn reports_are_byte_identical_and_valid() {
    for name in ["petersen", "heawood", "K4", "K3,3", "mcgee", "hoffman-singleton"] {
        let spec = format!("catalog:{name}");
        let args = ["--json-only", "--seed", "7", "analyze", spec.as_str()];
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success(), "{name}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{name}");
        let v: Value = serde_json::from_slice(&a.stdout).unwrap();
        validate(&v);
    }
    let timed = json(&["analyze", "catalog:K4", "--timings"]);
    validate(&timed);
    assert!(timed["timings"]["total"].as_f64().unwrap() >= 0.0);
    assert!(timed["theorem_bound"].is_null());
}

#[test]
fn doubled_petersen_report_has_small_cut() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.g6");
    let d = json(&["double", "catalog:petersen", "--output", out.to_str().unwrap()]);
    assert_eq!(d["steps"][0]["witness_boundary"], 2);
    assert_eq!(d["steps"][0]["upper_bound"]["exact"], "1/5");
    let r = json(&["analyze", out.to_str().unwrap()]);
    validate(&r);
    assert_eq!(r["graph"]["n"], 20);
    assert_eq!(r["cheeger"]["h"]["exact"], "1/5");
    let witness: Vec<u64> = r["cheeger"]["argmin_set"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
    assert_eq!(witness, (0..10).collect::<Vec<_>>());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    };
    let code = |args: &[&str]| run(args).status.code().unwrap();
    let path = |p: &Path| p.to_str().unwrap().to_string();

    let disconnected = path(&write("two.txt", "8 12\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n4 5\n4 6\n4 7\n5 6\n5 7\n6 7\n"));
    assert_eq!(code(&["analyze", &disconnected]), 3);
    let malformed = path(&write("bad.txt", "2 1\na b\n"));
    let out = run(&["analyze", &malformed]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(code(&["analyze", "/nonexistent/graph.g6"]), 2);
    assert_eq!(code(&["analyze", "catalog:nothing"]), 2);
    assert_eq!(code(&["cheeger", "catalog:hoffman-singleton"]), 4);
    assert_eq!(code(&["cheeger", "--sampled", "catalog:hoffman-singleton", "--json-only"]), 0);
    assert_eq!(code(&["bound", "--k", "2", "--s", "3"]), 3);
    assert_eq!(code(&["double", "catalog:petersen", "--edge", "0,2"]), 3);
    assert_eq!(code(&["no-such-command"]), 2);
    assert_eq!(code(&["moore-bound", "3", "5"]), 0);
}

#[test]
fn moore_bound_outputs() {
    let m = json(&["moore-bound", "7", "5"]);
    assert_eq!(m["moore_bound"], "50");
    let dd = json(&["moore-bound", "3", "--diameter", "2"]);
    assert_eq!(dd["moore_bound"], "10");
    let out = run(&["moore-bound", "--table", "4", "4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("k,g,moore_bound\n3,3,4\n3,4,6\n4,3,5\n4,4,8\n"));
}

#[test]
fn bound_and_epsilon() {
    let b = json(&["bound", "--k", "3", "--s", "2", "--parity", "odd"]);
    assert_eq!(b["bounds"][0]["bound_value"]["exact"], "2/5");
    let both = json(&["bound", "--k", "3", "--s", "3", "--epsilon", "0.01"]);
    assert_eq!(both["bounds"][1]["bound_value"]["exact"], "3/7");
    assert_eq!(both["epsilon"], "1/100");
    let t_dec = both["thresholds"].clone();
    let t_rat = json(&["bound", "--k", "3", "--s", "3", "--epsilon", "1/100"])["thresholds"].clone();
    assert_eq!(t_dec, t_rat);
    assert_eq!(both["lambda_bracket"]["lower"]["exact"], "7/3");
    assert_eq!(both["lambda_bracket"]["upper"]["exact"], "161/54");
}

#[test]
fn catalog_and_lemma_commands() {
    let out = run(&["catalog", "--emit", "petersen", "--format", "graph6"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "IheA@GUAo\n");
    let adj = run(&["catalog", "--emit", "K4", "--format", "adj"]);
    assert_eq!(String::from_utf8(adj.stdout).unwrap(), "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let list = json(&["catalog", "--list"]);
    assert!(list.as_array().unwrap().len() >= 7);
    let l = json(&["verify-lemmas", "catalog:heawood", "--exhaustive"]);
    assert_eq!(l["passed"], true);
    assert_eq!(l["sigma"]["violation_count"], 0);
    let s = json(&["verify-lemmas", "catalog:hoffman-singleton", "--samples", "300", "--seed", "3"]);
    assert_eq!(s["passed"], true);
    assert_eq!(s["sigma"]["mode"], "sampled");
}

#[test]
fn spectral_and_cheeger_commands() {
    let s = json(&["spectral", "catalog:petersen"]);
    let mults: Vec<u64> = s["multiplicities"].as_array().unwrap().iter().map(|m| m["multiplicity"].as_u64().unwrap()).collect();
    assert_eq!(mults, vec![1, 5, 4]);
    assert_eq!(s["cheeger_inequality"]["absolute"]["upper_holds"], true);
    let k4 = json(&["cheeger", "catalog:K4"]);
    assert_eq!(k4["h"]["exact"], "2/1");
    assert_eq!(k4["argmin_set"], serde_json::json!([0, 1]));
    let human = run(&["cheeger", "catalog:K4"]);
    let text = String::from_utf8(human.stdout).unwrap();
    assert!(text.starts_with("h  "));
}

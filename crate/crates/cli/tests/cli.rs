use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.display().to_string()
}

fn legrid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_legrid")).args(args).output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

/// Exit code and the parsed error object; stdout must stay empty.
fn error(out: &Output) -> (i32, Value) {
    assert!(
        out.stdout.is_empty(),
        "partial output: {}",
        String::from_utf8_lossy(&out.stdout)
    );
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    (out.status.code().unwrap(), v["error"].clone())
}

#[test]
fn inv_on_unknot() {
    let v = stdout_json(&legrid(&["inv", &data("unknot.txt")]));
    assert_eq!(v, json!([{"component":0,"tb":-1,"r":0,"sl_pos":-1,"sl_neg":-1}]));
    let j = stdout_json(&legrid(&["inv", &data("unknot.json")]));
    assert_eq!(j, v);
}

#[test]
fn inv_selects_component() {
    let v = stdout_json(&legrid(&["inv", &data("split.txt"), "--component", "1"]));
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["component"], 1);
    let (code, e) = error(&legrid(&["inv", &data("split.txt"), "--component", "2"]));
    assert_eq!((code, e["kind"].as_str()), (1, Some("component")));
}

#[test]
fn inv_on_trefoil() {
    let v = stdout_json(&legrid(&["inv", &data("trefoil.txt")]));
    assert_eq!((v[0]["tb"].as_i64(), v[0]["r"].as_i64()), (Some(-6), Some(1)));
}

#[test]
fn rel_on_split_unknots() {
    let v = stdout_json(&legrid(&["rel", &data("split.txt")]));
    assert_eq!(v, json!({"pair":[0,1],"tb_rel":0,"r_rel":0,"sl_rel":0}));
    let w = stdout_json(&legrid(&["rel", &data("split.txt"), "--pair", "1,0", "--orient", "-"]));
    assert_eq!(w["pair"], json!([1, 0]));
}

#[test]
fn rel_needs_two_components() {
    let (code, e) = error(&legrid(&["rel", &data("unknot.txt")]));
    assert_eq!(code, 1);
    assert_eq!(e["kind"], "component");
}

#[test]
fn moves_trace() {
    let v = stdout_json(&legrid(&["moves", &data("split.txt"), &data("stabilize.moves")]));
    let trace = v["trace"].as_array().unwrap();
    assert_eq!(trace.len(), 4);
    assert_eq!(trace[0]["move"], Value::Null);
    assert_eq!(trace[1]["move"], "lstab 0 +");
    for step in &trace[1..] {
        assert_eq!(
            step["relative"],
            json!({"pair":[0,1],"tb_rel":-1,"r_rel":1,"sl_rel":-2})
        );
    }
    assert_eq!(v["grid"]["n"], 5);
}

#[test]
fn failing_move_reports_step() {
    let (code, e) = error(&legrid(&["moves", &data("unknot.txt"), &data("bad.moves")]));
    assert_eq!(code, 1);
    assert_eq!(
        (e["kind"].as_str(), e["step"].as_u64(), e["line"].as_u64()),
        (Some("move"), Some(1), Some(2))
    );
}

#[test]
fn ledger_queries() {
    let v = stdout_json(&legrid(&["ledger", &data("overtwisted.json"), "--from", "1,-1"]));
    assert_eq!(v, json!({"tb_diff":0,"rot_diff":-2,"sl_diff":-2,"ambiguity":2}));
    let t = stdout_json(&legrid(&["ledger", &data("tight.json"), "--from=-3,2", "--to", "1,1"]));
    assert_eq!(t, json!({"tb_diff":0,"rot_diff":0,"sl_diff":0,"ambiguity":0}));
    let (code, _) = error(&legrid(&["ledger", &data("tight.json"), "--from", "1"]));
    assert_eq!(code, 1);
}

#[test]
fn cross_sim_trace() {
    let v = stdout_json(&legrid(&["cross-sim", &data("sample.events")]));
    let states = v.as_array().unwrap();
    assert_eq!(states.len(), 4);
    assert_eq!(states[1], json!({"tw_K":-1,"tw_J":-1,"w_K":-1,"w_J":-1,"sK":1,"sJ":1}));
    assert_eq!(states[3], json!({"tw_K":3,"tw_J":3,"w_K":0,"w_J":0,"sK":0,"sJ":0}));

    let g = stdout_json(&legrid(&[
        "cross-sim",
        &data("sample.events"),
        "--grid",
        &data("split.txt"),
    ]));
    assert_eq!(g[0], json!({"tw_K":-1,"tw_J":-1,"w_K":0,"w_J":0,"sK":-1,"sJ":-1}));
}

#[test]
fn cross_sim_rejects_two_singular_clasps() {
    let (code, e) = error(&legrid(&["cross-sim", &data("bad.events")]));
    assert_eq!(
        (code, e["kind"].as_str(), e["line"].as_u64()),
        (1, Some("parse"), Some(1))
    );
}

#[test]
fn parse_errors_carry_location() {
    let (code, e) = error(&legrid(&["inv", &data("repeated.txt")]));
    assert_eq!(code, 1);
    assert_eq!((e["line"].as_u64(), e["column"].as_u64()), (Some(2), Some(5)));
    assert_eq!(e["kind"], "invalid-grid");
    let (code, e) = error(&legrid(&["inv", &data("missing.txt")]));
    assert_eq!((code, e["kind"].as_str()), (1, Some("io")));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["frobnicate"],
        vec!["inv"],
        vec!["rel", "x", "--pair", "0"],
        vec!["rel", "x", "--orient", "0"],
        vec!["selftest", "--seed", "-1"],
    ] {
        let (code, e) = error(&legrid(&args));
        assert_eq!(code, 2, "{args:?}");
        assert_eq!(e["kind"], "usage");
    }
    let (code, _) = error(&legrid(&["cross-sim", &data("sample.events"), "--pair", "0,1"]));
    assert_eq!(code, 2);
}

#[test]
fn selftest_is_deterministic() {
    let a = legrid(&["selftest", "--seed", "3", "--cases", "20"]);
    let b = legrid(&["selftest", "--seed", "3", "--cases", "20"]);
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    assert_eq!(v["pass"], true);
    assert_eq!((v["seed"].as_u64(), v["cases"].as_u64()), (Some(3), Some(20)));
    let c = legrid(&["selftest", "--seed", "4", "--cases", "20"]);
    assert!(c.status.success());
}

#[test]
fn pretty_prints_tables() {
    let out = legrid(&["inv", &data("split.txt"), "--pretty"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("component"));
    assert_eq!(text.lines().count(), 3);
}

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn strat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strat")).args(args).output().expect("binary runs")
}

fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    path.to_string_lossy().into_owned()
}

fn generators(out: &Output) -> Vec<String> {
    let v: Value = serde_json::from_slice(&out.stdout).expect("variety JSON");
    assert_eq!(v["schema"], 1);
    v["generators"].as_array().unwrap().iter().map(|g| g.as_str().unwrap().to_string()).collect()
}

#[test]
fn support_of_fixtures() {
    let out = strat(&["support", "-i", &fixture("kE_mod_z1.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(generators(&out), ["x2"]);

    let out = strat(&["support", "-i", &fixture("trivial.json")]);
    assert!(generators(&out).is_empty());

    let mut free = generators(&strat(&["support", "-i", &fixture("free.json"), "--D", "4"]));
    free.sort();
    assert_eq!(free, ["x1", "x2"]);
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"p":2,"rank":2,"dim":1,"z_actions":[[[1]],[[0]]]}"#).unwrap();
    assert_eq!(strat(&["support", "-i", bad.to_str().unwrap()]).status.code(), Some(2));
    fs::write(&bad, "{").unwrap();
    assert_eq!(strat(&["support", "-i", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(strat(&["support", "-i", dir.path().join("missing.json").to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(strat(&["support", "-i", &fixture("trivial.json"), "--D", "many"]).status.code(), Some(2));
    assert_eq!(strat(&["check", "nonsense"]).status.code(), Some(2));
}

#[test]
fn random_is_deterministic_and_pinned() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = strat(&["random", "--seed", "42", "--p", "2", "--r", "2", "--dim", "4", "-o", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let text = fs::read(&a).unwrap();
    assert_eq!(text, fs::read(&b).unwrap());
    assert_eq!(text, fs::read(fixture("random_seed42_p2_r2_dim4.json")).unwrap());
    let out = strat(&["support", "-i", a.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(strat(&["random", "--seed", "1", "--p", "4", "--r", "2", "--dim", "3"]).status.code(), Some(2));
}

#[test]
fn check_commands_exit_zero_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let r = report.to_str().unwrap();
    for args in [
        vec!["check", "tensor", "--p", "2", "--r", "2", "--trials", "200", "--seed", "42"],
        vec!["check", "oracle", "--p", "3", "--r", "2", "--trials", "50", "--seed", "7"],
        vec!["check", "bgg", "--p", "2", "--r", "2", "--window", "-8..8", "--m", "6"],
        vec!["check", "chouinard"],
        vec!["check", "subgroup", "--p", "2", "--r", "3", "--corank", "1", "2", "--trials", "5"],
        vec!["check", "induction", "--p", "3", "--r", "2", "--trials", "5"],
    ] {
        let mut full = args.clone();
        full.extend(["-o", r]);
        let out = strat(&full);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let v: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["summary"]["pass"], true);
        assert_eq!(v["summary"]["failed"], 0);
    }
}

#[test]
fn check_reports_are_deterministic() {
    let run = || {
        let out = strat(&["check", "koszul", "--p", "2", "--r", "2", "--trials", "4", "--max-dim", "6", "--seed", "9"]);
        assert_eq!(out.status.code(), Some(0));
        let mut v: Value = serde_json::from_slice(&out.stdout).unwrap();
        for cell in v["cells"].as_array_mut().unwrap() {
            cell["elapsed_ms"] = Value::Null;
            for rec in cell["records"].as_array_mut().unwrap() {
                rec["elapsed_ms"] = Value::Null;
            }
        }
        v
    };
    assert_eq!(run(), run());
}

#[test]
fn config_errors_exit_two() {
    assert_eq!(strat(&["check", "subgroup", "--r", "2", "--corank", "2"]).status.code(), Some(2));
    assert_eq!(strat(&["check", "tensor", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(strat(&["check", "tensor", "--p", "6"]).status.code(), Some(2));
    assert_eq!(strat(&["check", "bgg", "--window", "-1..8"]).status.code(), Some(2));
}

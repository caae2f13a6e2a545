use std::path::Path;
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

fn infker(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_infker")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema(name: &str) -> JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    let text = std::fs::read_to_string(&path).unwrap();
    let value: Value = serde_json::from_str(&text).unwrap();
    JSONSchema::compile(&value).unwrap()
}

fn assert_valid(name: &str, doc: &str) {
    let s = schema(name);
    for line in doc.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        let msgs: Vec<String> = match s.validate(&v) {
            Ok(()) => continue,
            Err(errors) => errors.map(|e| e.to_string()).collect(),
        };
        panic!("{name}: {line}\n{msgs:?}");
    }
}

#[test]
fn quotient_basis_output_is_exact() {
    let o = infker(&["quotient-basis", "-p", "2", "-m", "3", "-r", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"dim\":1,\"basis\":[\"x2^x3^y2^y3\"]}\n");
}

#[test]
fn sl2_check_reports_sigma() {
    let o = infker(&["sl2-check", "-p", "5", "-m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ok"], true);
    assert_eq!(v["sigma"], -1);
}

#[test]
fn exit_codes() {
    assert_eq!(infker(&["theorem1", "-p", "4", "-m", "2"]).status.code(), Some(2));
    assert_eq!(infker(&["frobnicate", "-p", "2", "-m", "2"]).status.code(), Some(2));
    assert_eq!(infker(&["theorem1", "-p", "2"]).status.code(), Some(2));
    assert_eq!(infker(&["ideal-basis", "-p", "2", "-m", "2", "-r", "7"]).status.code(), Some(2));
    assert_eq!(infker(&["ideal-basis", "-p", "2", "-m", "2", "-r", "-1"]).status.code(), Some(2));
    assert_eq!(infker(&["ladder", "-p", "3", "-m", "2", "--class", "x1^y1"]).status.code(), Some(2));
    assert_eq!(infker(&["ladder", "-p", "3", "-m", "2", "--class", "x3"]).status.code(), Some(2));
    assert_eq!(infker(&["decompose", "-p", "2", "-m", "2", "--class", "x1^y1"]).status.code(), Some(1));
    let o = infker(&["isotropic", "-p", "11", "-m", "3", "--dim", "3"]);
    assert_eq!(o.status.code(), Some(3));
    assert_valid("error", &stdout(&o));
    let o = Command::new(env!("CARGO_BIN_EXE_infker"))
        .args(["sl2-check", "-p", "2", "-m", "1"])
        .env("INFKER_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn theorem1_fails_nowhere_at_desk_scale() {
    for (p, m) in [("3", "2"), ("2", "3")] {
        let o = infker(&["theorem1", "-p", p, "-m", m]);
        assert_eq!(o.status.code(), Some(0), "({p},{m})");
        assert_valid("theorem1", &stdout(&o));
    }
}

#[test]
fn outputs_match_schemas() {
    let dir = tempfile::tempdir().unwrap();
    let sub = dir.path().join("sub.json");
    std::fs::write(&sub, "[[1,0,0,0,0,0],[0,1,0,0,0,0],[0,0,1,0,0,0]]").unwrap();
    let sub = sub.to_str().unwrap();
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("sl2-check", vec!["sl2-check", "-p", "3", "-m", "2"]),
        ("decompose", vec!["decompose", "-p", "5", "-m", "2", "--class", "x1^y1 + x1^x2"]),
        ("ideal-basis", vec!["ideal-basis", "-p", "2", "-m", "3", "-r", "4"]),
        ("vanishing-space", vec!["vanishing-space", "-p", "2", "-m", "3", "-r", "4"]),
        ("quotient-basis", vec!["quotient-basis", "-p", "3", "-m", "2", "-r", "2"]),
        ("theorem1", vec!["theorem1", "-p", "2", "-m", "2"]),
        ("counterexample", vec!["counterexample", "-p", "2", "-m", "3"]),
        ("counterexample", vec!["counterexample", "-p", "3", "-m", "2"]),
        ("certificate", vec!["certificate", "-p", "2", "-m", "3", "--class", "x2^x3^y2^y3"]),
        ("isotropic", vec!["isotropic", "-p", "3", "-m", "2", "--dim", "2"]),
        ("isotropic", vec!["isotropic", "-p", "3", "-m", "2", "--dim", "2", "--count-only"]),
        ("group", vec!["group", "-p", "3", "-m", "1", "--op", "center"]),
        ("group", vec!["group", "-p", "2", "-m", "3", "--op", "order"]),
        ("group", vec!["group", "-p", "2", "-m", "2", "--op", "commutator-form"]),
        ("group", vec!["group", "-p", "3", "-m", "1", "--op", "type"]),
        ("premet-suprunenko", vec!["premet-suprunenko", "-p", "2", "-m", "3", "-r", "2"]),
        ("ladder", vec!["ladder", "-p", "7", "-m", "3", "--class", "x1"]),
        ("restrict", vec!["restrict", "-p", "2", "-m", "3", "--class", "x1^x2^x3", "--subspace", sub]),
        ("verify-all", vec!["verify-all", "--grid", "small"]),
        ("error", vec!["ladder", "-p", "3", "-m", "2", "--class", "x1 +"]),
    ];
    for (name, args) in cases {
        let o = infker(&args);
        assert!(matches!(o.status.code(), Some(0) | Some(2)), "{args:?}");
        assert_valid(name, &stdout(&o));
    }
}

#[test]
fn isotropic_lines_and_count() {
    let o = infker(&["isotropic", "-p", "3", "-m", "2", "--dim", "2"]);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 41);
    assert_eq!(lines[40], "{\"count\":40,\"complete\":true}");
    let o = infker(&["isotropic", "-p", "3", "-m", "2", "--dim", "2", "--count-only"]);
    assert_eq!(stdout(&o), "{\"count\":40,\"complete\":true}\n");
}

#[test]
fn restrict_to_lagrangian() {
    let dir = tempfile::tempdir().unwrap();
    let sub = dir.path().join("l.json");
    std::fs::write(&sub, "[[1,0,0,0],[0,1,0,0]]").unwrap();
    let o = infker(&["restrict", "-p", "3", "-m", "2", "--class", "x1^y1 + y2^x2 + x1^x2", "--subspace", sub.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["isotropic"], true);
    assert_eq!(v["radical_dim"], 2);
    assert_eq!(v["restriction"], "e1^e2");
    let missing = dir.path().join("absent.json");
    let o = infker(&["restrict", "-p", "3", "-m", "2", "--class", "x1", "--subspace", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let runs: [&[&str]; 4] = [
        &["certificate", "-p", "2", "-m", "3", "--class", "x2^x3^y2^y3"],
        &["isotropic", "-p", "2", "-m", "3", "--dim", "2"],
        &["verify-all", "--grid", "small", "--seed", "11"],
        &["theorem1", "-p", "3", "-m", "2", "--format", "text"],
    ];
    for args in runs {
        let a = infker(args);
        let b = Command::new(env!("CARGO_BIN_EXE_infker"))
            .args(args)
            .env("INFKER_THREADS", "1")
            .output()
            .unwrap();
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn text_format() {
    let o = infker(&["quotient-basis", "-p", "2", "-m", "3", "-r", "4", "--format", "text"]);
    assert_eq!(stdout(&o), "dim: 1\nbasis: x2^x3^y2^y3\n");
    let o = infker(&["group", "-p", "2", "-m", "1", "--op", "type", "--format", "text"]);
    assert!(stdout(&o).contains("type: +"));
}

#[test]
fn in_process_run_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = infker::cli::run(["infker", "group", "-p", "2", "-m", "2", "--op", "order"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap(), "{\"p\":2,\"m\":2,\"order\":32}\n");
    let mut out = Vec::new();
    assert_eq!(infker::cli::run(["infker", "--help"], &mut out, &mut err), 0);
    assert!(!out.is_empty());
}

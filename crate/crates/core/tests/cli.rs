use quadalg::canon::canonicalize;
use quadalg::catalog::get_system;
use quadalg::contract::Certificate;
use quadalg::qalg::{g_action, Casimir, Mat3};
use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadalg")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("one JSON document")
}

#[test]
fn canon_output_round_trips() {
    let v = json(&["canon", "--system", "E1"]);
    let f = get_system("E1").unwrap().free_casimir(None).unwrap();
    let w = Mat3::from_json(&v["witness"]).unwrap();
    let poly = Casimir::parse(v["polynomial"].as_str().unwrap()).unwrap();
    assert_eq!(g_action(&w, &f).unwrap(), poly);
    assert_eq!(v["label"], canonicalize(&f).unwrap().label.to_string());

    // feeding the output back in is a fixed point
    let dir = std::env::temp_dir().join(format!("quadalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("e1.json");
    std::fs::write(&file, serde_json::to_string(&v).unwrap()).unwrap();
    let again = json(&["canon", "--input", file.to_str().unwrap()]);
    assert_eq!(again["label"], v["label"]);
    assert_eq!(again["params"], v["params"]);
    assert_eq!(again["polynomial"], v["polynomial"]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn certificate_output_reads_back() {
    let v = json(&["contract", "verify", "--curve", "schema1: D2C -> E17", "--from", "D2C", "--to", "E17"]);
    let cert = Certificate::from_json(&v).unwrap();
    assert_eq!(cert.canonical.label.to_string(), "2b");
    assert_eq!(v["canonical"]["params"]["c9"], 0);
}

#[test]
fn poly_argument_matches_library() {
    let v = json(&["canon", "--poly", "X1^3 + X2*X3^2"]);
    assert_eq!(v["label"], "3c");
    assert_eq!(v["params"], serde_json::json!({}));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["iso", "E1", "E19"]).status.code(), Some(0));
    assert_eq!(run(&["iso", "E1", "S9"]).status.code(), Some(1));
    assert_eq!(run(&["stackel", "E1"]).status.code(), Some(0));
    assert_eq!(run(&["contract", "search", "--from", "E10", "--to", "E11", "--max-exp", "1", "--max-denom", "1"]).status.code(), Some(1));
    assert_eq!(run(&["--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["canon", "--input", "/nonexistent/f.json"]).status.code(), Some(2));
    assert_eq!(run(&["bocher", "check", "no_such_matrix"]).status.code(), Some(2));
}

#[test]
fn bocher_check_reports_kind() {
    assert_eq!(json(&["bocher", "check", "form1"])["kind"], "special");
    let names = json(&["bocher", "list"]);
    assert!(names.as_array().unwrap().iter().any(|n| n == "H"));
}

#[test]
fn outputs_are_deterministic() {
    for args in [&["--format", "dot", "contract", "graph"][..], &["--format", "tsv", "catalog", "table"][..]] {
        let (a, b) = (run(args), run(args));
        assert!(a.status.success());
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

use std::process::{Command, Output};

use serde_json::Value;

fn paired(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paired")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = paired(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn apply_examples() {
    let v = json(&["apply", "--a", "1", "--b", "z", "--f", "1 + z^-1"]);
    assert_eq!(v["command"], "apply");
    assert_eq!(v["result"]["value"]["coeffs"], serde_json::json!([[0, 2.0, 0.0]]));
    let o = paired(&["--format", "pretty", "apply", "--a", "z^-1", "--b", "z", "--f", "1 - z^-2"]);
    assert_eq!(stdout(&o), "");
    let o = paired(&["--format", "pretty", "apply", "--a", "1", "--b", "z", "--f", "z"]);
    assert_eq!(stdout(&o), "(1, 1, 0)\n");
}

#[test]
fn norm_table() {
    let o = paired(&["--format", "csv", "norm", "--a", "1", "--b", "z", "--N", "4,8,16"]);
    let text = stdout(&o);
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let header = rows.headers().unwrap().clone();
    assert_eq!(header.iter().collect::<Vec<_>>(), ["N", "op_norm", "M", "sqrt2M", "sumAB", "monotone"]);
    let recs: Vec<csv::StringRecord> = rows.records().map(Result::unwrap).collect();
    assert_eq!(recs.len(), 3);
    for r in &recs {
        let norm: f64 = r[1].parse().unwrap();
        assert!((norm - 2f64.sqrt()).abs() < 1e-9);
        assert!((r[2].parse::<f64>().unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(&r[5], "true");
    }
    let o = paired(&["--format", "pretty", "norm", "--a", "1", "--b", "z", "--N", "8"]);
    assert!(stdout(&o).contains("1.41421356"));
}

#[test]
fn kernel_examples() {
    let v = json(&["kernel", "--a", "z^-1", "--b", "z"]);
    assert_eq!(v["result"]["dim"], 2);
    let v = json(&["kernel", "--a", "1", "--b", "1 - z"]);
    assert_eq!(v["result"]["dim"], 0);
    let o = paired(&["--format", "pretty", "kernel", "--a", "z^-1", "--b", "1", "--project"]);
    let text = stdout(&o);
    assert!(text.starts_with("dim 1"));
    let plus = text.lines().find(|l| l.trim_start().starts_with("P+")).unwrap();
    assert!(!plus.contains('z'), "{plus}");
}

#[test]
fn factor_and_pair_from() {
    let o = paired(&["--format", "pretty", "factor", "--p", "z-2"]);
    let text = stdout(&o);
    assert!(text.contains("inner: constant -1"));
    assert!(text.contains("outer: 2 - z"));
    let v = json(&["pair-from", "--f", "1 - z^-1"]);
    assert!(v["result"]["residual"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn coburn_exit_codes() {
    assert_eq!(paired(&["coburn", "--a", "1", "--b", "z"]).status.code(), Some(0));
}

#[test]
fn errors_map_to_exit_codes() {
    let o = paired(&["apply", "--a", "1", "--b", "z", "--f", "1 +"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
    assert_eq!(paired(&["suite", "nope"]).status.code(), Some(2));
    assert_eq!(paired(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(paired(&["kernel", "--a", "1", "--b", "z", "--N", "0"]).status.code(), Some(2));
    assert_eq!(paired(&["kernel", "--a", "1", "--b", "z", "--N", "4,8"]).status.code(), Some(2));
}

#[test]
fn suite_output_is_deterministic() {
    let args = ["suite", "commutant", "--trials", "5", "--seed", "7"];
    let a = paired(&args);
    let b = paired(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["result"]["runtime_ms"], 0.0);
    assert_eq!(v["config"]["seed"], 7);
    assert_eq!(v["result"]["seed"], paired::properties::suite_seed(7, "commutant"));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    std::fs::write(&path, r#"{"N": 12, "seed": 4, "format": "json"}"#).unwrap();
    let p = path.to_str().unwrap();
    let v = json(&["--config", p, "kernel", "--a", "z^-1", "--b", "z"]);
    assert_eq!(v["config"]["N"], 12);
    assert_eq!(v["config"]["seed"], 4);
    let v = json(&["--config", p, "--N", "20", "kernel", "--a", "z^-1", "--b", "z"]);
    assert_eq!(v["config"]["N"], 20);

    std::fs::write(&path, r#"{"bogus": 1}"#).unwrap();
    assert_eq!(paired(&["--config", p, "norm", "--a", "1", "--b", "z"]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("norm.csv");
    let o = paired(&["--format", "csv", "--out", path.to_str().unwrap(), "norm", "--a", "1", "--b", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("N,op_norm"));
}

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

const MORDELL: &str = "# y^2 = x^3 - 4 with P = (2, 2)\nf = [-4, 0, 0, 1]\npoint = (2, 2)\n";

const COLUMNS: [&str; 13] = [
    "n",
    "f_n",
    "S_n",
    "primitive",
    "form_a",
    "form_b2",
    "form_c",
    "order_order",
    "order_maximal",
    "h_order",
    "h_maximal",
    "error",
    "pairing_status",
];

fn config(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperpic"))
        .args(args)
        .output()
        .unwrap()
}

fn run_with(cfg: &NamedTempFile, args: &[&str]) -> Output {
    let path = cfg.path().to_str().unwrap();
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["--config", path]);
    run(&full)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn validate_reports_the_curve() {
    let cfg = config(MORDELL);
    let o = run_with(&cfg, &["validate"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("genus 1, n_f=1, valid"), "{text}");
    assert!(text.contains("discriminant: -432"));
    assert!(text.contains("fixed divisor of f: 1"));
    assert!(text.contains("divisor: (x - 2, 2) valid"));
}

#[test]
fn validate_rejects_bad_configs() {
    let o = run_with(&config("f = [-1, 0, 1]\n"), &["validate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("degree"));

    let o = run_with(&config("f = [-4, 0, 0, 1]\npoint = (2, 2\n"), &["validate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":2: key `point`"));

    let o = run_with(&config("f = [-4, 0, 0, 1]\npoint = (2, 3)\n"), &["validate"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["validate", "--config", "/nonexistent/hyperpic.cfg"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn scan_csv_has_the_worked_row() {
    let cfg = config(MORDELL);
    let o = run_with(&cfg, &["scan", "--from", "-20", "--to", "-1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("n,f_n,S_n,primitive,form_a,form_b2,form_c,"));
    assert_eq!(lines.len(), 21);
    assert!(lines[1].starts_with("-1,-5,1,true,2,2,3,2,2,"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("# nontrivial:"));
}

#[test]
fn scan_json_round_trips() {
    let cfg = config(MORDELL);
    let o = run_with(&cfg, &["scan", "--from", "-20", "--to", "-1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 20);
    for r in rows {
        for key in ["n", "f_n"] {
            assert!(r[key].is_string());
        }
        for key in ["S_n", "form_a", "form_b2", "form_c", "error", "pairing_status"] {
            assert!(r[key].is_string() || r[key].is_null(), "{key}: {}", r[key]);
        }
    }
    assert_eq!(rows[0]["n"], "-1");
    assert_eq!(rows[0]["order_maximal"], 2);
    let nontrivial = rows
        .iter()
        .filter(|r| r["order_order"].as_u64().is_some_and(|o| o > 1))
        .count() as u64;
    assert!(nontrivial >= 1);
    assert_eq!(v["summary"]["nontrivial"].as_u64(), Some(nontrivial));
    let mut keys: Vec<&str> = rows[0].as_object().unwrap().keys().map(String::as_str).collect();
    let mut expected = COLUMNS.to_vec();
    keys.sort_unstable();
    expected.sort_unstable();
    assert_eq!(keys, expected);
}

#[test]
fn scan_of_identity_is_trivial() {
    let cfg = config("f = [-4, 0, 0, 1]\n");
    let o = run_with(&cfg, &["scan", "--from", "-10", "--to", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    for r in v["rows"].as_array().unwrap() {
        assert_eq!(r["order_order"], 1);
        assert_eq!(r["order_maximal"], 1);
    }
}

#[test]
fn scan_edge_cases() {
    let cfg = config(MORDELL);
    let o = run_with(&cfg, &["scan", "--from", "0", "--to", "-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);

    let o = run_with(&cfg, &["scan", "--from", "-3", "--to", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let cfg = config(MORDELL);
    let one = run_with(&cfg, &["scan", "--from", "-60", "--to", "1", "--jobs", "1"]);
    let many = run_with(&cfg, &["scan", "--from", "-60", "--to", "1", "--jobs", "8"]);
    let again = run_with(&cfg, &["scan", "--from", "-60", "--to", "1"]);
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(one.stdout, again.stdout);
    assert_eq!(one.stderr, many.stderr);
}

#[test]
fn search_finds_and_misses() {
    let cfg = config(MORDELL);
    let o = run_with(&cfg, &["search", "--min-order", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("n = -1\n"), "{text}");
    assert!(text.contains("reduced form = [2, 2, 3]"));
    assert!(text.contains("class number = 2"));

    let o = run_with(&cfg, &["search", "--min-order", "1"]);
    assert!(stdout(&o).starts_with("n = 1\n"));

    let o = run_with(&cfg, &["search", "--min-order", "1000000000", "--floor", "-20"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("examined 22"));
}

#[test]
fn class_number_command() {
    for (d, h) in [("-5", "2\n"), ("-1", "1\n"), ("-14", "4\n")] {
        let o = run(&["class-number", "--D", d]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), h);
    }
    for d in ["4", "3", "9", "0"] {
        assert_eq!(run(&["class-number", "--D", d]).status.code(), Some(2), "D = {d}");
    }
}

#[test]
fn jacobian_commands() {
    let cfg = config(MORDELL);
    let o = run_with(&cfg, &["jac", "smul", "--k", "3"]);
    assert_eq!(stdout(&o), "(x - 106/9, 1090/27)\n");
    let o = run_with(&cfg, &["jac", "neg"]);
    assert_eq!(stdout(&o), "(x - 2, -2)\n");
    let o = run_with(&config(&format!("{MORDELL}point2 = (5, -11)\n")), &["jac", "add"]);
    assert_eq!(stdout(&o), "(x - 106/9, 1090/27)\n");
    let o = run_with(&config(&format!("{MORDELL}multiple = 2\n")), &["jac", "neg"]);
    assert_eq!(stdout(&o), "(x - 5, 11)\n");
    let o = run_with(&cfg, &["jac", "add"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn altmumford_command() {
    let cfg = config("f = [-4, 0, 0, 1]\nmumford_a = [-106/9, 1]\nmumford_b = [1090/27]\n");
    let o = run_with(&cfg, &["altmumford", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["a"], serde_json::json!(["-106", "9"]));
    assert_eq!(v["e"], "27");
    assert!(v["congruence"]["d_l"].is_string());
}

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdescent"))
        .args(args)
        .env_remove("QDESCENT_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut v = args.to_vec();
    v.push("--json");
    let out = run(&v);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn selmer_reports() {
    let r = json(&["selmer", "101"]);
    assert_eq!(r["command"], "selmer");
    assert_eq!(r["results"]["dimension"], 1);
    assert_eq!(r["results"]["rank_statement"]["kind"], "rank-zero");
    assert!(!r["evidence"].as_array().unwrap().is_empty());

    let r = json(&["selmer", "7"]);
    assert_eq!(r["results"]["dimension"], 2);
    assert_eq!(r["results"]["basis"], serde_json::json!(["2", "7"]));
}

#[test]
fn usage_errors_exit_2() {
    for args in [&["selmer", "4"][..], &["selmer", "25"], &["rootnumber", "--A", "25"], &["selmer", "-3"], &["bogus"]] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let out = run(&["selmer", "4"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("odd"));
}

#[test]
fn root_numbers() {
    assert_eq!(json(&["rootnumber", "--m", "3"])["results"]["root_number"], -1);
    assert_eq!(json(&["rootnumber", "--A", "1"])["results"]["root_number"], 1);
    assert_eq!(json(&["rootnumber", "--m", "101"])["results"]["root_number"], 1);
}

#[test]
fn l_values() {
    let r = json(&["lvalue", "--A", "1", "--s", "1"]);
    let v = r["results"]["value"][0].as_f64().unwrap();
    let e = r["results"]["error"].as_f64().unwrap();
    assert!(v > 0.0 && v > 10.0 * e);
    let r = json(&["lvalue", "--A", "9", "--s", "1"]);
    assert!(r["results"]["value"][0].as_f64().unwrap().abs() < 1e-10);
    let r = json(&["lvalue", "--A", "1", "--s", "1+0.3i", "--t0", "1.2"]);
    assert!(r["results"]["value"][1].as_f64().unwrap() != 0.0);
}

#[test]
fn short_cutoff_is_flagged() {
    let out = run(&["lvalue", "--A", "1", "--cutoff", "40", "--json"]);
    assert_eq!(out.status.code(), Some(3));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!r["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn bsd_verdicts() {
    let r = json(&["bsd", "101"]);
    assert_eq!(r["results"]["status"], "verified");
    assert_eq!(r["results"]["criterion"]["verdict"], "holds");
    assert!(r["evidence"].as_array().unwrap().len() >= 3);
    let r = json(&["bsd", "7", "--numeric", "never"]);
    assert_eq!(r["results"]["status"], "not-decided");
}

#[test]
fn local_classes_and_factoring() {
    let r = json(&["localclass", "--coeffs", "1,1,0,0"]);
    assert_eq!(r["results"]["class"], "β²γ⁴δ²ε⁴");
    let r = json(&["localclass", "--coeffs", "0,1,0,0", "--at", "2"]);
    assert_eq!(r["results"]["class"], "β");
    let r = json(&["factor", "101"]);
    assert_eq!(r["results"]["primes"].as_array().unwrap().len(), 4);
    let r = json(&["factor", "25"]);
    assert_eq!(r["results"]["primes"][0]["exponent"], 8);
}

#[test]
fn reports_are_byte_stable() {
    for args in [&["selmer", "83", "--json"][..], &["lvalue", "--A", "4", "--json"], &["bsd", "1", "--json"]] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let a = run(&["selmer", "83", "--threads", "1", "--json"]);
    let b = run(&["selmer", "83", "--json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn human_output() {
    let out = run(&["selmer", "7"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("selmer\n"));
    assert!(text.contains("dimension: 2"));
    assert!(text.contains("evidence:"));
}

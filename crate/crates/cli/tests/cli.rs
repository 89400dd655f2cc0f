use std::process::{Command, Output};
use std::time::Instant;

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gsuzuki"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn count_six() {
    let v = json(&["count", "--p", "3", "--t", "1", "--n", "6"]);
    assert_eq!(v["n"], 6);
    assert_eq!(v["N"], "892");
    assert_eq!(v["maximality"], "Maximal");
}

#[test]
fn count_methods_agree() {
    for method in ["formula", "oracle", "mcguire", "decomposition"] {
        let v = json(&["count", "--p", "3", "--n", "5", "--method", method]);
        assert_eq!(v["N"], "190", "{method}");
        assert_eq!(v["method"], method);
    }
}

#[test]
fn lpoly_coefficients() {
    let v = json(&["lpoly", "--p", "3", "--t", "1"]);
    assert_eq!(v["coefficients"], serde_json::json!(["1", "6", "18", "36", "54", "54", "27"]));
}

#[test]
fn covers_rows() {
    let v = json(&["covers", "--p", "7", "--t", "1", "--n", "2", "--max-degree", "8"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let last = &rows[2];
    assert_eq!((last["degree"].as_u64(), last["genus"].as_u64()), (Some(8), Some(161)));
    assert_eq!(last["point_bound"], "400");
}

#[test]
fn covers_csv() {
    let out = run(&["covers", "--p", "7", "--n", "2", "--max-degree", "8", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text,
        "p,t,n,degree,genus,point_bound\n7,1,2,2,41,100\n7,1,2,4,81,200\n7,1,2,8,161,400\n"
    );
}

#[test]
fn covers_precondition_failure() {
    let out = run(&["covers", "--p", "3", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn jacobian_carries_note() {
    let v = json(&["jacobian", "--p", "7", "--t", "1"]);
    assert_eq!(v["order"], (2u128.pow(9) * 911u128.pow(6)).to_string());
    let note = v["note"].as_str().unwrap();
    assert!(note.contains("(Z/1822)^4") && note.contains("(Z/1822)^3"));
    let plain = json(&["jacobian", "--p", "3"]);
    assert_eq!(plain["order"], "196");
    assert!(plain.get("note").is_none());
}

#[test]
fn period_and_maximality() {
    assert_eq!(json(&["period", "--p", "7"])["period"], 28);
    let rows = json(&["maximality", "--p", "3", "--n-max", "12"]);
    let maximal: Vec<u64> = rows
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["maximality"] == "Maximal")
        .map(|r| r["n"].as_u64().unwrap())
        .collect();
    assert_eq!(maximal, vec![6]);
}

#[test]
fn verify_small_range_is_quick() {
    let start = Instant::now();
    let out = run(&["verify", "--p", "3", "--t", "1", "--n-max", "8"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(start.elapsed().as_secs() < 60);
    let rows: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(rows.as_array().unwrap().iter().all(|r| r["ok"] == true));
    assert_eq!(rows.as_array().unwrap().len(), 8);
}

#[test]
fn aut_check_small() {
    let v = json(&["aut-check", "--p", "5"]);
    assert_eq!(v["order"], 100);
    assert_eq!(v["h_order"], 4);
    assert!(v["h_generator"]["alpha"].is_array());
}

#[test]
fn gauss_and_mp() {
    let v = json(&["gauss", "--p", "11"]);
    assert_eq!(v["square"], "-11");
    assert_eq!(v["ok"], true);
    let v = json(&["mp", "--p", "5"]);
    assert_eq!(v["scaled"], serde_json::json!(["1", "5", "15", "25", "25"]));
    assert_eq!(v["factorization_ok"], true);
}

#[test]
fn argument_errors_exit_two() {
    for args in [
        vec!["count", "--p", "4", "--n", "1"],
        vec!["count", "--p", "2", "--n", "1"],
        vec!["count", "--p", "3", "--t", "0", "--n", "1"],
        vec!["count", "--p", "3"],
        vec!["count", "--p", "3", "--n", "0"],
        vec!["count", "--p", "3", "--n", "40", "--method", "oracle"],
        vec!["frobnicate"],
        vec!["count", "--p", "3", "--n", "1", "--format", "xml"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn seeded_output_is_reproducible() {
    let a = run(&["verify", "--p", "5", "--n-max", "4", "--seed", "17"]);
    let b = run(&["verify", "--p", "5", "--n-max", "4", "--seed", "17"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.status.success());
}

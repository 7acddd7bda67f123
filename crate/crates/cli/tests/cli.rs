use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torus-wrt")).args(args).output().expect("run binary")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn identity_counts_labels() {
    let v = json(&["invariant", "--N", "2", "--level", "5", "--finite-order", "id"]);
    assert_eq!(v["re"].as_f64(), Some(6.0));
    assert_eq!(v["im"].as_f64(), Some(0.0));
}

#[test]
fn level_zero_is_one() {
    let v = json(&["invariant", "--N", "3", "--level", "0", "--shear", "7"]);
    assert!((v["re"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(v["im"].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["invariant", "--level", "3"]).status.code(), Some(2));
    assert_eq!(run(&["invariant", "--level", "3", "--matrix", "2,1,1,2"]).status.code(), Some(2));
    assert_eq!(run(&["invariant", "--level", "3", "--matrix", "2,1,1,1"]).status.code(), Some(3));
    assert_eq!(run(&["invariant", "--N", "3", "--level", "3", "--shear", "2", "--framing-correction", "1"]).status.code(), Some(3));
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(2));
    let out = run(&["invariant", "--level", "3", "--matrix", "2,1,1,1"]);
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn hyperbolic_closed_is_flagged() {
    let v = json(&["invariant", "--level", "5", "--matrix", "2,1,1,1", "--method", "closed"]);
    assert!(v["note"].is_string());
    let w = json(&["invariant", "--level", "5", "--matrix", "2,1,1,1", "--method", "word"]);
    assert!((v["abs"].as_f64().unwrap() - w["abs"].as_f64().unwrap()).abs() < 1e-9);
}

#[test]
fn cs_values_for_negative_four() {
    let v = json(&["cs-values", "--b", "-4"]);
    assert_eq!(v["cs_values"], serde_json::json!(["0", "3/4"]));
}

#[test]
fn classify_reports_shear() {
    let v = json(&["classify", "--matrix", "3,-4,1,-1"]);
    assert_eq!(v["kind"], "trace2");
    assert_eq!(v["b"], 1);
}

#[test]
fn scan_header_and_svg() {
    let dir = std::env::temp_dir().join(format!("torus-wrt-svg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let svg = dir.join("plot.svg");
    let out = run(&["scan", "--shear", "2", "--kmax", "4", "--svg", svg.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("k,r,re,im,abs,arg\n"));
    assert_eq!(text.lines().count(), 6);
    assert!(!text.contains("-0.0000000000000000e0"));
    let plot = std::fs::read_to_string(&svg).unwrap();
    assert!(plot.starts_with("<svg") && plot.trim_end().ends_with("</svg>"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_single_suite() {
    let v = json(&["verify", "table"]);
    assert_eq!(v["pass"], true);
}

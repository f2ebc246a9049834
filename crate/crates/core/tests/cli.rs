use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn polyrat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyrat"))
        .args(args)
        .current_dir(fixtures())
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = polyrat(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn hilbert_of_stanley_reisner_ring() {
    let v = json(&["hilbert", "--model", "dj", "--complex", "two_points.json", "-N", "6"]);
    assert_eq!(v["hilbert"], serde_json::json!([1, 0, 2, 0, 2, 0, 2]));
}

#[test]
fn ft_model_from_datum_file() {
    let v = json(&["betti", "--model", "ft", "--complex", "tri.json", "--datum", "disc_circle.json", "-N", "5"]);
    assert_eq!(v["betti"], serde_json::json!([1, 0, 0, 0, 0, 1]));
}

#[test]
fn toric_model_and_ring_agree() {
    let ring = json(&["toric", "--fan", "hirzebruch2.json"]);
    let model = json(&["betti", "--model", "toric", "--fan", "hirzebruch2.json", "-N", "4"]);
    assert_eq!(ring["betti"], model["betti"]);
    assert_eq!(ring["ring"]["generators"].as_array().unwrap().len(), 4);
}

#[test]
fn minmodel_reports_generators() {
    let v = json(&["minmodel", "--model", "moment-angle", "--complex", "two_points.json", "-N", "5"]);
    assert_eq!(v["pi_ranks"]["3"], 1);
    assert_eq!(v["generators"][0]["name"], "w_{3,1}");
}

#[test]
fn e2_page_for_moment_angle() {
    let v = json(&["e2", "--model", "moment-angle", "--complex", "edge.json", "-N", "4"]);
    // Two circle fibres over Q[t1, t2].
    assert_eq!(v["totals"], serde_json::json!([1, 2, 3, 4, 5]));
}

#[test]
fn ses_rejects_non_maximal_rank_pair() {
    let out = polyrat(&["ses", "--model", "susuk", "--n", "3", "--k", "2", "--complex", "two_points.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("hypothesis"));
}

#[test]
fn missing_flags_are_usage_errors() {
    assert_eq!(polyrat(&["betti", "--model", "unt", "--complex", "sq.json"]).status.code(), Some(2));
    assert_eq!(polyrat(&["classify", "--complex", "sq.json"]).status.code(), Some(2));
    assert_eq!(polyrat(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn table_output_is_plain_text() {
    let out = polyrat(&["betti", "--model", "moment-angle", "--complex", "sq.json"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("betti 1 0 0 2 0 0 1"));
}

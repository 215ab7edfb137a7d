use std::path::Path;
use std::process::{Command, Output};

use colander::AnchorSet;
use serde_json::Value;

fn colander(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_colander"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

const SQRT2: &str = "1.4142135623730951";

#[test]
fn construct_writes_twenty_anchors() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("anchors.csv");
    for eps in [SQRT2, "1.41421356"] {
        let out = colander(&[
            "construct", "--radius", "0.5", "--epsilon", eps, "--side", "1.01", "--anchors", path_str(&csv),
        ]);
        assert_eq!(json(&out)["anchor_count"], 20);
        assert_eq!(AnchorSet::load(&csv, None).unwrap().len(), 20);
    }
}

#[test]
fn construct_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("a.csv");
    // R = a/2 is outside the valid range
    let out = colander(&["construct", "--radius", "0.5", "--epsilon", SQRT2, "--side", "1", "--anchors", path_str(&csv)]);
    assert_eq!(out.status.code(), Some(2));
    let out = colander(&["construct", "--radius", "0.25", "--side", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let bad = dir.path().join("missing-dir").join("a.csv");
    let out = colander(&["construct", "--radius", "0.25", "--epsilon", "0.1", "--side", "1", "--anchors", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    let out = colander(&["construct", "--radius", "0.25", "--epsilon", "0.1", "--side", "1", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_round_trip_is_identical() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("grid.csv");
    let eps = "0.14142135623730953";
    json(&colander(&["construct", "--radius", "0.25", "--epsilon", eps, "--side", "1", "--anchors", path_str(&csv)]));
    let args = ["verify", "--anchors", path_str(&csv), "--radius", "0.25", "--epsilon", eps, "--side", "1", "--method", "both"];
    let first = colander(&args);
    let report = json(&first);
    assert_eq!(report["is_colander"], true);
    assert_eq!(report["worst_pair"].as_array().unwrap().len(), 2);

    // re-save the loaded anchors and verify again: byte-identical report
    let again = dir.path().join("again.csv");
    AnchorSet::load(&csv, None).unwrap().save(&again).unwrap();
    let args2 = ["verify", "--anchors", path_str(&again), "--radius", "0.25", "--epsilon", eps, "--side", "1", "--method", "both"];
    assert_eq!(colander(&args2).stdout, first.stdout);
}

#[test]
fn verify_single_anchor_fails() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("one.csv");
    std::fs::write(&csv, "0.5,0.5\n").unwrap();
    let report = json(&colander(&[
        "verify", "--anchors", path_str(&csv), "--radius", "0.1", "--epsilon", "0.05", "--side", "1",
    ]));
    assert_eq!(report["is_colander"], false);
    assert_eq!(report["worst_signature"], serde_json::json!([]));
}

#[test]
fn missing_anchor_file_is_runtime_error() {
    let out = colander(&["verify", "--anchors", "/nonexistent/a.csv", "--radius", "0.1", "--epsilon", "0.05", "--side", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn vc_reports_three() {
    let v = json(&colander(&["vc", "--family", "all-disks", "--nmax", "5", "--trials", "200", "--seed", "7"]));
    assert_eq!(v["vc_dimension_estimate"], 3);
}

#[test]
fn vc_on_point_file() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("pts.csv");
    std::fs::write(&csv, "0,0\n1,0\n0.5,0.8\n").unwrap();
    let v = json(&colander(&["vc", "--points", path_str(&csv)]));
    assert_eq!(v["shattered"], true);
    assert_eq!(v["distinct_subsets"], 8);
}

#[test]
fn bounds_json() {
    let v = json(&colander(&["bounds", "--side", "1", "--radius", "0.1", "--epsilon", "0.01"]));
    assert_eq!(v["strong_lower"].as_f64(), Some(1.0 / (16.0 * 0.1 * 0.01)));
    assert_eq!(v["weak_lower"].as_f64(), Some(100.0));
    assert_eq!(v["uniform_anchor_estimate"]["dimensionally_suspect"], true);
}

#[test]
fn localize_point_and_signature() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("grid.csv");
    let eps = "0.14142135623730953";
    json(&colander(&["construct", "--radius", "0.25", "--epsilon", eps, "--side", "1", "--anchors", path_str(&csv)]));
    let v = json(&colander(&[
        "localize", "--anchors", path_str(&csv), "--radius", "0.25", "--epsilon", eps, "--side", "1", "--point", "0.41,0.57",
    ]));
    assert!(v["error"].as_f64().unwrap() <= 0.1415 + 0.01);
    let out = colander(&[
        "localize", "--anchors", path_str(&csv), "--radius", "0.25", "--epsilon", eps, "--side", "1", "--signature", "0,134",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn arrange_svg_is_valid_xml() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("a.csv");
    let svg = dir.path().join("a.svg");
    std::fs::write(&csv, "# three anchors\n0.3,0.3\n0.6,0.35\n0.45,0.7\n").unwrap();
    let v = json(&colander(&[
        "arrange", "--anchors", path_str(&csv), "--radius", "0.3", "--side", "1", "--svg", path_str(&svg),
    ]));
    let faces = v["face_count"].as_u64().unwrap();
    assert_eq!(v["arrangement"]["faces"].as_array().unwrap().len() as u64, faces);

    let text = std::fs::read_to_string(&svg).unwrap();
    let doc = roxmltree::Document::parse(&text).expect("well-formed XML");
    let circles = doc.descendants().filter(|n| n.has_tag_name("circle")).count();
    assert_eq!(circles, 3);
    assert_eq!(doc.root_element().tag_name().name(), "svg");
}

#[test]
fn montecarlo_csv_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("trials.csv");
    let args = [
        "montecarlo", "--radius", "1", "--side", "1", "--r-values", "4,8,16", "--trials", "5", "--seed", "3", "--csv", path_str(&csv),
    ];
    let a = colander(&args);
    let v = json(&a);
    assert!(v["fit"]["exponent"].as_f64().unwrap() > 1.0);
    let rows = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(rows.lines().next(), Some("r,seed,face_count,max_diam,mean_diam"));
    assert_eq!(rows.lines().count(), 1 + 15);

    let single = colander(&[
        "montecarlo", "--radius", "1", "--side", "1", "--r-values", "4,8,16", "--trials", "5", "--seed", "3",
    ]);
    assert_eq!(single.stdout, a.stdout);
    let threaded = Command::new(env!("CARGO_BIN_EXE_colander"))
        .args(&args)
        .env("COLANDER_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(threaded.stdout, a.stdout);
}

#[test]
fn bad_thread_count_is_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_colander"))
        .args(["bounds", "--side", "1", "--radius", "0.1", "--epsilon", "0.01"])
        .env("COLANDER_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gridscan_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("scan.json");
    let out = colander(&[
        "gridscan", "--delta", "0.125,0.0625", "--radius", "0.25", "--side", "1", "--out", path_str(&report),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["scan"].as_array().unwrap().len(), 2);
}

#[test]
fn verbose_goes_to_stderr() {
    let out = colander(&["bounds", "--side", "1", "--radius", "0.1", "--epsilon", "0.01", "--verbose"]);
    json(&out);
    assert!(!out.stderr.is_empty());
}

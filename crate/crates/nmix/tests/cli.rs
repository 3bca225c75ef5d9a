use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn nmix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nmix"))
        .arg("--quiet")
        .args(args)
        .output()
        .expect("binary runs")
}

fn with_json(args: &[&str], path: &Path) -> (i32, Value) {
    let mut all = vec!["--json", path.to_str().unwrap()];
    all.extend_from_slice(args);
    let out = nmix(&all);
    let text = std::fs::read_to_string(path).expect("report written");
    (out.status.code().unwrap(), serde_json::from_str(&text).unwrap())
}

#[test]
fn gaussian_hh() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v) = with_json(&["hh", "--etale", "q:x^2+1", "--max-degree", "4"], &dir.path().join("r.json"));
    assert_eq!(code, 0);
    assert_eq!(v["results"]["ranks"], serde_json::json!([2, 0, 0, 0]));
    assert_eq!(v["schema"], 1);
    let out = nmix(&["hh", "--etale", "q:x^2+1", "--max-degree", "4"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("(2, 0, 0, 0)"));
}

#[test]
fn cubes_over_f2() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["cubes", "--base", "f2", "--dim-cap", "2", "--ring", "q", "--max-degree", "2"];
    let out = nmix(&args);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("H0 = 1, H1 = 0"));
    let (_, v) = with_json(&args, &dir.path().join("r.json"));
    assert_eq!(v["results"]["homology_ranks"], serde_json::json!([1, 0]));
    assert_eq!(v["results"]["oracle_agree"], true);
    assert_eq!(v["complete_through"], 2);
    assert!(v["results"]["counts"][1]["raw"].as_u64().unwrap() > 0);
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["cubes", "--base", "f2", "--max-degree", "2"][..],
        &["bar", "--corpus", "gaussian"][..],
        &["hopf", "--group", "s3", "--mutations"][..],
    ] {
        let a = dir.path().join("a.json");
        let b = dir.path().join("b.json");
        with_json(args, &a);
        with_json(args, &b);
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap(), "{args:?}");
    }
}

#[test]
fn digest_tracks_input() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.json");
    let (_, a) = with_json(&["hh", "--etale", "q:x^2+1"], &p);
    let (_, b) = with_json(&["hh", "--etale", "q:x^2+2"], &p);
    let (_, c) = with_json(&["--ring", "fp:3", "hh", "--etale", "q:x^2+1"], &p);
    assert_ne!(a["input_digest"], b["input_digest"]);
    assert_ne!(a["input_digest"], c["input_digest"]);
}

#[test]
fn malformed_input_exits_two() {
    assert_eq!(nmix(&["hh", "--etale", "q:x^2+"]).status.code(), Some(2));
    assert_eq!(nmix(&["--ring", "fp:4", "hopf", "--group", "z2"]).status.code(), Some(2));
    assert_eq!(nmix(&["hopf", "--group", "q8"]).status.code(), Some(2));
    assert_eq!(nmix(&["khom", "--l", "f4", "--lp", "f8", "--n", "2"]).status.code(), Some(2));
    assert_eq!(nmix(&["hh", "--algebra", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn budget_exceeded_exits_three() {
    let out = nmix(&["--budget", "10", "cubes", "--base", "f2", "--max-degree", "2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
}

#[test]
fn orbit_from_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cat.json");
    std::fs::write(
        &path,
        r#"{
            "ring": "q",
            "labels": ["R"],
            "homs": [{"src": 0, "tgt": 0, "grade": 0, "rank": 1}],
            "comps": [{"x": 0, "y": 0, "z": 0, "i": 0, "j": 0, "table": [1]}],
            "identities": [[1]],
            "tensor": {"unit": 0, "table": [[0]]},
            "twist": {"object": [0, 1], "inverse": [0, -1]}
        }"#,
    )
    .unwrap();
    let (code, v) = with_json(&["orbit", "--input", path.to_str().unwrap()], &dir.path().join("r.json"));
    assert_eq!(code, 0);
    assert_eq!(v["results"]["hom_table"][0]["ranks"]["0"], 1);
}

#[test]
fn hopf_from_permutations_with_ses() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.toml");
    std::fs::write(&g, "name = \"Z6\"\ndegree = 6\ngenerators = [[1, 2, 3, 4, 5, 0]]\n").unwrap();
    let (code, v) = with_json(
        &["hopf", "--group-file", g.to_str().unwrap(), "--normal", "0,2,4"],
        &dir.path().join("r.json"),
    );
    assert_eq!(code, 0);
    assert_eq!(v["results"]["order"], 6);
    for k in ["injective", "surjective", "composite_trivial", "quotient_iso"] {
        assert_eq!(v["results"]["ses"][k], true, "{k}");
    }
}

#[test]
fn khom_tables() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.json");
    let (code, v) = with_json(&["khom", "--l", "f4", "--lp", "f8"], &p);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["hom"]["rank"], 1);
    let out = nmix(&["--ring", "fp:2", "khom", "--l", "fp:5:x", "--lp", "fp:5:x", "--n", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let (code, v) = with_json(
        &["--ring", "fp:2", "khom", "--l", "fp:5:x", "--lp", "fp:5:x", "--n", "1", "--relax-characteristic"],
        &p,
    );
    assert_eq!(code, 0);
    assert_eq!(v["results"]["hom"]["rank"], 1);
}

#[test]
fn selftest_passes() {
    let out = nmix(&["selftest"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

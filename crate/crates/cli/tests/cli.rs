use std::process::{Command, Output};

use serde_json::Value;

fn logterm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logterm"))
        .args(args)
        .env_remove("LOGTERM_WORKERS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn certify_cusp() {
    let out = logterm(&["certify", "--f", "x^2+y^3", "--form", "1", "--face", "auto"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let cert = &v["certificates"][0];
    assert_eq!(cert["verdict"]["kind"], "certified");
    assert_eq!(cert["verdict"]["alpha"], "-1/6");
    assert_eq!(cert["verdict"]["k"], 0);
    assert_eq!(cert["a"], "5/6");
}

#[test]
fn certify_by_vertex_list() {
    let out = logterm(&["certify", "--f", "x^5 + x^2*y^2 + y^5", "--face", "2,2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["certificates"][0]["verdict"]["alpha"], "-1/2");
    assert_eq!(v["certificates"][0]["verdict"]["k"], 1);
}

#[test]
fn newton_of_non_convenient_monomial() {
    let out = logterm(&["newton", "--f", "x*y"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["convenient"], false);
    assert_eq!(v["compact_faces"], 1);
    assert_eq!(v["newton_number"], Value::Null);
}

#[test]
fn newton_number_of_convenient_polynomial() {
    let v = json(&logterm(&["newton", "--f", "x^3 + y^4"]));
    assert_eq!(v["newton_number"], "6");
}

#[test]
fn analyze_reports_the_bound() {
    let v = json(&logterm(&["analyze", "--f", "x^2+y^3", "--form", "1", "--form", "x*y"]));
    let forms = v["forms"].as_array().unwrap();
    assert_eq!(forms.len(), 2);
    assert_eq!(forms[0]["vasilev_bound"]["alpha"], "-1/6");
    assert_eq!(forms[1]["v"], "5/3");
}

#[test]
fn parse_errors_exit_three() {
    let out = logterm(&["certify", "--f", "x^^2"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("position 2"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn invalid_input_exits_two() {
    // a constant term means f(0) ≠ 0
    let out = logterm(&["certify", "--f", "1 + x^2 + y^3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = logterm(&["suspend-check", "--f", "x^2+y^3", "--face", "99", "--form", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn suspension_check_on_cusp() {
    let out = logterm(&["suspend-check", "--f", "x^2+y^3", "--face", "2,0;0,3", "--form", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dims_equal"], true);
    assert_eq!(v["check"]["e"], 6);
    assert_eq!(v["check"]["c"], 1);
}

#[test]
fn polyhedron_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("poly.json");
    let path = path.to_str().unwrap();
    let out = logterm(&["--output", path, "newton", "--f", "x^5 + x^2*y^2 + y^5"]);
    assert_eq!(out.status.code(), Some(0));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let poly = dir.path().join("only_poly.json");
    std::fs::write(&poly, serde_json::to_string(&written["polyhedron"]).unwrap()).unwrap();
    let again = json(&logterm(&["newton", "--polyhedron", poly.to_str().unwrap()]));
    assert_eq!(again["round_trip"], true);
    assert_eq!(again["polyhedron"], written["polyhedron"]);
}

#[test]
fn same_seed_same_bytes() {
    let args = ["--seed", "11", "mellin-fit", "--f", "x^2+y^3", "--samples", "1000000", "--tol", "1"];
    let a = logterm(&args);
    let b = logterm(&args);
    assert!(a.status.code().is_some());
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn worker_count_does_not_change_results() {
    let base = ["mellin-fit", "--f", "x^2+y^3", "--samples", "1000000", "--tol", "1"];
    let one: Vec<&str> = ["--workers", "1"].iter().chain(base.iter()).copied().collect();
    let four: Vec<&str> = ["--workers", "4"].iter().chain(base.iter()).copied().collect();
    assert_eq!(logterm(&one).stdout, logterm(&four).stdout);
}

#[test]
fn mellin_fit_dumps_curve() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("curve.csv");
    let out = logterm(&[
        "mellin-fit",
        "--f",
        "x^2+y^3",
        "--samples",
        "1000000",
        "--tol",
        "1",
        "--grid",
        "-0.8:-0.6:5",
        "--dump-curve",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.code().is_some());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 6, "{text}");
}

#[test]
fn grid_below_the_trivial_pole_is_rejected() {
    let out = logterm(&["mellin-fit", "--f", "x^2+y^3", "--samples", "100000", "--grid", "-1.2:-0.9:4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("above"));
}

#[test]
fn divergent_grid_exits_four() {
    let out = logterm(&[
        "mellin-fit",
        "--f",
        "x^2+y^3",
        "--samples",
        "100000",
        "--grid",
        "-1.2:-0.9:4",
        "--model",
        "power-law",
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("divergence"));
}

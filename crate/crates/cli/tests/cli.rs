use std::process::{Command, Output};

use alcove_core::harness::Format;
use alcove_core::ExactRational;
use alcove_kit::{Cli, Command as Cmd};
use clap::Parser;

fn kit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alcove-kit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn classify_defaults() {
    let cli = Cli::try_parse_from(["alcove-kit", "classify", "--n", "7"]).unwrap();
    assert_eq!(cli.command, Cmd::Classify { n: 7, full_range: false });
    assert_eq!(cli.global.tol, 1e-10);
    assert_eq!(cli.global.seed, 0);
    assert_eq!(cli.global.format, Format::Text);
    assert!(!cli.global.stretch);
}

#[test]
fn polytope_and_verify_parse() {
    let cli = Cli::try_parse_from(["alcove-kit", "polytope", "--n", "6", "--x", "7/24", "--format", "json"]).unwrap();
    assert_eq!(cli.global.format, Format::Json);
    assert!(matches!(cli.command, Cmd::Polytope { n: 6, x: Some(ref x), .. } if *x == ExactRational::new(7, 24)));
    let cli = Cli::try_parse_from(["alcove-kit", "verify", "--suite", "simplest-type-ii", "--n", "8"]).unwrap();
    assert_eq!(cli.command, Cmd::Verify { suite: Some("simplest-type-ii".into()), n: Some(8), samples: 100 });
}

#[test]
fn malformed_rationals_name_the_flag() {
    for bad in ["1/0", "abc"] {
        let err = Cli::try_parse_from(["alcove-kit", "polytope", "--n", "6", "--x", bad]).unwrap_err();
        assert!(err.to_string().contains("--x"), "{err}");
        let o = kit(&["polytope", "--n", "6", "--x", bad]);
        assert_eq!(o.status.code(), Some(2));
    }
}

#[test]
fn unknown_flag_and_suite_are_usage_errors() {
    let o = kit(&["classify", "--n", "7", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(kit(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn classify_lines_and_summary() {
    let o = kit(&["classify", "--n", "4"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines, ["0 1/4 I 0", "1/4 1/3 I 1", "1/3 1/2 II 1", "total 3: 2 type I, 1 type II"]);
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&kit(&["classify", "--n", "4", "--format", "json"]))).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 3);
    assert_eq!(json[2]["type"], "II");
}

#[test]
fn polytope_json_shape() {
    let o = kit(&["polytope", "--n", "6", "--x", "7/24", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["face_vector"], serde_json::json!([18, 57, 74, 45, 12]));
    assert_eq!(v["k"], 1);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 18);
    assert_eq!(v["facets"].as_array().unwrap().len(), 12);
    assert_eq!(v["classes"].as_array().unwrap().len(), 3);
    let csv = stdout(&kit(&["polytope", "--n", "6", "--x", "7/24", "--format", "csv"]));
    assert_eq!(csv.lines().count(), 19);
}

#[test]
fn polytope_symbolic_and_check() {
    let o = kit(&["polytope", "--n", "4", "--symbolic", "--interval", "1/3,1/2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("(0, x, 1-2x, x) orbit 4 singular"), "{}", stdout(&o));
    assert!(kit(&["polytope", "--n", "7", "--x", "9/50", "--check", "simplest-type-ii"]).status.success());
    assert_eq!(kit(&["polytope", "--n", "4", "--symbolic", "--interval", "1/4,1/2"]).status.code(), Some(2));
}

#[test]
fn spectral_outputs() {
    let o = kit(&["spectral", "--n", "4", "--x", "5/12", "--xi", "0,5/12,1/6,5/12", "--op", "u", "--format", "json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let re = v["value"]["components"][2]["re"].as_f64().unwrap();
    assert!((re - 0.6501151673437363).abs() < 1e-12);
    assert_eq!(v["value"]["components"][0]["im"], 0.0);
    let o = kit(&["spectral", "--n", "4", "--x", "5/12", "--xi", "1/4,1/4,1/4,1/4", "--op", "z"]);
    assert!(o.status.success());
    // Not a point of the polytope.
    assert_eq!(kit(&["spectral", "--n", "4", "--x", "5/12", "--xi", "1/2,1/2,0,0"]).status.code(), Some(2));
}

#[test]
fn fiber_report_and_suite() {
    let o = kit(&["fiber", "--n", "4", "--x", "5/12", "--vertex", "0,5/12,1/6,5/12", "--suite", "20"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("type S^3"), "{out}");
    assert!(out.contains("orbit suite (20 samples, seed 0): pass"), "{out}");
}

#[test]
fn dynamics_checks() {
    for check in ["lax", "cross-section", "trace", "flow"] {
        let o = kit(&["dynamics", "--n", "5", "--x", "7/24", "--check", check, "--samples", "20", "--tol", "1e-9"]);
        assert!(o.status.success(), "{check}: {}", stdout(&o));
    }
    let o = kit(&["dynamics", "--n", "4", "--x", "5/12", "--check", "fiber-flow", "--samples", "3", "--tol", "1e-7"]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn verify_exit_codes() {
    let o = kit(&["verify", "--suite", "face-vectors", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("suite,id,n,interval,expected,actual,status,source\n"));
    assert_eq!(out.lines().count(), 10);
    // The reference active-constraint count for the double-zero vertex does
    // not hold, so this suite fails.
    assert_eq!(kit(&["verify", "--suite", "double-zero-vertex"]).status.code(), Some(1));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["verify", "--suite", "dynamics", "--seed", "7", "--samples", "10", "--format", "json"];
    let (a, b) = (kit(&args), kit(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "alcove-kit/1");
    assert_eq!(v["seed"], 7);
}

use std::path::PathBuf;
use std::process::Command;

use multilog::ArrangementFile;
use multilog_core::verify::VerificationReport;
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn multilog(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_multilog")).args(args).output().expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).expect("utf-8 output"))
}

fn with_file(args: &[&str], file: &str) -> (i32, String) {
    let path = data(file);
    let mut all = args.to_vec();
    all.push(path.to_str().unwrap());
    multilog(&all)
}

#[test]
fn verify_example_reports_condition_two() {
    let (code, out) = with_file(&["--format", "json", "verify"], "example52.json");
    assert_eq!(code, 1);
    let report: VerificationReport = serde_json::from_str(&out).unwrap();
    assert!(!report.hypothesis_holds);
    assert!(report.theorem_consistent);
    let origin = report.nodes.iter().find(|n| n.dim == 0).unwrap();
    assert_eq!(origin.condition_value, "2");
    assert!(!origin.formula_holds);
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", out);
}

#[test]
fn verify_text_mentions_failure() {
    let (code, out) = with_file(&["verify"], "example52.json");
    assert_eq!(code, 1);
    assert!(out.contains("Ψ(R•,1,1) = 2"));
    assert!(out.contains("formula fails"));
}

#[test]
fn verify_axes_passes_and_reports_seed() {
    let (code, out) = with_file(&["--format", "json", "verify"], "axes3.json");
    assert_eq!(code, 0);
    let report: VerificationReport = serde_json::from_str(&out).unwrap();
    assert_eq!(report.seed, Some(1));
    assert!(report.hypothesis_holds && report.formula_verified());
}

#[test]
fn charpoly_axes() {
    let (code, out) = with_file(&["charpoly"], "axes3.json");
    assert_eq!(code, 0);
    assert_eq!(out, "t^3 - 3*t + 2\n");
    let (_, json) = with_file(&["--format", "json", "charpoly"], "axes3.json");
    let v: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["chi"], serde_json::json!([2, -3, 0, 1]));
}

#[test]
fn lattice_of_empty_arrangement() {
    let (code, out) = with_file(&["--format", "json", "lattice"], "empty.json");
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let nodes = v["nodes"].as_array().unwrap();
    assert_eq!(nodes.len(), 1);
    assert_eq!(nodes[0]["dim"], 3);
    assert_eq!(nodes[0]["mobius"], 1);
    assert_eq!(with_file(&["charpoly"], "empty.json").1, "t^3\n");
}

#[test]
fn lattice_of_example() {
    let (_, out) = with_file(&["--format", "json", "lattice"], "example52.json");
    let v: Value = serde_json::from_str(&out).unwrap();
    let mobius: Vec<i64> = v["nodes"].as_array().unwrap().iter().map(|n| n["mobius"].as_i64().unwrap()).collect();
    assert_eq!(mobius, vec![1, -1, -1, 1]);
}

#[test]
fn build_ci_is_deterministic() {
    let first = with_file(&["--format", "json", "build-ci"], "axes3.json");
    let second = with_file(&["--format", "json", "build-ci"], "axes3.json");
    assert_eq!(first, second);
    assert_eq!(first.0, 0);
    let v: Value = serde_json::from_str(&first.1).unwrap();
    assert_eq!(v["degrees"], serde_json::json!([3, 3]));
    assert_eq!(v["seed"], 1);
    let other = with_file(&["--format", "json", "--seed", "7", "build-ci"], "axes3.json");
    let w: Value = serde_json::from_str(&other.1).unwrap();
    assert_eq!(w["seed"], 7);
}

#[test]
fn logforms_betti_output() {
    let (code, out) = with_file(&["logforms", "--q", "4"], "example52.json");
    assert_eq!(code, 0);
    assert!(out.contains("resolution: Ω^4 <- S(2)^4 <- S(1)^4 <- S(0)"), "{out}");
}

#[test]
fn psi_of_example() {
    let (code, out) = with_file(&["--format", "json", "psi"], "example52.json");
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["log_forms_at_1"], serde_json::json!([0, 0, 2, 0, 1]));
    assert_eq!(v["condition_value"], 2);
}

#[test]
fn rejected_ci_exits_with_input_code() {
    let dir = std::env::temp_dir().join(format!("multilog-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad_ci.json");
    std::fs::write(
        &path,
        r#"{"ambient_dimension": 2, "variables": ["x", "y"],
            "subspaces": [{"equations": [[1, 0]]}], "ci": ["x^2"]}"#,
    )
    .unwrap();
    let (code, out) = multilog(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains("rejected"), "{out}");
    let (code, _) = multilog(&["build-ci", path.to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn missing_file_is_an_input_error() {
    let (code, out) = multilog(&["charpoly", "/nonexistent/arrangement.json"]);
    assert_eq!(code, 2);
    assert!(out.starts_with("error:"));
}

#[test]
fn parse_errors_carry_positions() {
    let err = ArrangementFile::from_json("{\n  \"ambient_dimension\": 2,\n  \"subspaces\": [{\"equations\": [[\"1/0\", 1]]}]\n}")
        .unwrap_err()
        .to_string();
    assert!(err.contains("line 3"), "{err}");
    let err = ArrangementFile::from_json("{\"ambient_dimension\": 2, \"subspace\": []}").unwrap_err().to_string();
    assert!(err.contains("unknown field"), "{err}");
}

#[test]
fn rational_coefficients_accepted() {
    let f = ArrangementFile::from_json(
        r#"{"ambient_dimension": 2, "subspaces": [{"equations": [["3/2", -1]]}, {"equations": [[0, "2"]]}]}"#,
    )
    .unwrap();
    let a = f.arrangement().unwrap();
    assert_eq!(a.len(), 2);
    assert_eq!(a.characteristic_polynomial().to_string(), "t^2 - 2*t + 1");
}

#[test]
fn wrong_row_length_is_reported() {
    let f = ArrangementFile::from_json(
        r#"{"ambient_dimension": 3, "subspaces": [{"name": "L", "equations": [[1, 0]]}]}"#,
    )
    .unwrap();
    let err = f.arrangement().unwrap_err().to_string();
    assert!(err.contains("subspace L, row 1"), "{err}");
}

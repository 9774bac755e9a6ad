//! End-to-end tests of the `segre` binary: exit codes, report contents,
//! determinism, and the merge behavior of `report`.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn segre(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_segre"))
        .args(args)
        .env_remove("SEGRE_TWIST_SEED")
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> Value {
    assert!(
        !output.stdout.is_empty(),
        "expected a report on stdout, stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("process exited")
}

#[test]
fn validate_twist_accepts_the_family_fixtures() {
    for name in ["unipotent.json", "flip.json", "diagonal.json"] {
        let out = segre(&["validate-twist", "--input", fixture(name).to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{name}");
        let doc = stdout_json(&out);
        assert_eq!(doc["blockConditions"], Value::Bool(true), "{name}");
        assert_eq!(doc["descentPass"], Value::Bool(true), "{name}");
    }
}

#[test]
fn validate_twist_rejects_noncommuting_blocks() {
    let out = segre(&["validate-twist", "--input", fixture("bad_cq.json").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let doc = stdout_json(&out);
    assert_eq!(doc["pass"], Value::Bool(false));
    assert_eq!(doc["blockConditions"], Value::Bool(false));
}

#[test]
fn segre_reports_the_frozen_dimension_table() {
    let out = segre(&["segre", "--input", fixture("unipotent.json").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    let dims: Vec<u64> = doc["hilbert"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(dims, vec![1, 4, 9, 16, 25, 36, 49]);
    assert_eq!(doc["presentation"]["relations"].as_array().unwrap().len(), 7);
    assert_eq!(doc["crossValidated"], Value::Bool(true));
    assert_eq!(doc["window"]["pass"], Value::Bool(true));
}

#[test]
fn segre_flags_a_corrupted_candidate() {
    let out = segre(&["segre", "--input", fixture("corrupted.json").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let doc = stdout_json(&out);
    assert_eq!(doc["crossValidated"], Value::Bool(false));
    assert_eq!(doc["pass"], Value::Bool(false));
}

#[test]
fn dual_emits_nine_relations_with_flat_tail() {
    let out = segre(&["dual", "--input", fixture("unipotent.json").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    let dims: Vec<u64> = doc["hilbert"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(dims, vec![1, 4, 7, 8, 8, 8, 8]);
    assert_eq!(doc["presentation"]["relations"].as_array().unwrap().len(), 9);
    assert_eq!(doc["seriesPairing"], Value::Bool(true));
}

#[test]
fn normal_certificate_reports_the_commutation_matrix() {
    let out = segre(&["normal", "--input", fixture("unipotent.json").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    let cert = &doc["certificate"];
    assert_eq!(cert["regular_window"], Value::Bool(true));
    let expected: Value = serde_json::json!([
        ["1", "0", "0", "0"],
        ["2", "1", "0", "0"],
        ["0", "0", "1", "0"],
        ["0", "0", "2", "1"]
    ]);
    assert_eq!(cert["nu1"], expected);
}

#[test]
fn normal_rejects_a_non_normal_element() {
    let out = segre(&["normal", "--input", fixture("nonnormal.json").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("not normal"), "stderr: {stderr}");
}

#[test]
fn clifford_emits_the_stable_quotient() {
    let out = segre(&["clifford", "--input", fixture("unipotent.json").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["stabilization"]["i0"], Value::from(2));
    let dims: Vec<u64> = doc["stabilization"]["dims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(dims, vec![1, 7, 8, 8]);
    assert_eq!(doc["algebra"]["dim"], Value::from(8));
}

#[test]
fn analyze_verifies_the_assignment() {
    let out = segre(&[
        "analyze",
        "--input",
        fixture("unipotent.json").to_str().unwrap(),
        "--assignment",
        fixture("rho.json").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["semisimple"], Value::Bool(true));
    assert_eq!(doc["center_dim"], Value::from(2));
    assert_eq!(doc["blocks"], serde_json::json!([2, 2]));
    assert_eq!(doc["iso_verified"], Value::Bool(true));
}

#[test]
fn analyze_without_assignment_leaves_the_verdict_open() {
    let out = segre(&["analyze", "--input", fixture("flip.json").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["blocks"], serde_json::json!([2, 2]));
    assert_eq!(doc["iso_verified"], Value::Null);
}

#[test]
fn report_merges_all_stages_and_tolerates_gaps() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture("unipotent.json");
    let input = input.to_str().unwrap();
    for stage in ["validate-twist", "segre", "dual", "normal", "clifford"] {
        let path = dir.path().join(format!("{stage}.json"));
        let out = segre(&["--", stage, "--input", input, "--output", path.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "stage {stage}");
    }
    let analyze_path = dir.path().join("analyze.json");
    let out = segre(&[
        "analyze",
        "--input",
        input,
        "--assignment",
        fixture("rho.json").to_str().unwrap(),
        "--output",
        analyze_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);

    let out = segre(&["report", "--input", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    for key in [
        "twistValidation",
        "productRelations",
        "densityWindow",
        "koszulDual",
        "normalElement",
        "cliffordClassification",
        "structureAnalysis",
    ] {
        assert_eq!(doc["summary"][key], Value::from("pass"), "summary key {key}");
    }
    assert_eq!(doc["missing"], serde_json::json!([]));
    assert_eq!(doc["maxDegreeConflict"], Value::Bool(false));

    std::fs::remove_file(dir.path().join("clifford.json")).unwrap();
    let out = segre(&["report", "--input", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["summary"]["cliffordClassification"], Value::from("absent"));
    assert_eq!(doc["missing"], serde_json::json!(["clifford"]));
}

#[test]
fn report_flags_conflicting_degree_horizons() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture("unipotent.json");
    let input = input.to_str().unwrap();
    let segre_path = dir.path().join("segre.json");
    let out = segre(&["segre", "--input", input, "--output", segre_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let dual_path = dir.path().join("dual.json");
    let out = segre(&[
        "dual",
        "--input",
        input,
        "--max-degree",
        "5",
        "--output",
        dual_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let out = segre(&["report", "--input", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["maxDegreeConflict"], Value::Bool(true));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for cmd in ["segre", "normal", "clifford"] {
        let first = segre(&[cmd, "--input", fixture("unipotent.json").to_str().unwrap()]);
        let second = segre(&[cmd, "--input", fixture("unipotent.json").to_str().unwrap()]);
        assert_eq!(code(&first), 0);
        assert_eq!(first.stdout, second.stdout, "command {cmd}");
    }
}

#[test]
fn input_and_config_errors_exit_one() {
    let out = segre(&["segre", "--input", "/nonexistent/input.json"]);
    assert_eq!(code(&out), 1);

    let out = segre(&[
        "segre",
        "--input",
        fixture("unipotent.json").to_str().unwrap(),
        "--max-degree",
        "1",
    ]);
    assert_eq!(code(&out), 1);

    let dir = tempfile::tempdir().unwrap();
    let mangled = dir.path().join("mangled.json");
    std::fs::write(&mangled, "{ not json").unwrap();
    let out = segre(&["segre", "--input", mangled.to_str().unwrap()]);
    assert_eq!(code(&out), 1);

    let out = Command::new(env!("CARGO_BIN_EXE_segre"))
        .args(["analyze", "--input", fixture("unipotent.json").to_str().unwrap()])
        .env("SEGRE_TWIST_SEED", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
}

#[test]
fn seed_override_still_splits_the_quotient() {
    let out = Command::new(env!("CARGO_BIN_EXE_segre"))
        .args(["analyze", "--input", fixture("unipotent.json").to_str().unwrap()])
        .env("SEGRE_TWIST_SEED", "123")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["blocks"], serde_json::json!([2, 2]));
}

#[test]
fn text_format_renders_summary_lines() {
    let out = segre(&[
        "normal",
        "--input",
        fixture("unipotent.json").to_str().unwrap(),
        "--format",
        "text",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("pass: true"), "{text}");
    assert!(text.contains("certificate:"), "{text}");
}

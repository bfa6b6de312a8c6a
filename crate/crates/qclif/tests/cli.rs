//! End-to-end tests of the qclif binary: flags, exit codes, and the JSON
//! output schemas.

use std::path::Path;
use std::process::{Command, Output};

fn qclif(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qclif"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_witt_suite_exits_zero() {
    let out = qclif(&["verify", "--witt", "--n", "4"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PASS"));
}

#[test]
fn verify_structures_json_schema() {
    let out = qclif(&["verify", "--structures", "--p", "2", "--format", "json"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["passed"], serde_json::json!(true));
    let suites = doc["suites"].as_array().unwrap();
    assert!(!suites.is_empty());
    for suite in suites {
        assert!(suite["name"].is_string());
        assert!(suite["checks"].is_array());
        for check in suite["checks"].as_array().unwrap() {
            assert!(check["name"].is_string());
            assert!(check["pass"].is_boolean());
        }
    }
}

#[test]
fn cells_json_schema() {
    let out = qclif(&["cells", "--p", "2", "--format", "json"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["p"], serde_json::json!(2));
    let cells = doc["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 6);
    let dims: Vec<(u64, u64, u64)> = cells
        .iter()
        .map(|c| {
            (
                c["r"].as_u64().unwrap(),
                c["s"].as_u64().unwrap(),
                c["dim"].as_u64().unwrap(),
            )
        })
        .collect();
    assert!(dims.contains(&(2, 2, 5)));
    assert!(dims.contains(&(4, 0, 1)));
    for c in cells {
        assert_eq!(c["basis"].as_array().unwrap().len(), c["dim"].as_u64().unwrap() as usize);
    }
    let alphas = doc["alphas"].as_array().unwrap();
    assert!(alphas
        .iter()
        .any(|a| a["r"] == 0 && a["k"] == 0 && a["value"] == "2"));
}

#[test]
fn system_case_b_divergence_line() {
    let out = qclif(&["system", "--p", "2", "--r", "1", "--s", "1", "--op", "dzd"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(
        text.contains("d/dz̄1 phi_1 + d/dz̄2 phi_2 + d/dz̄3 phi_3 + d/dz̄4 phi_4 = 0"),
        "{text}"
    );
}

#[test]
fn system_json_and_latex_forms() {
    let out = qclif(&[
        "system", "--p", "2", "--r", "3", "--s", "1", "--op", "dz", "--format", "json",
    ]);
    assert!(out.status.success());
    let docs = stdout_json(&out);
    let system = &docs.as_array().unwrap()[0];
    assert_eq!(system["r"], serde_json::json!(3));
    assert_eq!(system["unknowns"].as_array().unwrap().len(), 4);
    assert_eq!(system["equations"].as_array().unwrap().len(), 1);

    let out = qclif(&[
        "system", "--p", "2", "--r", "1", "--s", "1", "--op", "dzj", "--format", "latex",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("\\partial_{z_"), "{text}");
    assert!(text.contains("\\varphi_"), "{text}");
}

#[test]
fn system_split_flag() {
    let out = qclif(&[
        "system", "--p", "2", "--r", "1", "--s", "1", "--op", "dz", "--split",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("(dz)+"), "{text}");
    assert!(text.contains("(dz)-"), "{text}");
}

#[test]
fn check_shipped_field_is_q_monogenic() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/fields/qmon_b.json");
    let out = qclif(&["check", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = stdout_json(&out);
    assert_eq!(doc["q_monogenic"], serde_json::json!(true));
    assert_eq!(doc["monogenic"], serde_json::json!(true));
    assert_eq!(doc["per_op_residual_is_zero"]["dzj"], serde_json::json!(true));
}

#[test]
fn check_with_euclid_ops_filter() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/fields/qmon_b.json");
    let out = qclif(&["check", path.to_str().unwrap(), "--ops", "euclid"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    let residuals = doc["per_op_residual_is_zero"].as_object().unwrap();
    assert_eq!(residuals.len(), 4);
    assert!(residuals.contains_key("d"));
    assert!(residuals.contains_key("dK"));
}

#[test]
fn bad_flags_exit_two() {
    let out = qclif(&["system", "--p", "2", "--r", "1", "--s", "1", "--op", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qclif(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_field_file_exit_two() {
    let out = qclif(&["check", "/nonexistent/field.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_cell_is_an_error() {
    let out = qclif(&["system", "--p", "2", "--r", "1", "--s", "0", "--op", "dz"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("no cell"), "{err}");
}

#[test]
fn degree_cap_env_guards_verification() {
    let out = Command::new(env!("CARGO_BIN_EXE_qclif"))
        .args(["verify", "--witt", "--n", "2", "--degree", "9"])
        .env("QCLIF_MAX_DEGREE", "3")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("exceeds the configured cap"), "{err}");
}

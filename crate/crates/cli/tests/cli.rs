use std::process::{Command, Output};

use serde_json::Value;

fn moddiag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moddiag")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = moddiag(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn code(args: &[&str]) -> i32 {
    moddiag(args).status.code().expect("exit code")
}

#[test]
fn coeffs_json() {
    let v = json(&["coeffs", "--k", "2", "--n", "7"]);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"], "coeffs");
    let c = v["results"]["coefficients"].as_array().unwrap();
    assert_eq!(c.len(), 8);
    assert_eq!(c[6], "1");
    assert_eq!(c[7], "2");
    let v = json(&["coeffs", "--k", "3", "--n", "0"]);
    assert_eq!(v["results"]["coefficients"], serde_json::json!(["1"]));
}

#[test]
fn envelope_key_order() {
    let out = moddiag(&["coeffs", "--k", "2", "--n", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let pos = |key: &str| text.find(&format!("\"{key}\"")).unwrap();
    assert!(pos("schema_version") < pos("command"));
    assert!(pos("command") < pos("parameters"));
    assert!(pos("parameters") < pos("results"));
}

#[test]
fn coeffs_csv() {
    let out = moddiag(&["coeffs", "--k", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains('\r'));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,Q_k_n");
    assert_eq!(lines[8], "7,2");
    assert_eq!(lines.len(), 22);
}

#[test]
fn table2_rows() {
    let v = json(&["table2", "--digits", "4"]);
    let rows = v["results"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 7);
    assert_eq!(rows[0]["k"], 3);
    assert_eq!(rows[0]["growth_rate"], "2.5410");
    assert_eq!(rows[5]["growth_rate"], "4.3087");
    let v = json(&["table2", "--digits", "2"]);
    assert_eq!(v["results"]["rows"][0]["growth_rate"], "2.54");
    assert_eq!(code(&["table2", "--digits", "0"]), 1);
    assert_eq!(code(&["table2", "--digits", "11"]), 1);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
    assert_eq!(code(&["coeffs", "--help"]), 0);
    assert_eq!(code(&[]), 1);
    assert_eq!(code(&["coeffs"]), 1);
    assert_eq!(code(&["coeffs", "--k", "1"]), 1);
    assert_eq!(code(&["coeffs", "--k", "10"]), 1);
    assert_eq!(code(&["coeffs", "--k", "2", "--format", "xml"]), 1);
    assert_eq!(code(&["coeffs", "-k", "2"]), 1);
    assert_eq!(code(&["asympt", "--k", "3", "--tol", "-1"]), 1);
    assert_eq!(code(&["nonsense"]), 1);
}

#[test]
fn determinism() {
    for args in [&["coeffs", "--k", "4", "--n", "30"][..], &["table2"], &["shapes", "--k", "3", "--s", "5"]] {
        assert_eq!(moddiag(args).stdout, moddiag(args).stdout, "{args:?}");
    }
}

#[test]
fn oracle_and_shapes_agree() {
    let v = json(&["oracle", "--k", "2", "--n", "10"]);
    assert_eq!(v["results"]["all_match"], true);
    let v = json(&["shapes", "--k", "3", "--s", "4"]);
    assert_eq!(v["results"]["oracle_checked"], true);
    assert_eq!(v["results"]["all_match"], true);
    let v = json(&["shapes", "--k", "2", "--s", "4"]);
    assert_eq!(v["results"]["markers"], "s,u1");
}

#[test]
fn table1_and_remark() {
    let v = json(&["table1-check"]);
    assert_eq!(v["results"]["all_passed"], true);
    let v = json(&["remark", "--n", "20"]);
    assert_eq!(v["results"]["first_mismatch"], 8);
    let v = json(&["remark", "--n", "6"]);
    assert!(v["results"]["first_mismatch"].is_null());
}

#[test]
fn asympt_reports_tolerances() {
    let v = json(&["asympt", "--k", "2", "--n", "200", "--tol", "1/1000000000"]);
    let r = &v["results"];
    assert_eq!(r["growth_rate"], "1.8489");
    assert_eq!(r["theta_derivative_nonzero"], true);
    assert_eq!(r["dominant_unique_heuristic"]["certified"], false);
    for key in ["gamma", "fitted_exponent", "fitted_constant"] {
        assert!(r[key]["tolerance"].is_number(), "{key}");
    }
    assert!(r["gamma_lo"].is_string());
}

#[test]
fn selftest_quick_and_mutation() {
    let v = json(&["selftest"]);
    assert_eq!(v["results"]["all_passed"], true);
    let out = moddiag(&["selftest", "--mutate", "sigma1"]);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["failed"], serde_json::json!(["verify_sigma_identity"]));
}

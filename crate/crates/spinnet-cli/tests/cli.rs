//! End-to-end tests of the command-line surface: output schemas, the
//! exit-code contract, and byte-for-byte determinism.

use std::process::{Command, Output};

fn spinnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinnet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(args: &[&str]) -> serde_json::Value {
    let out = spinnet(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is valid JSON")
}

#[test]
fn qint_schemas() {
    let generic = stdout_json(&["qint", "3", "--generic"]);
    assert_eq!(generic["coeffs"], serde_json::json!([[-4, "1"], [0, "1"], [4, "1"]]));
    let numeric = stdout_json(&["qint", "2", "--r", "5"]);
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    assert!((numeric["value"][0].as_f64().unwrap() - phi).abs() < 1e-12);
}

#[test]
fn theta_and_tet_schemas() {
    let theta = stdout_json(&["theta", "1", "1", "2", "--generic"]);
    assert!(theta["num"]["coeffs"].is_array());
    assert!(theta["den"]["coeffs"].is_array());
    let tet = stdout_json(&["tet", "1", "1", "0", "1", "1", "0", "--generic"]);
    // the collapsed tetrahedron is the loop value d = -A^2 - A^{-2}
    assert_eq!(tet["num"]["coeffs"], serde_json::json!([[-2, "-1"], [2, "-1"]]));
}

#[test]
fn fmatrix_json_and_csv() {
    let m = stdout_json(&["fmatrix", "2", "2", "2", "2", "--r", "5"]);
    assert_eq!(m["rows"], serde_json::json!([0, 2]));
    assert_eq!(m["cols"], serde_json::json!([0, 2]));
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let entries = m["entries"].as_array().unwrap();
    assert!((entries[0][0].as_f64().unwrap() - 1.0 / phi).abs() < 1e-12);
    assert!((entries[0][1].as_f64().unwrap() - 1.0 / phi.sqrt()).abs() < 1e-12);
    assert!((entries[1][1].as_f64().unwrap() + 1.0 / phi).abs() < 1e-12);

    let csv = spinnet(&["fmatrix", "2", "2", "2", "2", "--r", "5", "--csv"]);
    assert!(csv.status.success());
    let text = String::from_utf8(csv.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "0,2");
    assert_eq!(lines.count(), 2);
}

#[test]
fn basis_and_compile_schemas() {
    let basis = stdout_json(&["basis", "3", "2", "2", "--r", "5"]);
    assert_eq!(basis["dim"], 2);
    assert_eq!(basis["paths"], serde_json::json!([[0, 2], [2, 2]]));

    let compiled = stdout_json(&["compile", "3", "2", "2", "--word", "1,2,1", "--r", "5"]);
    let matrix = compiled["matrix"].as_array().unwrap();
    assert_eq!(matrix.len(), 2);
    assert_eq!(matrix[0].as_array().unwrap().len(), 2);
    // entries are [re, im] pairs
    assert_eq!(matrix[0][0].as_array().unwrap().len(), 2);

    // the braid relation at the output level: "1,2,1" == "2,1,2"
    let other = stdout_json(&["compile", "3", "2", "2", "--word", "2,1,2", "--r", "5"]);
    for i in 0..2 {
        for j in 0..2 {
            for part in 0..2 {
                let a = compiled["matrix"][i][j][part].as_f64().unwrap();
                let b = other["matrix"][i][j][part].as_f64().unwrap();
                assert!((a - b).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn bracket_trefoil() {
    let v = stdout_json(&["bracket", "--word", "-1,-1,-1", "--generic"]);
    assert_eq!(v["strands"], 2);
    assert_eq!(
        v["normalized"]["num"]["coeffs"],
        serde_json::json!([[-7, "1"], [-3, "-1"], [5, "-1"]])
    );
}

#[test]
fn rphase_schema() {
    let rows = stdout_json(&["rphase", "1", "1", "--r", "4"]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["c"], 0);
    let phase = rows[0]["phase"].as_array().unwrap();
    let norm = (phase[0].as_f64().unwrap().powi(2) + phase[1].as_f64().unwrap().powi(2)).sqrt();
    assert!((norm - 1.0).abs() < 1e-12);
}

#[test]
fn exit_code_contract() {
    // success
    let ok = spinnet(&["check", "orthogonality", "--r", "4"]);
    assert_eq!(ok.status.code(), Some(0));
    // bad input
    let bad = spinnet(&["theta", "1", "1", "1", "--generic"]);
    assert_eq!(bad.status.code(), Some(1));
    let missing = spinnet(&["qint", "3"]);
    assert_eq!(missing.status.code(), Some(1));
    let zero_letter = spinnet(&["bracket", "--word", "1,0,2", "--generic"]);
    assert_eq!(zero_letter.status.code(), Some(1));
    // a failed check: tolerance tighter than machine precision must trip
    let trip = spinnet(&["check", "orthogonality", "--r", "5", "--tol", "1e-20"]);
    assert_eq!(trip.status.code(), Some(2));
}

#[test]
fn check_report_schema() {
    let out = spinnet(&["check", "pentagon", "--r", "4", "--max-label", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let entries: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let entries = entries.as_array().unwrap();
    assert!(!entries.is_empty());
    for e in entries {
        assert!(e["check"].is_string());
        assert!(e["labels"].is_array());
        assert!(e["deviation"].is_number());
    }
}

#[test]
fn deterministic_output() {
    for args in [
        vec!["fmatrix", "2", "2", "2", "2", "--r", "5"],
        vec!["bracket", "--word", "1,-2,1", "--generic"],
        vec!["compile", "3", "1", "1", "--word", "1,2", "--r", "7"],
    ] {
        let first = spinnet(&args);
        let second = spinnet(&args);
        assert_eq!(first.stdout, second.stdout, "nondeterministic output for {args:?}");
    }
}

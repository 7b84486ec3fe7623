use std::process::{Command, Output};

fn qbell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbell"))
        .args(args)
        .env_remove("QBELL_TRUNCATION")
        .output()
        .unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn measures_from_alpha() {
    let out = qbell(&["measures", "--alpha", "1", "--index", "2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert!((v["kappa"].as_f64().unwrap() - (-2.0f64).exp()).abs() < 1e-15);
    assert!((v["entropy"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((v["h"].as_f64().unwrap() - 0.713672670194037).abs() < 1e-14);
}

#[test]
fn measures_rejects_unit_overlap() {
    let out = qbell(&["measures", "--kappa", "1", "--index", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"].as_str().unwrap().contains("overlap"));
}

#[test]
fn measures_requires_a_parameter() {
    assert_eq!(qbell(&["measures", "--index", "1"]).status.code(), Some(2));
}

#[test]
fn werner_reports_fraction() {
    let out = qbell(&["werner", "--fidelity", "0.8", "--kappa", "0.3"]);
    assert!(out.status.success());
    let v = json(&out);
    let eig: Vec<f64> = v["eigenvalues"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert_eq!(eig.len(), 4);
    assert!((eig.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    assert!(v["f_w"].as_f64().unwrap() >= 0.8 - 1e-12);
}

#[test]
fn decohere_csv_to_stdout() {
    let out = qbell(&["decohere", "--alpha-min", "0.5", "--alpha-max", "1", "--steps", "3", "--etas", "0.9,0.1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "alpha,eta,f,beta_star,eof_lower_bound");
    assert_eq!(lines.len(), 7);
    assert!(lines[1].starts_with("0.500000000000,0.900000000000,"));
    assert!(lines[4].starts_with("0.500000000000,0.100000000000,"));
}

#[test]
fn decohere_json_matches_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.json");
    let out = qbell(&[
        "decohere", "--alpha-min", "1", "--alpha-max", "2", "--steps", "2", "--etas", "0.5", "--format", "json", "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 2);
    let beta = points[0]["beta_star"].as_f64().unwrap();
    assert!((beta - (1.0 + 0.5f64.sqrt()) / 2.0).abs() < 1e-15);
}

#[test]
fn decohere_unwritable_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let out = qbell(&["decohere", "--steps", "2", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn decohere_invalid_eta() {
    let out = qbell(&["decohere", "--etas", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn charfunc_with_oracle_and_witness() {
    let out = qbell(&[
        "charfunc", "--alpha", "1", "--index", "2", "--za-re", "0.3", "--zb-im", "-0.4", "--oracle", "--witness",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let re = v["re"].as_f64().unwrap();
    assert!((v["oracle"][0].as_f64().unwrap() - re).abs() < 1e-10);
    assert!(v["oracle_deviation"].as_f64().unwrap() < 1e-10);
    assert!(v["gaussianity_residual"].as_f64().unwrap() > 1e-3);
}

#[test]
fn verify_small_range_passes() {
    let out = qbell(&["verify", "--alpha-max", "1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(!String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn verify_rejects_small_truncation() {
    let out = qbell(&["verify", "--alpha-max", "1", "--truncation", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("truncation"));
}

#[test]
fn verify_reads_truncation_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qbell"))
        .args(["verify", "--alpha-max", "1"])
        .env("QBELL_TRUNCATION", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

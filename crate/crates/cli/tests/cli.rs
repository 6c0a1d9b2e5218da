use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinweyl"))
        .args(args)
        .env_remove("OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(&run(args))).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

/// `(header, rows)` of a field CSV, rows as `[theta, phi, re, im]`.
fn csv(text: &str) -> (Vec<String>, Vec<[f64; 4]>) {
    let mut header = Vec::new();
    let mut rows = Vec::new();
    for line in text.lines() {
        if let Some(h) = line.strip_prefix("# ") {
            header.push(h.to_string());
        } else if line != "theta,phi,re,im" {
            let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
            rows.push([v[0], v[1], v[2], v[3]]);
        }
    }
    (header, rows)
}

fn header_value<'a>(header: &'a [String], key: &str) -> &'a str {
    header
        .iter()
        .find_map(|h| h.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
        .unwrap_or_else(|| panic!("no {key} in header"))
}

#[test]
fn coeffs_spin_half() {
    let doc = json(&["coeffs", "--j", "1/2", "--max-l", "1"]);
    let r1 = &doc["rows"][1];
    assert!((r1["aQ"].as_f64().unwrap() - 0.5).abs() < 1e-15);
    assert!((r1["aP"].as_f64().unwrap() - 1.5).abs() < 1e-15);
    assert!((r1["aW"].as_f64().unwrap() - 3f64.sqrt() / 2.0).abs() < 1e-15);
    assert_eq!(doc["meta"]["tool"], "spinweyl");
}

#[test]
fn coeffs_k_at_l0() {
    let doc = json(&["coeffs", "--j", "3", "--max-l", "0"]);
    assert!((doc["rows"][0]["K"].as_f64().unwrap() - 1.0 / 7.0).abs() < 1e-15);
}

#[test]
fn coeffs_beyond_2j() {
    assert_eq!(code(&["coeffs", "--j", "2", "--max-l", "5"]), 2);
    let doc = json(&["coeffs", "--j", "2", "--max-l", "5", "--allow-truncated"]);
    assert!(doc["rows"][5]["K"].is_null());
    assert_eq!(doc["rows"][5]["aW"].as_f64(), Some(0.0));
    assert_eq!(code(&["coeffs", "--j", "-1", "--max-l", "1"]), 2);
}

#[test]
fn symbol_jz_weyl() {
    let (header, rows) = csv(&stdout(&run(&["symbol", "--j", "3/2", "--op", "Jz"])));
    assert_eq!(header_value(&header, "kind"), "W");
    let jc = (1.5f64 * 2.5).sqrt();
    for [theta, _, re, im] in rows {
        assert!((re - jc * theta.cos()).abs() < 1e-12);
        assert!(im.abs() < 1e-12);
    }
}

#[test]
fn symbol_identity_all_kinds() {
    for kind in ["P", "Q", "W"] {
        let (_, rows) = csv(&stdout(&run(&["symbol", "--j", "2", "--op", "I", "--kind", kind])));
        assert!(rows.iter().all(|r| (r[2] - 1.0).abs() < 1e-12 && r[3].abs() < 1e-12));
    }
}

#[test]
fn symbol_spin_half_product() {
    let doc = json(&["symbol", "--j", "1/2", "--op", "Jx*Jz", "--format", "json"]);
    let c = 3f64.sqrt() / 4.0;
    for p in doc["points"].as_array().unwrap() {
        let (theta, phi) = (p["theta"].as_f64().unwrap(), p["phi"].as_f64().unwrap());
        assert!(p["re"].as_f64().unwrap().abs() < 1e-12);
        assert!((p["im"].as_f64().unwrap() + c * theta.sin() * phi.sin()).abs() < 1e-12);
    }
}

#[test]
fn symbol_parse_error_points_at_offset() {
    let out = run(&["symbol", "--j", "1", "--op", "Jx*+Jq"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains('^'), "{err}");
}

#[test]
fn wigner_mixed_is_flat() {
    let (header, rows) = csv(&stdout(&run(&["wigner", "--j", "2", "--state", "mixed"])));
    let mean: f64 = header_value(&header, "mean").parse().unwrap();
    assert!((mean - 0.2).abs() < 1e-14);
    assert!(rows.iter().all(|r| (r[2] - 0.2).abs() < 1e-12));
    assert_eq!(header_value(&header, "negative"), "false");
}

#[test]
fn wigner_coherent_peaks_at_north_pole() {
    let args = ["wigner", "--j", "3", "--state", "coherent:0,0", "--grid", "12x16"];
    let (_, rows) = csv(&stdout(&run(&args)));
    let top = rows.iter().max_by(|a, b| a[2].total_cmp(&b[2])).unwrap();
    let min_theta = rows.iter().map(|r| r[0]).fold(f64::INFINITY, f64::min);
    assert_eq!(top[0], min_theta);
}

#[test]
fn wigner_flags_negativity() {
    let (header, _) = csv(&stdout(&run(&["wigner", "--j", "1", "--state", "ket:0"])));
    assert_eq!(header_value(&header, "negative"), "true");
    assert!(header_value(&header, "min").parse::<f64>().unwrap() < 0.0);
}

#[test]
fn wigner_rejects_coarse_grid() {
    assert_eq!(code(&["wigner", "--j", "4", "--state", "mixed", "--grid", "2x3"]), 3);
    assert_eq!(code(&["wigner", "--j", "1", "--state", "ket:5"]), 2);
}

#[test]
fn moyal_scan_linear_closure() {
    let doc = json(&["moyal-scan", "--opA", "Jx", "--opB", "Jz", "--j-list", "1,2,4"]);
    let errs = doc["study"]["commutator_errors"].as_array().unwrap();
    assert_eq!(errs.len(), 3);
    assert!(errs.iter().all(|e| e.as_f64().unwrap() <= 1e-10));
    assert_eq!(doc["meta"]["grid_degree"].as_array().unwrap().len(), 3);
}

#[test]
fn moyal_scan_needs_three_points() {
    let out = run(&["moyal-scan", "--opA", "Jx", "--opB", "Jz", "--j-list", "4,8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("need ≥3 points"));
}

#[test]
fn kernel_spin_half_north() {
    let doc = json(&["kernel", "--j", "1/2", "--dir", "0,0"]);
    let m = &doc["matrix"];
    let s3 = 3f64.sqrt();
    assert!((m[0][0]["re"].as_f64().unwrap() - (1.0 + s3)).abs() < 1e-14);
    assert!((m[1][1]["re"].as_f64().unwrap() - (1.0 - s3)).abs() < 1e-14);
    assert!(m[0][1]["re"].as_f64().unwrap().abs() < 1e-14);
    assert_eq!(doc["hermitian"], true);
}

#[test]
fn kernel_trace() {
    let doc = json(&["kernel", "--j", "5/2", "--dir", "1.1,4.0"]);
    assert!((doc["trace"]["re"].as_f64().unwrap() - 6.0).abs() < 1e-12);
    assert!(doc["trace"]["im"].as_f64().unwrap().abs() < 1e-12);
    assert_eq!(code(&["kernel", "--j", "1", "--dir", "4,0"]), 2);
    assert_eq!(code(&["kernel", "--j", "1", "--dir", "north"]), 2);
}

#[test]
fn header_records_provenance() {
    let (header, _) = csv(&stdout(&run(&["symbol", "--j", "1", "--op", "Jz^2"])));
    assert_eq!(header_value(&header, "version"), env!("CARGO_PKG_VERSION"));
    assert_eq!(header_value(&header, "command"), "spinweyl symbol --j 1 --op Jz^2");
    assert_eq!(header_value(&header, "grid_degree"), "4");
}

#[test]
fn output_dir_and_out() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_spinweyl"))
        .args(["coeffs", "--j", "1", "--max-l", "2"])
        .env("OUTPUT_DIR", dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let written: Value = serde_json::from_slice(&std::fs::read(dir.path().join("coeffs.json")).unwrap()).unwrap();
    assert_eq!(written["rows"].as_array().unwrap().len(), 3);

    let target = dir.path().join("k.json");
    let out = run(&["kernel", "--j", "1", "--dir", "0,0", "--out", target.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    assert!(Path::new(&target).exists());

    let missing = dir.path().join("no/such/dir.json");
    assert_eq!(code(&["kernel", "--j", "1", "--dir", "0,0", "--out", missing.to_str().unwrap()]), 1);
}

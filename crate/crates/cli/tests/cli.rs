use std::path::Path;
use std::process::{Command, Output};

use se2_cli::io::{csv, se2f};
use se2_core::bessel::j0;
use se2_core::{CircleFunction, C64};
use tempfile::TempDir;

fn se2(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_se2"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write_phi(dir: &Path, u: &CircleFunction) {
    csv::write_circle_file(&dir.join("phi.csv"), u).unwrap();
}

fn banded(n: usize) -> CircleFunction {
    CircleFunction::from_modes(n, &[(-2, C64::new(0.3, 0.1)), (0, C64::new(1.0, 0.0)), (3, C64::new(-0.2, 0.5))]).unwrap()
}

#[test]
fn transform_roundtrip_is_bit_exact() {
    let dir = TempDir::new().unwrap();
    write_phi(dir.path(), &banded(256));
    let out = se2(
        &["transform", "--omega", "2", "--lambda", "0.5", "--phi", "phi.csv", "--grid", "128x128x64", "--extent", "8", "-o", "f.se2f"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let bytes = std::fs::read(dir.path().join("f.se2f")).unwrap();
    let field = se2f::read_field_file(&dir.path().join("f.se2f")).unwrap();
    assert!(field.provenance().is_some());
    assert_eq!(se2f::encode_field(&field), bytes);
}

#[test]
fn transform_of_constant_matches_bessel() {
    let dir = TempDir::new().unwrap();
    let c = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
    write_phi(dir.path(), &CircleFunction::from_fn(128, |_| C64::new(c, 0.0)).unwrap());
    let out = se2(
        &["transform", "--omega", "1.5", "--lambda", "0", "--phi", "phi.csv", "--grid", "16x16x8", "--extent", "3", "-o", "f.se2f"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let field = se2f::read_field_file(&dir.path().join("f.se2f")).unwrap();
    let grid = *field.grid();
    for j in 0..grid.m {
        for k in 0..grid.m {
            let r = grid.coord(j).hypot(grid.coord(k));
            let expected = j0(C64::new(1.5 * r, 0.0)) / (2.0 * std::f64::consts::PI);
            for l in 0..grid.n_theta {
                assert!((field.get(j, k, l) - expected).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn missing_omega_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let out = se2(&["transform", "--lambda", "0.5", "--phi", "phi.csv", "-o", "f.se2f"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn malformed_csv_is_rejected() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("phi.csv"), "phi,re,im\n0,1,oops\n").unwrap();
    let out = se2(&["transform", "--omega", "1", "--lambda", "0", "--phi", "phi.csv", "-o", "f.se2f"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert!(!dir.path().join("f.se2f").exists());
}

#[test]
fn parameter_cap_has_its_own_exit_code() {
    let dir = TempDir::new().unwrap();
    write_phi(dir.path(), &banded(256));
    let out = se2(&["transform", "--omega", "2", "--lambda", "20", "--phi", "phi.csv", "-o", "f.se2f"], dir.path());
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn missing_input_file_exits_2() {
    let dir = TempDir::new().unwrap();
    let out = se2(&["project", "--omega", "1", "--input", "absent.se2f", "-o", "ring.csv"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gaussian_projects_to_constant_ring() {
    let dir = TempDir::new().unwrap();
    assert!(se2(&["gaussian", "-o", "g.se2f"], dir.path()).status.success());
    let out = se2(&["project", "--omega", "1", "--input", "g.se2f", "-o", "ring.csv"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let ring = csv::read_circle_file(&dir.path().join("ring.csv")).unwrap();
    for v in ring.values() {
        assert!((v.re - 0.60653066).abs() < 1e-8 && v.im.abs() < 1e-10, "{v}");
    }
}

#[test]
fn gaussian_reconstruction_error_is_reported() {
    let dir = TempDir::new().unwrap();
    assert!(se2(&["gaussian", "-o", "g.se2f"], dir.path()).status.success());
    let out = se2(&["reconstruct", "--input", "g.se2f", "--nodes", "48", "--omega-max", "8"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let err: f64 = stdout
        .lines()
        .find_map(|l| l.strip_prefix("relative_l2_error="))
        .expect("error line")
        .parse()
        .unwrap();
    assert!(err <= 1e-6, "{err}");
}

#[test]
fn lift_of_black_image_is_zero() {
    let dir = TempDir::new().unwrap();
    let mut pgm = b"P5\n8 8\n255\n".to_vec();
    pgm.extend([0u8; 64]);
    std::fs::write(dir.path().join("black.pgm"), pgm).unwrap();
    let out = se2(
        &["lift", "--input", "black.pgm", "--omega", "1", "--lambda", "0.5", "--grid", "32x32x8", "-o", "f.se2f"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let field = se2f::read_field_file(&dir.path().join("f.se2f")).unwrap();
    assert_eq!(field.max_abs(), 0.0);
}

#[test]
fn lift_rejects_ascii_pgm() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("a.pgm"), "P2\n2 2\n255\n0 0 0 0\n").unwrap();
    let out = se2(&["lift", "--input", "a.pgm", "--omega", "1", "--lambda", "0.5", "-o", "f.se2f"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_parseval_passes() {
    let dir = TempDir::new().unwrap();
    let out = se2(&["verify", "parseval", "--seed", "7", "--report", "r.json"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("r.json")).unwrap();
    let reports: Vec<serde_json::Value> = serde_json::from_str(&text).unwrap();
    assert!(!reports.is_empty());
    for r in &reports {
        assert_eq!(r["passed"], true);
        assert!(r.get("runtime_ms").is_none());
        if r["check_name"] == "parseval_relative_error" {
            let gap = r["observed"].as_f64().unwrap() - r["expected"].as_f64().unwrap();
            assert!(gap.abs() <= 1e-10, "{r}");
            assert_eq!(r["tolerance"].as_f64(), Some(1e-10));
        }
    }
}

#[test]
fn verify_timings_adds_runtime() {
    let dir = TempDir::new().unwrap();
    let out = se2(&["verify", "reproducing", "--timings"], dir.path());
    assert!(out.status.success());
    let reports: Vec<serde_json::Value> = serde_json::from_slice(&out.stdout).unwrap();
    assert!(reports.iter().all(|r| r["runtime_ms"].is_u64()));
}

#[test]
fn verify_cr_writes_convergence_table() {
    let dir = TempDir::new().unwrap();
    let out = se2(&["verify", "cr", "--report", "r.json", "--table", "t.csv"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let table = std::fs::read_to_string(dir.path().join("t.csv")).unwrap();
    assert!(table.contains("h,residual,ratio"));
}

#[test]
fn unknown_suite_exits_2() {
    let dir = TempDir::new().unwrap();
    let out = se2(&["verify", "nonsense"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

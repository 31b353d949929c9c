use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use spinor_core::algebra::FourVector;
use spinor_core::maxwell::{smooth_trial, FieldGrid, GridShape, SourceGrid};

fn spinors(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinors"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn f(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

fn four(v: &Value) -> [f64; 4] {
    [f(&v["t"]), f(&v["x"]), f(&v["y"]), f(&v["z"])]
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() < tol)
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn flagpole_golden_values() {
    let v = json(&spinors(&["flagpole", "1", "1"]));
    assert_eq!(four(&v["flagpole"]), [2.0, 2.0, 0.0, 0.0]);
    assert_eq!(f(&v["norm"]), 0.0);
    let v = json(&spinors(&["flagpole", "-2", "1"]));
    assert_eq!(four(&v["flagpole"]), [5.0, -4.0, 0.0, 3.0]);
    let v = json(&spinors(&["flagpole", "2", "1+1i"]));
    assert_eq!(four(&v["flagpole"]), [6.0, 4.0, 4.0, 2.0]);
    let v = json(&spinors(&["flagpole", "0", "0"]));
    assert_eq!(four(&v["flagpole"]), [0.0; 4]);
    assert_eq!(f(&v["norm"]), 0.0);
}

#[test]
fn left_flagpole_reverses_space_part() {
    let v = json(&spinors(&["flagpole", "-2", "1", "--left"]));
    assert_eq!(four(&v["flagpole"]), [5.0, 4.0, 0.0, -3.0]);
    assert_eq!(v["spinor"]["chirality"], "left");
}

#[test]
fn flagpole_rejects_bad_tokens() {
    let out = spinors(&["flagpole", "1+", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("complex"));
    assert_eq!(spinors(&["flagpole", "1"]).status.code(), Some(1));
}

#[test]
fn full_turn_negates_spinor() {
    let v = json(&spinors(&[
        "transform", "1", "0", "--rotate", "0", "0", "1", "6.283185307179586",
    ]));
    let a = &v["spinor"]["a"];
    assert!((f(&a[0]) + 1.0).abs() < 1e-12 && f(&a[1]).abs() < 1e-12);
    let ind = &v["induced"];
    for i in 0..4 {
        for j in 0..4 {
            let e = if i == j { 1.0 } else { 0.0 };
            assert!((f(&ind[i][j]) - e).abs() < 1e-12);
        }
    }
}

#[test]
fn boost_along_z_scales_flagpole() {
    let rho: f64 = 0.7;
    let r = rho.to_string();
    let v = json(&spinors(&["transform", "1", "0", "--boost", "0", "0", "1", &r]));
    let e = (-rho).exp();
    assert!(close(&four(&v["flagpole"]), &[e, 0.0, 0.0, e], 1e-12));

    let v = json(&spinors(&["transform", "1", "0", "--boost", "0", "0", "1", &r, "--active"]));
    let e = rho.exp();
    assert!(close(&four(&v["flagpole"]), &[e, 0.0, 0.0, e], 1e-12));
}

#[test]
fn identity_transform_changes_nothing() {
    let v = json(&spinors(&["transform", "0.3-0.2i", "1.5", "--rotate", "1", "0", "0", "0"]));
    assert_eq!(v["spinor"], v["input"]);
}

#[test]
fn transform_needs_a_valid_axis() {
    let out = spinors(&["transform", "1", "0", "--rotate", "0", "0", "0", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error"));
    let out = spinors(&["transform", "1", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn dirac_build_rest_spin_up() {
    let v = json(&spinors(&["dirac", "build", "--rest", "0", "0", "1"]));
    let c = &v["spinor"]["components"];
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let re: Vec<f64> = (0..4).map(|i| f(&c[i][0])).collect();
    assert!(close(&re, &[h, 0.0, h, 0.0], 1e-15));
    assert_eq!(v["spinor"]["basis"], "chiral");
}

#[test]
fn dirac_chain_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let rest = dir.path().join("rest.json");
    let moved = dir.path().join("moved.json");
    let out = spinors(&["dirac", "build", "--rest", "1", "0", "1"]);
    std::fs::write(&rest, &out.stdout).unwrap();
    let out = spinors(&[
        "dirac", "boost", "--input", rest.to_str().unwrap(), "--velocity", "0.8", "0", "0",
    ]);
    let boosted = json(&out);
    assert!((f(&boosted["energy"]) - 5.0 / 3.0).abs() < 1e-14);
    std::fs::write(&moved, &out.stdout).unwrap();
    let r = json(&spinors(&["dirac", "residual", "--input", moved.to_str().unwrap()]));
    assert!(f(&r["max_abs"]) < 1e-12);

    // the same chain in one step matches
    let direct = json(&spinors(&["dirac", "build", "--rest", "1", "0", "1", "--boost", "0.8", "0", "0"]));
    assert_eq!(direct["spinor"], boosted["spinor"]);
}

#[test]
fn dirac_residual_through_pipe() {
    let built = spinors(&["dirac", "build", "--rest", "0", "1", "0", "--branch", "-1", "--boost", "0", "0.3", "-0.5", "--mass", "2"]);
    let mut child = Command::new(env!("CARGO_BIN_EXE_spinors"))
        .args(["dirac", "residual", "--input", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&built.stdout).unwrap();
    let out = child.wait_with_output().unwrap();
    let r = json(&out);
    assert_eq!(r["branch"], -1);
    assert!(f(&r["max_abs"]) < 1e-12);
}

#[test]
fn dirac_residual_off_shell_is_domain_error() {
    let out = spinors(&[
        "dirac", "residual", "--components", "1", "0", "1", "0", "--momentum", "1", "0", "0",
        "--energy", "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("off-shell"));
    let out = spinors(&["dirac", "residual", "--components", "1", "0", "1", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn dirac_bilinears_moving_spinor() {
    let v = json(&spinors(&[
        "dirac", "bilinears", "--components", "1.17005", "0.204124", "0.462943", "-0.204124",
    ]));
    let u = four(&v["four_velocity"]);
    assert!(close(&u, &[5.0 / 3.0, 2.0 / 3.0, 0.0, 2.0 / 3.0_f64.sqrt()], 1e-5));
    for key in ["flagpole_right", "flagpole_left"] {
        let p = four(&v[key]);
        let n = -p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
        assert!(n.abs() < 1e-6);
    }
    let sum: Vec<f64> = four(&v["flagpole_right"])
        .iter()
        .zip(four(&v["flagpole_left"]))
        .map(|(a, b)| a + b)
        .collect();
    assert!(close(&sum, &u, 1e-12));
    assert!((f(&v["invariant_mass"]) - 1.0).abs() < 1e-5);
    let s = &v["rest_frame_spin_direction"];
    let n = (f(&s[0]).powi(2) + f(&s[1]).powi(2) + f(&s[2]).powi(2)).sqrt();
    assert!((n - 1.0).abs() < 1e-12);
}

#[test]
fn dirac_bilinears_null_current_has_no_rest_frame() {
    let v = json(&spinors(&["dirac", "bilinears", "--components", "1", "0", "0", "0"]));
    assert!(v["rest_frame_spin_direction"].is_null());
    assert!(v["invariant_mass"].is_null());
}

#[test]
fn maxwell_planewave_order_two() {
    let v = json(&spinors(&["maxwell", "--analytic", "planewave", "k=1", "h=0.1", "--refine", "2"]));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for row in &rows[1..] {
        let r = f(&row["ratio"]);
        assert!((3.2..=4.8).contains(&r), "{r}");
    }
    assert!((f(&v["order_estimate"]) - 2.0).abs() < 0.3);
}

#[test]
fn maxwell_zero_generator() {
    let v = json(&spinors(&["maxwell", "--analytic", "zero"]));
    let row = &v["rows"][0];
    assert_eq!(f(&row["spinor_residual"]), 0.0);
    for k in ["gauss_e", "gauss_b", "faraday", "ampere"] {
        assert_eq!(f(&row["classical"][k]), 0.0);
    }
    assert_eq!(spinors(&["maxwell", "--analytic", "sphere"]).status.code(), Some(1));
}

fn write_grids(dir: &std::path::Path, f: &FieldGrid, s: &SourceGrid) -> (String, String) {
    let fp = dir.join("fields.txt");
    let sp = dir.join("sources.txt");
    std::fs::write(&fp, f.to_text()).unwrap();
    std::fs::write(&sp, s.to_text()).unwrap();
    (fp.to_str().unwrap().into(), sp.to_str().unwrap().into())
}

#[test]
fn maxwell_files_zero_and_corrupted() {
    let dir = tempfile::tempdir().unwrap();
    let shape = GridShape::new([5, 6, 5, 5], 0.05, 0.1, FourVector::default()).unwrap();
    let (fp, sp) = write_grids(dir.path(), &FieldGrid::zeros(shape), &SourceGrid::zeros(shape));
    let v = json(&spinors(&["maxwell", "--fields", &fp, "--sources", &sp]));
    assert_eq!(f(&v["rows"][0]["spinor_residual"]), 0.0);

    // a field that solves nothing: large residuals, decomposition still exact
    let (fields, sources) = smooth_trial(shape, 4);
    let (fp, sp) = write_grids(dir.path(), &fields, &sources);
    let v = json(&spinors(&["maxwell", "--fields", &fp, "--sources", &sp]));
    let row = &v["rows"][0];
    assert!(f(&row["spinor_residual"]) > 0.1);
    assert!(f(&row["decomposition_mismatch"]) < 1e-13);
}

#[test]
fn maxwell_malformed_file_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let shape = GridShape::new([5; 4], 0.1, 0.1, FourVector::default()).unwrap();
    let (fp, sp) = write_grids(dir.path(), &FieldGrid::zeros(shape), &SourceGrid::zeros(shape));
    let text = std::fs::read_to_string(&fp).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    lines[12] = "0 0 0 0 nope 0";
    std::fs::write(&fp, lines.join("\n")).unwrap();
    let out = spinors(&["maxwell", "--fields", &fp, "--sources", &sp]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line 13"), "{}", stderr(&out));

    let missing = dir.path().join("absent.txt");
    let out = spinors(&["maxwell", "--fields", missing.to_str().unwrap(), "--sources", &sp]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn maxwell_shape_mismatch_is_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let a = GridShape::new([5; 4], 0.1, 0.1, FourVector::default()).unwrap();
    let b = GridShape::new([6, 5, 5, 5], 0.1, 0.1, FourVector::default()).unwrap();
    let (fp, sp) = write_grids(dir.path(), &FieldGrid::zeros(a), &SourceGrid::zeros(b));
    assert_eq!(spinors(&["maxwell", "--fields", &fp, "--sources", &sp]).status.code(), Some(2));
}

#[test]
fn check_suites_pass() {
    for suite in ["algebra", "homomorphism", "weyl", "dirac", "liealg"] {
        let v = json(&spinors(&["check", "--suite", suite]));
        assert_eq!(v["passed"], true, "{suite}");
        assert_eq!(v["seed"], 42);
    }
    let v = json(&spinors(&["check", "--suite", "homomorphism"]));
    assert_eq!(v["checks"][0]["cases"], 1000);
    assert_eq!(spinors(&["check", "--suite", "nothing"]).status.code(), Some(1));
}

#[test]
fn output_is_deterministic_and_reparseable() {
    let args = ["check", "--suite", "weyl", "--seed", "9"];
    let a = spinors(&args);
    let b = spinors(&args);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["seed"], 9);

    let out = spinors(&["dirac", "build", "--rest", "1", "2", "3", "--boost", "0.1", "-0.2", "0.3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap(), text.trim_end());
}

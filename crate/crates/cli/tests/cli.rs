use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const FLAT: &str = "[geometry]\nkind = flat-torus\nn = 4\nresolution = 8\n";
const BUMPY: &str = "[geometry]\nkind = perturbed-torus\nn = 4\namplitude = 0.05\nseed = 7\nmodes = 3\n";
const SPHERE: &str = "# unit round sphere\n[geometry]\nkind = round-sphere\nn = 4\nradius = 1.0\nexcision = 0.4\n";

fn curvkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvkit")).args(args).output().unwrap()
}

fn spec(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn record<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["records"].as_array().unwrap().iter().find(|r| r["name"] == name).unwrap_or_else(|| panic!("no record {name}"))
}

#[test]
fn malformed_spec_names_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let p = spec(dir.path(), "bad.spec", "[geometry]\nkind = round-sphere\nn = 4\nradious = 1\n");
    let out = curvkit(&["check", "--spec", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("radious") && err.contains("line 4"), "{err}");

    let p = spec(dir.path(), "neg.spec", "[geometry]\nkind = round-sphere\nn = 4\nradius = -1\n");
    let out = curvkit(&["analyze", "--spec", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("radius"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(curvkit(&["chek"]).status.code(), Some(2));
    assert_eq!(curvkit(&["sample", "--samples", "many"]).status.code(), Some(2));
    assert_eq!(curvkit(&["sample", "--stencil-order", "3"]).status.code(), Some(2));
    assert_eq!(curvkit(&["sample", "--yamabe", "guess"]).status.code(), Some(2));
    assert_eq!(curvkit(&["analyze"]).status.code(), Some(2));
    assert_eq!(curvkit(&["check", "--spec", "/nonexistent/x.spec"]).status.code(), Some(2));
}

#[test]
fn flat_torus_analyze_is_flat() {
    let dir = tempfile::tempdir().unwrap();
    let p = spec(dir.path(), "flat.spec", FLAT);
    let out = curvkit(&["analyze", "--spec", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["geometry"]["euler_characteristic"], 0);
    let s = &record(&r, "summary[8x8x8x8]")["residuals"];
    for key in ["max_weyl", "max_traceless_ricci", "max_cotton", "max_bach", "scalar_min", "scalar_max"] {
        assert!(s[key].as_f64().unwrap().abs() < 1e-12, "{key} {}", s[key]);
    }
    assert!(record(&r, "oracle[riemann]")["residuals"]["8x8x8x8"].as_f64().unwrap() < 1e-12);
}

#[test]
fn perturbed_torus_check_is_not_applicable() {
    let dir = tempfile::tempdir().unwrap();
    let p = spec(dir.path(), "bumpy.spec", BUMPY);
    let out = curvkit(&["check", "--spec", p.to_str().unwrap(), "--yamabe", "trial"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    for name in ["pointwise-pinching", "harmonic-integral-pinching", "harmonic-integral-condition"] {
        assert_eq!(record(&r, name)["status"], "not-applicable", "{name}");
    }
    assert_eq!(r["summary"]["failed"], 0);
}

#[test]
fn sphere_check_passes_with_exact_yamabe() {
    let dir = tempfile::tempdir().unwrap();
    let p = spec(dir.path(), "s4.spec", SPHERE);
    let out = curvkit(&["check", "--spec", p.to_str().unwrap(), "--resolution", "12"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    let y = record(&r, "bach-flat-integral-pinching");
    assert_eq!(y["status"], "pass");
    assert_eq!(y["yamabe_source"], "exact");
    assert_eq!(r["config"]["resolutions"], serde_json::json!([[12, 12, 12, 8]]));
}

#[test]
fn product_check_fails_pinching() {
    let dir = tempfile::tempdir().unwrap();
    let text = "[geometry]\nkind = product-spheres\np = 2\nq = 2\nr1 = 1\nr2 = 1\nexcision = 0.4\n";
    let p = spec(dir.path(), "s2s2.spec", text);
    let out = curvkit(&["check", "--spec", p.to_str().unwrap(), "--resolution", "12", "--yamabe", "user:30"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(record(&r, "pointwise-pinching")["status"], "fail");
    assert_eq!(record(&r, "bach-flat-integral-condition")["status"], "fail");
    assert_eq!(record(&r, "bach-flat-integral-pinching")["yamabe_source"], "user");
}

#[test]
fn sample_is_deterministic_and_written_to_out() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("sample.json");
    let args = ["sample", "--samples", "2000", "--seed", "5"];
    let a = curvkit(&args);
    let b = curvkit(&[&args[..], &["--out", out_path.to_str().unwrap()]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    assert!(b.stdout.is_empty());
    assert_eq!(a.stdout, std::fs::read(&out_path).unwrap());
    let r = json(&a);
    assert_eq!(r["config"]["samples"], 2000);
    assert_eq!(r["summary"]["failed"], 0);
    assert_eq!(r["summary"]["passed"], 12);
}

#[test]
fn constants_selection() {
    let out = curvkit(&["constants"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    for n in 4..=6 {
        assert_eq!(record(&r, &format!("constants[n={n}]"))["status"], "pass");
    }
    for n in 7..=8 {
        assert_eq!(record(&r, &format!("constants[n={n}]"))["status"], "info");
    }
    let c4 = record(&r, "constants[n=4]")["residuals"]["c_n"].as_f64().unwrap();
    assert!((c4 - (3.0f64 / 8.0).sqrt()).abs() < 1e-14);
}

#[test]
fn verify_on_perturbed_torus_converges() {
    let dir = tempfile::tempdir().unwrap();
    let p = spec(dir.path(), "bumpy.spec", BUMPY);
    let out = curvkit(&["verify", "--spec", p.to_str().unwrap(), "--resolution", "8,12", "--yamabe", "trial"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    let t = record(&r, "theta-tensor-identity[theta=2]");
    assert_eq!(t["status"], "pass");
    assert_eq!(t["orders"].as_array().unwrap().len(), 1);
    assert_eq!(record(&r, "gauss-bonnet")["status"], "pass");
    assert_eq!(record(&r, "bach-flat-ricci-identity")["status"], "not-applicable");
}

#[test]
fn flat_torus_verify_has_no_failures() {
    let dir = tempfile::tempdir().unwrap();
    let p = spec(dir.path(), "flat.spec", FLAT);
    let out = curvkit(&["verify", "--spec", p.to_str().unwrap(), "--resolution", "8,12"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["summary"]["failed"], 0);
    assert_eq!(record(&r, "einstein-weyl-laplacian")["status"], "pass");
    assert!(record(&r, "gauss-bonnet")["lhs"].as_f64().unwrap().abs() < 1e-12);
}

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use pseudonull::diffalg::{parse, total_derivative, DiffPoly, Generator};
use pseudonull::geometry::{torsion_variation, FrenetField, GeometryError};
use pseudonull_cli::report::Status;
use pseudonull_cli::verify::{run_verify, Context, Filter};
use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pseudonull"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn hierarchy_check_passes() {
    let o = bin(&["hierarchy", "--levels", "5", "--check"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("V_4 = (τ″ + 3ττ′ + τ³)N"));
    assert!(text.contains("V_3(k) = k⁽⁴⁾ + Gk″"));
}

#[test]
fn single_level() {
    let o = bin(&["hierarchy", "--levels", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = json(&o);
    assert_eq!(rows.as_array().unwrap().len(), 1);
    assert_eq!(rows[0]["field"], "1;0;0");
    assert_eq!(rows[0]["tau_flow"], "t1");
    assert_eq!(rows[0]["k_flow"], "k1");
    let table = stdout(&bin(&["hierarchy", "--levels", "1"]));
    assert_eq!(table, "V_0 = T\n\nV_0(τ) = τ′\n\nV_0(k) = k′\n");
}

#[test]
fn zero_levels_is_usage_error() {
    assert_eq!(bin(&["hierarchy", "--levels", "0"]).status.code(), Some(2));
}

#[test]
fn numeric_curvature_substitution() {
    let o = bin(&["hierarchy", "--levels", "3", "--curvature", "0", "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.starts_with("n,field,tau_flow,k_flow\n"));
    assert!(text.contains("2,0;t;0,t3 + 3*t1^2 + 3*t*t2 + 3*t^2*t1,k3\n"), "{text}");
}

#[test]
fn json_output_is_deterministic() {
    let a = bin(&["hierarchy", "--levels", "6", "--format", "json"]);
    let b = bin(&["hierarchy", "--levels", "6", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn symmetry_examples() {
    let flow = "t2+2*t*t1";
    let o = bin(&["symmetry", "--flow", flow, "--candidate", "t1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["symmetry"], true);

    let o = bin(&["symmetry", "--flow", flow, "--candidate", "t^2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["residual"], "-2*t1^2 - 2*t^2*t1");

    let v3 = "t4 + 4*t*t3 + (G + 10*t1 + 6*t^2)*t2 + 12*t*t1^2 + (2*G*t + 4*t^3)*t1";
    assert_eq!(bin(&["symmetry", "--flow", flow, "--candidate", v3]).status.code(), Some(0));
}

#[test]
fn parse_errors_report_position() {
    let o = bin(&["symmetry", "--flow", "t2 + * t", "--candidate", "t1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("offset 5"));
    assert_eq!(bin(&["parse", "t1 + k"]).status.code(), Some(2));
}

#[test]
fn parse_prints_canonical_forms() {
    let o = bin(&["parse", "--format", "json", "t1*t + 2*t*t1", "-k2"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = json(&o);
    assert_eq!(rows[0]["canonical"], "3*t*t1");
    assert_eq!(rows[0]["pretty"], "3ττ′");
    assert_eq!(rows[1]["canonical"], "-k2");
    assert_eq!(rows[1]["generator"], "k");
}

#[test]
fn bracket_components() {
    let o = bin(&["bracket", "--field", "0;1;0", "--field", "0;t^2;0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let b = json(&o);
    let r = json(&bin(&["bracket", "--field", "0;t^2;0", "--field", "0;1;0", "--format", "json"]));
    assert_eq!(b["f"], "0");
    assert_eq!(b["h"], "0");
    let neg = format!("-({})", b["g"].as_str().unwrap());
    let expected = parse(&neg, Generator::Tau).unwrap();
    assert_eq!(parse(r["g"].as_str().unwrap(), Generator::Tau).unwrap(), expected);

    let hierarchy_pair = json(&bin(&["bracket", "--field", "0;1;0", "--field", "0;t1 + t^2;0", "--format", "json"]));
    assert_eq!(hierarchy_pair["g"], "0");

    assert_eq!(bin(&["bracket", "--field", "0;1;0"]).status.code(), Some(2));
    assert_eq!(bin(&["bracket", "--field", "0;1;0", "--field", "0;0;1"]).status.code(), Some(2));
}

#[test]
fn variation_of_normal_field() {
    let o = bin(&["variation", "--field", "0;1;0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["tangent"], true);
    assert_eq!(v["torsion_variation"], "t2 + 2*t*t1");
    assert_eq!(v["phi"], "t");
    assert_eq!(v["field"]["g"], "1");
    let b = json(&bin(&["variation", "--field", "0;0;1", "--format", "json"]));
    assert_eq!(b["tangent"], false);
    assert_eq!(b["torsion_variation"], Value::Null);
}

#[test]
fn verify_symbolic_filter_skips_numerics() {
    let o = bin(&["verify", "--filter", "symbolic", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["status"], "pass");
    let skipped = r["skipped"].as_array().unwrap();
    assert!(!skipped.is_empty());
    assert!(skipped.iter().all(|s| s.as_str().unwrap().starts_with("numerics.")));
    assert!(r["checks"].as_object().unwrap().keys().all(|k| !k.starts_with("numerics.")));
}

/// `V(τ)` with the sign of the `2τg″` term flipped.
fn flipped(v: &FrenetField) -> Result<DiffPoly, GeometryError> {
    let tau = DiffPoly::var(Generator::Tau, 0);
    let g2 = total_derivative(&total_derivative(v.g()));
    let four = DiffPoly::from_int(Generator::Tau, 4);
    Ok(&torsion_variation(v)? - &(&four * &(&tau * &g2)))
}

#[test]
fn sign_flip_is_caught() {
    let ctx = Context {
        torsion_variation: flipped,
        ..Context::default()
    };
    let report = run_verify(&ctx, &Filter::Name("normal_flows".into()));
    assert_eq!(report.status(), Status::Fail);
    let clean = run_verify(&Context::default(), &Filter::Name("normal_flows".into()));
    assert_eq!(clean.status(), Status::Pass);
}

fn files(dir: &Path, prefix: &str) -> usize {
    fs::read_dir(dir)
        .unwrap()
        .filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().starts_with(prefix))
        .count()
}

#[test]
fn simulate_burgers_writes_snapshots() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("burgers");
    let o = bin(&[
        "simulate", "burgers", "--init", "sin", "--grid-n", "256", "--t-end", "0.5", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(files(&out, "tau_"), 6);
    let csv = fs::read_to_string(out.join("tau_000.csv")).unwrap();
    assert_eq!(csv.lines().count(), 257);
    let run: Value = serde_json::from_str(&fs::read_to_string(out.join("run.json")).unwrap()).unwrap();
    assert_eq!(run["times"].as_array().unwrap().len(), 6);
    assert_eq!(run["fields"][5].as_array().unwrap().len(), 256);
}

#[test]
fn simulate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = bin(&["simulate", "gauge", "--grid-n", "32", "--t-end", "0.05", "--dt", "1e-3", "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        (fs::read(out.join("run.json")).unwrap(), fs::read(out.join("report.json")).unwrap())
    };
    assert_eq!(run("a"), run("b"));
}

#[test]
fn simulate_filament_writes_curves_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("filament");
    let o = bin(&[
        "simulate", "filament", "--init", "0.5*sin", "--grid-n", "64", "--t-end", "0.05", "--snapshots", "2",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(files(&out, "curve_"), 3);
    let header = fs::read_to_string(out.join("curve_002.csv")).unwrap();
    assert!(header.starts_with("s,gamma0,gamma1,gamma2,t0,t1,t2,n0,n1,n2,b0,b1,b2\n"));
    let report: Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    for d in report["frame_drift"].as_array().unwrap() {
        assert!(d.as_f64().unwrap() < 1e-5);
    }
    assert_eq!(report["velocity_residual"].as_array().unwrap().len(), 2);
}

#[test]
fn simulate_heat_cross_checks_hopf_cole() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("heat");
    let o = bin(&[
        "simulate", "heat", "--curvature", "1", "--init", "2+cos", "--grid-n", "128", "--t-end", "0.2", "--dt", "2e-4",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(files(&out, "k_"), 6);
    let report: Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert!(report["hopf_cole_residual"].as_f64().unwrap() < 1e-3);
}

#[test]
fn stability_violation_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("unstable");
    let o = bin(&["simulate", "burgers", "--grid-n", "512", "--dt", "1e-3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("stab"));
    assert!(!out.exists());
}

#[test]
fn initial_grid_from_csv() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first");
    let o = bin(&["simulate", "burgers", "--grid-n", "64", "--t-end", "0.01", "--dt", "1e-3", "--snapshots", "1", "--out", first.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let second = dir.path().join("second");
    let input = first.join("tau_001.csv");
    let o = bin(&["simulate", "burgers", "--init", input.to_str().unwrap(), "--t-end", "0.01", "--dt", "1e-3", "--snapshots", "1", "--out", second.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(fs::read(input).unwrap(), fs::read(second.join("tau_000.csv")).unwrap());
}

#[test]
fn bad_initial_condition_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x");
    let o = bin(&["simulate", "heat", "--init", "tan", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = bin(&["simulate", "heat", "--init", "cos", "--grid-n", "16", "--dt", "1e-3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "non-positive curvature must be rejected");
}

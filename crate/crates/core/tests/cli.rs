//! End-to-end runs of the `ratemat` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn ratemat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratemat")).args(args).output().expect("binary runs")
}

fn run_ok(args: &[&str]) -> Value {
    let out = ratemat(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn p1() -> String {
    data("p1.json").to_string_lossy().into_owned()
}

#[test]
fn stats_of_p1() {
    let v = run_ok(&["stats", "--input", &p1()]);
    assert_eq!(v["n"], serde_json::json!([[0, 1, 1], [1, 0, 0], [0, 0, 0]]));
    assert_eq!(v["d"], serde_json::json!([1.0, 0.75, 0.25]));
    assert_eq!(v["jumps"], 3);
}

#[test]
fn ml_estimate_of_p1() {
    let v = run_ok(&["estimate", "--input", &p1(), "--mode", "ml"]);
    assert_eq!(v["kind"], "ml");
    assert_eq!(v["q"], serde_json::json!([[-2.0, 1.0, 1.0], [4.0 / 3.0, -4.0 / 3.0, 0.0], [0.0, 0.0, 0.0]]));
    assert_eq!(v["bounds"]["lower"], v["q"]);
}

#[test]
fn imprecise_at_zero_matches_ml() {
    let imp = run_ok(&["estimate", "--input", &p1(), "--mode", "imprecise", "--s", "0"]);
    let ml = run_ok(&["estimate", "--input", &p1()]);
    assert_eq!(imp["q"], ml["q"]);
    assert_eq!(imp["bounds"]["lower"], ml["q"]);
    assert_eq!(imp["bounds"]["upper"], ml["q"]);
}

#[test]
fn discrete_estimate_flags_undefined_rows() {
    let v = run_ok(&["estimate", "--input", &p1(), "--m", "4"]);
    assert_eq!(v["m"], 4);
    assert_eq!(v["undefined_rows"], serde_json::json!([2]));
    let v = run_ok(&["estimate", "--input", &p1(), "--m", "8", "--mode", "imprecise", "--s", "1"]);
    assert_eq!(v["undefined_rows"], serde_json::json!([]));
    assert_eq!(v["bounds"]["upper"][0][1], 1.6);
}

#[test]
fn lower_op_on_p1() {
    let v = run_ok(&["lower-op", "--input", &p1(), "--s", "1", "--h", "[0,1,2]"]);
    let lower: Vec<f64> = serde_json::from_value(v["lower"].clone()).unwrap();
    for (a, b) in lower.iter().zip([3.0, -8.0 / 3.0, -8.0]) {
        assert!((a - b).abs() < 1e-12);
    }
    assert_eq!(v["upper"].as_array().unwrap().len(), 3);
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{\"states\": [\"a\"");
    assert_eq!(ratemat(&["stats", "--input", &bad]).status.code(), Some(2));
    assert_eq!(ratemat(&["stats", "--input", "/nonexistent/path.json"]).status.code(), Some(2));
    assert_eq!(ratemat(&["convergence", "--input", &p1(), "--m", ""]).status.code(), Some(2));
    assert_eq!(ratemat(&["lower-op", "--input", &p1(), "--h", "[0,1]"]).status.code(), Some(2));
    assert_eq!(ratemat(&["estimate", "--input", &p1(), "--mode", "imprecise", "--s", "-1"]).status.code(), Some(2));
    let selfjump = write(&dir, "self.json", r#"{"states":["a","b"],"t_max":1.0,"segments":[[0.0,"a"],[0.5,"a"]]}"#);
    assert_eq!(ratemat(&["stats", "--input", &selfjump]).status.code(), Some(2));
}

#[test]
fn zero_duration_state_exits_4() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.json", r#"{"states":["a","b"],"t_max":1.0,"segments":[[0.0,"a"]]}"#);
    let out = ratemat(&["estimate", "--input", &p]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains('b'));
}

#[test]
fn unvisited_state_exits_3() {
    let dir = TempDir::new().unwrap();
    let m = write(
        &dir,
        "m.json",
        r#"{"states":["a","b","c"],"q":[[-1.0,1.0,0.0],[1.0,-1.0,0.0],[0.0,0.0,0.0]],"initial":[1.0,0.0,0.0],"t_max":5.0}"#,
    );
    let out = ratemat(&["simulate", "--input", &m, "--seed", "3"]);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["states"], serde_json::json!(["a", "b", "c"]));
}

#[test]
fn failed_convergence_exits_5() {
    // two coarse levels stay far above the tolerance
    let out = ratemat(&["convergence", "--input", &p1(), "--m", "4,8", "--s", "1"]);
    assert_eq!(out.status.code(), Some(5));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], false);
}

#[test]
fn convergence_passes_on_p1() {
    let v = run_ok(&["convergence", "--input", &p1(), "--s", "1"]);
    assert_eq!(v["pass"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 14);
    let out = ratemat(&["convergence", "--input", &p1(), "--m", "8,16", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("m,delta,count_match"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn simulate_then_estimate_round_trip() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("sim.json").to_string_lossy().into_owned();
    let model = data("model3.json").to_string_lossy().into_owned();
    let out = ratemat(&["simulate", "--input", &model, "--output", &path]);
    assert_eq!(out.status.code(), Some(0));
    let v = run_ok(&["estimate", "--input", &path, "--mode", "imprecise"]);
    assert_eq!(v["states"], serde_json::json!(["x", "y", "z"]));
    let d: Vec<f64> = serde_json::from_value(v["stats"]["d"].clone()).unwrap();
    assert!((d.iter().sum::<f64>() - 50.0).abs() < 1e-9);
}

#[test]
fn reruns_are_byte_identical() {
    let model = data("model3.json").to_string_lossy().into_owned();
    let a = ratemat(&["simulate", "--input", &model, "--seed", "11"]).stdout;
    let b = ratemat(&["simulate", "--input", &model, "--seed", "11"]).stdout;
    assert_eq!(a, b);
    assert_ne!(a, ratemat(&["simulate", "--input", &model, "--seed", "12"]).stdout);
    let c = ratemat(&["convergence", "--input", &p1(), "--m", "8,64,512"]).stdout;
    let d = ratemat(&["convergence", "--input", &p1(), "--m", "8,64,512"]).stdout;
    assert_eq!(c, d);
}

#[test]
fn bayes_with_prior_file() {
    let dir = TempDir::new().unwrap();
    let prior = write(&dir, "prior.json", r#"{"alpha":[[0,1,1],[1,0,1],[1,1,0]],"beta":[1,1,1]}"#);
    let v = run_ok(&["estimate", "--input", &p1(), "--mode", "bayes", "--prior", &prior]);
    assert_eq!(v["kind"], "bayes");
    // (1 + 1) / (1 + 1) for a -> b
    assert_eq!(v["q"][0][1], 1.0);
    let flat = run_ok(&["estimate", "--input", &p1(), "--mode", "bayes"]);
    let ml = run_ok(&["estimate", "--input", &p1()]);
    assert_eq!(flat["q"], ml["q"]);
}

#[test]
fn invalid_model_exits_2() {
    let dir = TempDir::new().unwrap();
    let m = write(
        &dir,
        "m.json",
        r#"{"states":["a","b"],"q":[[-1.0,1.0],[-0.5,0.5]],"initial":[1.0,0.0],"t_max":5.0}"#,
    );
    assert_eq!(ratemat(&["simulate", "--input", &m]).status.code(), Some(2));
}

#[test]
fn constant_gamble_gives_zeros() {
    let v = run_ok(&["lower-op", "--input", &p1(), "--h", "[2.5,2.5,2.5]"]);
    assert_eq!(v["lower"], serde_json::json!([0.0, 0.0, 0.0]));
    assert_eq!(v["upper"], serde_json::json!([0.0, 0.0, 0.0]));
}

#[test]
fn single_level_sweep_still_reports() {
    let out = ratemat(&["convergence", "--input", &p1(), "--m", "1"]);
    assert!(matches!(out.status.code(), Some(0) | Some(5)));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);
}

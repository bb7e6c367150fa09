use std::path::Path;
use std::process::{Command, Output};

fn onecut(args: &[&str]) -> Output {
    onecut_env(args, &[])
}

fn onecut_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_onecut"));
    cmd.args(args).env_remove("ONECUT_PRECISION_BITS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", stdout(o)))
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

fn num(v: &serde_json::Value) -> f64 {
    v.as_str().unwrap().parse().unwrap()
}

#[test]
fn eqm_matches_golden_output() {
    let o = onecut(&["eqm", "--potential", "poly:0,0,0.5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), golden("eqm_semicircle.json"));
    assert!(o.stderr.is_empty());
}

#[test]
fn rec_matches_golden_csv_and_is_deterministic() {
    let args = ["rec", "--potential", "jacobi:1,2", "--n-max", "5", "--digits", "20"];
    let first = onecut(&args);
    assert_eq!(first.status.code(), Some(0), "{}", stderr(&first));
    assert_eq!(stdout(&first), golden("rec_jacobi.csv"));
    assert_eq!(stdout(&first).lines().next(), Some("n,a_nn,b_nn"));
    let second = onecut(&args);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn eqm_jacobi_endpoints() {
    let o = onecut(&["eqm", "--potential", "jacobi:1,2"]);
    let v = json(&o);
    // (3 ∓ 8√6)/25
    assert!((num(&v["a"]) + 0.663836717690617).abs() < 1e-14);
    assert!((num(&v["b"]) - 0.903836717690617).abs() < 1e-14);
    assert_eq!(v["regular"], true);
    assert_eq!(v["metadata"]["potential"], "jacobi:1,2");
    for key in ["potential", "precision_bits", "node_count", "tool_version"] {
        assert!(v["metadata"].get(key).is_some(), "{key}");
    }
}

#[test]
fn configuration_errors_are_aggregated_on_stderr() {
    let o = onecut(&["verify", "--n-max", "0", "--window", "5:2", "--tol", "foo=1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let err = stderr(&o);
    assert!(err.contains("5 problems"), "{err}");
    assert!(err.contains("--potential is required"));
    assert!(err.contains("unknown tolerance `foo`"));
}

#[test]
fn non_regular_field_is_a_run_error() {
    let o = onecut(&["rec", "--potential", "poly:0,0,-1.5,0,0.25", "--n-max", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(stderr(&o).contains("not one-cut regular"), "{}", stderr(&o));
}

#[test]
fn precision_from_environment_and_flags() {
    let o = onecut_env(&["eqm", "--potential", "poly:0,0,0.5"], &[("ONECUT_PRECISION_BITS", "128")]);
    assert_eq!(json(&o)["metadata"]["precision_bits"], 128);
    let o = onecut_env(&["eqm", "--potential", "poly:0,0,0.5", "--precision-bits", "192"], &[("ONECUT_PRECISION_BITS", "128")]);
    assert_eq!(json(&o)["metadata"]["precision_bits"], 192);
    let o = onecut_env(&["eqm", "--potential", "poly:0,0,0.5"], &[("ONECUT_PRECISION_BITS", "lots")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "potential = poly:0,0,0.5\nn_max = 3\ndigits = 12\n").unwrap();
    let meta = dir.path().join("meta.json");
    let o = onecut(&["rec", "--config", cfg.to_str().unwrap(), "--n-max", "4", "--meta-out", meta.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 5);
    assert!(out.lines().nth(1).unwrap().starts_with("1,1.00000000000,"), "{out}");
    let meta: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(meta).unwrap()).unwrap();
    assert!(meta["node_count"].as_u64().unwrap() > 0);
}

#[test]
fn fit_reads_rec_output() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("rec.csv");
    let o = onecut(&["rec", "--potential", "jacobi:1,2", "--n-max", "32"]);
    std::fs::write(&csv, &o.stdout).unwrap();
    let o = onecut(&["fit", "--input", csv.to_str().unwrap(), "--column", "b", "--powers", "0,1,2,3", "--window", "8:32"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert!(v.get("a").is_none());
    let c = &v["b"]["coefficients"];
    assert!((num(&c[0]) - 0.12).abs() < 1e-5);
    assert!((num(&c[1]) + 0.048).abs() < 1e-3);
    assert_eq!(v["b"]["window"], serde_json::json!([8, 32]));
}

#[test]
fn verify_semicircle_passes_and_plots() {
    let dir = tempfile::tempdir().unwrap();
    let plot = dir.path().join("b.dat");
    let o = onecut(&["verify", "--potential", "poly:0,0,0.5", "--n-max", "40", "--richardson", "--plot", plot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["pass"], true);
    assert!(num(&v["beta1_fitted"]).abs() < 1e-10);
    assert_eq!(v["richardson"]["consistent"], true);
    assert!(stderr(&o).contains("overall: pass"));
    let data = std::fs::read_to_string(plot).unwrap();
    assert_eq!(data.lines().count(), 41);
}

#[test]
fn verify_reports_failure_with_exit_one() {
    let o = onecut(&["verify", "--potential", "jacobi:1,2", "--n-max", "32", "--tol", "beta1=1e-12", "--format", "table"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("beta1") && out.contains("FAIL"), "{out}");
    assert!(stderr(&o).contains("verification failed"));
}

#[test]
fn jacobi_check_recovers_beta1() {
    let o = onecut(&["jacobi-check", "--A", "1", "--B", "2", "--n-max", "64"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["pass"], true);
    assert!((num(&v["beta1_fitted"]) + 0.048).abs() < 1e-3);
    assert!((num(&v["beta1_closed"]) + 0.048).abs() < 1e-12);
    assert!(num(&v["max_rel_error"]) < 1e-12);
}

#[test]
fn rh_reports_beta1_routes() {
    let o = onecut(&["rh", "--potential", "poly:0,0,0,0.1,0.25", "--report", "beta1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    let closed = num(&v["beta1_closed"]);
    assert!(closed > 0.0);
    assert!((closed - num(&v["beta1_via_R"])).abs() < 1e-15);
    assert_eq!(v["R11"]["I"], serde_json::json!(["0", "0"]));
}

//! Runs the binary and checks outputs and exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spectral-tail"))
}

fn workspace_file(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

fn power_config() -> PathBuf {
    workspace_file("configs/power.toml")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_config(dir: &tempfile::TempDir, text: &str) -> PathBuf {
    let path = dir.path().join("run.toml");
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn validate_passes_on_the_power_family() {
    let o = run(&["validate", "--config", power_config().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for name in ["Q1", "Q2", "Q3", "p1", "p2", "p3", "alpha2"] {
        assert!(text.lines().any(|l| l.starts_with(name) && l.contains("pass")), "{name} missing in\n{text}");
    }
}

#[test]
fn config_errors_exit_2() {
    let base = std::fs::read_to_string(power_config()).unwrap();
    let dir = tempfile::tempdir().unwrap();

    let bad_a0 = base.replace(
        "decay_class = { kind = \"power-decay\", a0 = 0.5 }",
        "decay_class = { kind = \"power-decay\", a0 = 0.7 }",
    );
    let o = run(&["validate", "--config", write_config(&dir, &bad_a0).to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("a0 outside (0, 2/3)"));

    let no_m = base.replace("m = 0.6\n", "");
    let o = run(&["validate", "--config", write_config(&dir, &no_m).to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing field `m`"));

    let o = run(&["bracket", "--config", "/nonexistent/run.toml", "--epsilon", "0.2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failing_hypothesis_is_reported() {
    let base = std::fs::read_to_string(power_config()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let decreasing_p = base.replace(
        "p = { kind = \"constant\", value = 1.0 }",
        "p = { kind = \"piecewise-linear\", knots = [[0.0, 2.0], [5.0, 1.0]] }",
    );
    let o = run(&["validate", "--config", write_config(&dir, &decreasing_p).to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).lines().any(|l| l.starts_with("p3") && l.contains("FAIL")));
}

#[test]
fn bracket_matches_golden() {
    let o = run(&["bracket", "--config", power_config().to_str().unwrap(), "--epsilon", "0.2"]);
    assert_eq!(o.status.code(), Some(0));
    let golden = std::fs::read_to_string(workspace_file("crates/cli/tests/golden/bracket_power_eps0.2.csv")).unwrap();
    assert_eq!(stdout(&o), golden);
}

#[test]
fn bracket_edge_levels() {
    let cfg = power_config();
    let cfg = cfg.to_str().unwrap();
    let o = run(&["bracket", "--config", cfg, "--epsilon", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().nth(1), Some("2.0,0,0.0,0,0,0.0,0.0,0"));

    let o = run(&["bracket", "--config", cfg, "--epsilon", "0.7"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("< 2"));
}

#[test]
fn per_cell_table() {
    let o = run(&["bracket", "--per-cell", "--config", power_config().to_str().unwrap(), "--epsilon", "0.2"]);
    let text = stdout(&o);
    assert!(text.starts_with("eps,cell,left,right,n_dirichlet,s_dirichlet,n_neumann,s_neumann\n"));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn sweep_without_oracle_matches_golden() {
    let o = run(&["sweep", "--config", power_config().to_str().unwrap(), "--oracle", "off"]);
    assert_eq!(o.status.code(), Some(0));
    let golden = std::fs::read_to_string(workspace_file("crates/cli/tests/golden/sweep_power_no_oracle.csv")).unwrap();
    assert_eq!(stdout(&o), golden);
}

#[test]
fn single_point_sweep_is_bracket_plus_weyl() {
    let cfg = power_config();
    let cfg = cfg.to_str().unwrap();
    let sweep = stdout(&run(&["sweep", "--config", cfg, "--eps-grid", "0.1:0.1:1", "--oracle", "off"]));
    let bracket = stdout(&run(&["bracket", "--config", cfg, "--epsilon", "0.1"]));
    let weyl = stdout(&run(&["weyl", "--config", cfg, "--epsilon", "0.1"]));
    let s: Vec<&str> = sweep.lines().nth(1).unwrap().split(',').collect();
    let b: Vec<&str> = bracket.lines().nth(1).unwrap().split(',').collect();
    let w: Vec<&str> = weyl.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(sweep.lines().count(), 2);
    assert_eq!((s[0], s[1], s[2]), (b[0], b[5], b[6]));
    assert_eq!(s[3], w[1]);
}

#[test]
fn inadmissible_sweep_points_are_skipped() {
    let o = run(&["sweep", "--config", power_config().to_str().unwrap(), "--eps-grid", "0.8:0.2:3", "--oracle", "off"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning: skipping eps = 0.8"));
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn json_output_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.json");
    let o = run(&[
        "weyl", "--config", power_config().to_str().unwrap(), "--epsilon", "0.2", "--format", "json", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v[0]["eps"], 0.2);
    assert!((v[0]["weyl"].as_f64().unwrap() - 0.836_337_624_803_248).abs() < 1e-12);
}

#[test]
fn example33_contract() {
    let o = run(&["example33", "--epsilon", "2", "--b", "25"]);
    assert_eq!(o.status.code(), Some(0));
    let row = stdout(&o);
    let fields: Vec<&str> = row.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(fields[2], "0");
    assert!(fields[7..11].iter().all(|f| f.parse::<f64>().unwrap() == 0.0));

    let o = run(&["example33", "--epsilon", "0.7", "--b", "20"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("e^3"));

    let o = run(&["example33", "--epsilon", "0.9", "--oracle", "off"]);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o);
    let fields: Vec<&str> = line.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(fields[2], "1");
    assert!(fields[12].is_empty());
}

#[test]
fn exponents_and_admissibility() {
    let o = run(&["exponents", "--a0", "0.5", "--m", "0.05"]);
    assert_eq!(stdout(&o), "a0,m,admissible_m_sup,a_param,t0\n0.5,0.05,0.1,0.1625,0.015625\n");
    let o = run(&["exponents", "--a0", "0.5", "--m", "0.2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn thread_count_does_not_change_output() {
    let cfg = power_config();
    let args = ["sweep", "--config", cfg.to_str().unwrap(), "--eps-grid", "0.4:0.1:3"];
    let one = bin().args(args).env("SPECTRAL_TAIL_THREADS", "1").output().unwrap();
    let four = bin().args(args).env("SPECTRAL_TAIL_THREADS", "4").output().unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let bad = bin().args(args).env("SPECTRAL_TAIL_THREADS", "zero").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

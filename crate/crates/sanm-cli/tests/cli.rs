//! End-to-end checks of the command-line surface and its exit codes:
//! 0 success, 1 validation error, 2 analysis assertion failure.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sanm"))
}

fn configs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn field(out: &str, key: &str) -> String {
    out.lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("missing `{key}` in:\n{out}"))
        .to_string()
}

#[test]
fn audit_gains_reports_feasible_defaults() {
    let out = bin()
        .args(["audit-gains", "--config"])
        .arg(configs_dir().join("experiment1.cfg"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(field(&text, "c_r_ok"), "true");
    assert_eq!(field(&text, "all_pd"), "true");
    assert!(field(&text, "c_r_bound").starts_with("1.2307692308"));
}

#[test]
fn audit_gains_flags_infeasible_c_r() {
    let dir = tempdir("audit");
    let cfg = dir.join("bad.cfg");
    std::fs::write(&cfg, "controller.c_r = 2.0\n").unwrap();
    let out = bin().args(["audit-gains", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(field(&stdout(&out), "c_r_ok"), "false");
}

#[test]
fn missing_config_is_a_validation_error() {
    let out = bin()
        .args(["audit-gains", "--config", "/nonexistent/x.cfg"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn invalid_config_value_is_a_validation_error() {
    let dir = tempdir("badval");
    let cfg = dir.join("bad.cfg");
    std::fs::write(&cfg, "run.dt = 0.5\n").unwrap();
    let out = bin()
        .args(["simulate", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sanm-cli-test-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn simulate(cfg: &Path, out_csv: &Path, extra: &[&str]) {
    let out = bin()
        .args(["simulate", "--config"])
        .arg(cfg)
        .arg("--out")
        .arg(out_csv)
        .args(extra)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn simulate_compare_fit_verify_pipeline() {
    let dir = tempdir("pipeline");
    let cfg = dir.join("run.cfg");
    // short run keeps the test quick; everything else is the shipped set
    let mut text = std::fs::read_to_string(configs_dir().join("experiment1.cfg")).unwrap();
    text.push_str("\nrun.duration = 6.0\n");
    std::fs::write(&cfg, text).unwrap();

    let on_csv = dir.join("on.csv");
    let off_csv = dir.join("off.csv");
    simulate(&cfg, &on_csv, &["--seed", "5"]);
    simulate(&cfg, &off_csv, &["--seed", "5", "--sanm", "off"]);

    // determinism: rerunning is byte-identical
    let on2_csv = dir.join("on2.csv");
    simulate(&cfg, &on2_csv, &["--seed", "5"]);
    assert_eq!(
        std::fs::read(&on_csv).unwrap(),
        std::fs::read(&on2_csv).unwrap()
    );

    let out = bin()
        .args(["compare", "--on"])
        .arg(&on_csv)
        .arg("--off")
        .arg(&off_csv)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let ratio: f64 = field(&stdout(&out), "ratio.eps_hat").parse().unwrap();
    assert!(ratio < 1.0, "compensated run should tighten the floor");

    let out = bin()
        .args(["fit", "--trace"])
        .arg(&on_csv)
        .arg("--config")
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let beta: f64 = field(&stdout(&out), "beta_hat").parse().unwrap();
    assert!(beta > 0.0);

    let out = bin()
        .args(["verify-lyapunov", "--trace"])
        .arg(&on_csv)
        .arg("--config")
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let pass: f64 = field(&stdout(&out), "pass_fraction").parse().unwrap();
    assert!(pass >= 0.99);
}

#[test]
fn fit_without_transient_exits_2() {
    let dir = tempdir("notransient");
    let cfg = dir.join("flat.cfg");
    // equilibrium hold: no transient to fit
    let text = "\
plant.scenario = known_inertia
plant.disturbance.kind = none
plant.allocation.thrust_perturbation = 0 0 0 0
plant.allocation.torque_perturbation = 0 0 0 0
controller.sanm_enabled = false
sanm.j_bar_init = 0.011 0.020 0.023
initial.attitude_log = 0 0 0
run.duration = 2.0
";
    std::fs::write(&cfg, text).unwrap();
    let csv = dir.join("flat.csv");
    simulate(&cfg, &csv, &[]);
    let out = bin().args(["fit", "--trace"]).arg(&csv).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("no_transient = true"));
}

#[test]
fn bench_reports_expected_evaluation_count() {
    let out = bin().args(["bench", "--iters", "10000"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(field(&text, "gaussian_evals_per_step"), "15");
    assert_eq!(field(&text, "expected_gaussian_evals"), "15");
    let p99: f64 = field(&text, "p99_us").parse().unwrap();
    assert!(p99 > 0.0);
}

#[test]
fn bench_rejects_too_few_iterations() {
    let out = bin().args(["bench", "--iters", "10"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn compare_shape_mismatch_is_a_validation_error() {
    let dir = tempdir("mismatch");
    let cfg_a = dir.join("a.cfg");
    let cfg_b = dir.join("b.cfg");
    std::fs::write(&cfg_a, "run.duration = 2.0\n").unwrap();
    std::fs::write(&cfg_b, "run.duration = 1.0\n").unwrap();
    let csv_a = dir.join("a.csv");
    let csv_b = dir.join("b.csv");
    simulate(&cfg_a, &csv_a, &[]);
    simulate(&cfg_b, &csv_b, &[]);
    let out = bin()
        .args(["compare", "--on"])
        .arg(&csv_a)
        .arg("--off")
        .arg(&csv_b)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

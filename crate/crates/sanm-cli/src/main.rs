//! Command-line harness: scenario execution, paired comparison, gain audit,
//! envelope fitting, Lyapunov verification and the step-latency benchmark.
//!
//! Exit codes: 0 success, 1 validation error (bad config/arguments/files),
//! 2 analysis assertion failure (audit or verification did not hold).
//! `SANM_LOG=debug|info` controls verbosity.

use clap::{Parser, Subcommand};
use sanm_core::config::SimConfig;
use sanm_core::sim::{bench_step, compare_runs, run_scenario};
use sanm_core::stability::{
    check_gains, fit_envelope_norms, sym2_eigenvalues, verify_decrease, StabilityError,
};
use sanm_core::tol;
use sanm_core::trace::SimTrace;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "sanm",
    about = "SO(3) attitude control testbed with per-axis online identification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a closed-loop scenario and write its trace CSV.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Override the identifier switch: on|off.
        #[arg(long)]
        sanm: Option<String>,
        /// Override the run seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Output CSV path (defaults to the config's run.out or trace.csv).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare a compensated trace against a baseline trace.
    Compare {
        #[arg(long)]
        on: PathBuf,
        #[arg(long)]
        off: PathBuf,
    },
    /// Audit the gain triple: admissible c_R bound and matrix definiteness.
    AuditGains {
        #[arg(long)]
        config: PathBuf,
        /// Configuration error level used by the audit, in (0, 2).
        #[arg(long, default_value_t = 1.0)]
        psi: f64,
    },
    /// Fit the exponential envelope of a trace's error norm.
    Fit {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long, default_value_t = 0.25)]
        tail: f64,
        /// Optional config (for the analytic convergence-rate report).
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Check the Lyapunov decrease inequality along a trace.
    VerifyLyapunov {
        #[arg(long)]
        trace: PathBuf,
        /// Optional config for the gains (defaults match experiment1).
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Time the controller-plus-identifier step.
    Bench {
        #[arg(long, default_value_t = 20_000)]
        iters: usize,
        /// Optional config (defaults match experiment1).
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("SANM_LOG")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn load_config(path: &PathBuf) -> Result<SimConfig, String> {
    SimConfig::load(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_trace(path: &PathBuf) -> Result<SimTrace, String> {
    SimTrace::read_csv(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Simulate {
            config,
            sanm,
            seed,
            out,
        } => {
            let mut cfg = load_config(&config)?;
            match sanm.as_deref() {
                Some("on") => cfg.controller.sanm_enabled = true,
                Some("off") => cfg.controller.sanm_enabled = false,
                Some(other) => return Err(format!("--sanm must be on|off, got `{other}`")),
                None => {}
            }
            if let Some(seed) = seed {
                cfg.run.seed = seed;
            }
            let out_path = out
                .or_else(|| cfg.run.out.clone())
                .unwrap_or_else(|| PathBuf::from("trace.csv"));
            let result = run_scenario(&cfg).map_err(|e| e.to_string())?;
            result
                .trace
                .write_csv(&out_path)
                .map_err(|e| e.to_string())?;
            let last = result.trace.rows.last().expect("nonempty trace");
            println!("rows = {}", result.trace.len());
            println!("dt = {}", cfg.run.dt);
            println!("seed = {}", cfg.run.seed);
            println!("sanm_enabled = {}", cfg.controller.sanm_enabled);
            println!("infeasible_steps = {}", result.infeasible_steps);
            println!("clamped_steps = {}", result.clamped_steps);
            println!("final_z_norm = {:.6e}", last.z_norm());
            println!(
                "tail_max_z = {:.6e}",
                result.trace.tail_max_z(tol::TAIL_FRACTION_DEFAULT)
            );
            println!("out = {}", out_path.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Compare { on, off } => {
            let t_on = load_trace(&on)?;
            let t_off = load_trace(&off)?;
            let report = compare_runs(&t_on, &t_off).map_err(|e| e.to_string())?;
            println!("on.rms_e_r = {:.6e}", report.on.rms_e_r);
            println!("on.rms_e_omega = {:.6e}", report.on.rms_e_omega);
            println!("on.eps_hat = {:.6e}", report.on.eps_hat);
            println!("on.settling_time = {:.4}", report.on.settling_time);
            println!("off.rms_e_r = {:.6e}", report.off.rms_e_r);
            println!("off.rms_e_omega = {:.6e}", report.off.rms_e_omega);
            println!("off.eps_hat = {:.6e}", report.off.eps_hat);
            println!("off.settling_time = {:.4}", report.off.settling_time);
            println!("delta.rms_e_r = {:.6e}", report.d_rms_e_r);
            println!("delta.eps_hat = {:.6e}", report.d_eps_hat);
            println!("ratio.eps_hat = {:.6}", report.eps_ratio);
            println!("ratio.rms_e_r = {:.6}", report.rms_e_r_ratio);
            Ok(ExitCode::SUCCESS)
        }
        Command::AuditGains { config, psi } => {
            let cfg = load_config(&config)?;
            let report = check_gains(&cfg.gains(), psi).map_err(|e| e.to_string())?;
            println!("psi_r = {}", report.psi_r_used);
            println!("c_r = {}", cfg.controller.c_r);
            println!("c_r_bound = {:.10}", report.c_r_bound);
            println!("c_r_ok = {}", report.c_r_ok);
            println!(
                "m_r1_eigs = {:.10} {:.10}",
                report.eigs_m_r1[0], report.eigs_m_r1[1]
            );
            println!(
                "m_r2_eigs = {:.10} {:.10}",
                report.eigs_m_r2[0], report.eigs_m_r2[1]
            );
            println!(
                "m_r_eigs = {:.10} {:.10}",
                report.eigs_m_r[0], report.eigs_m_r[1]
            );
            println!("all_pd = {}", report.all_pd);
            if report.c_r_ok && report.all_pd {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(2))
            }
        }
        Command::Fit {
            trace,
            tail,
            config,
        } => {
            let t = load_trace(&trace)?;
            let dt = t.dt().ok_or("trace too short")?;
            match fit_envelope_norms(&t.z_norms(), dt, tail) {
                Ok(fit) => {
                    println!("eps_hat = {:.6e}", fit.eps_hat);
                    println!("beta_hat = {:.6}", fit.beta_hat);
                    println!("alpha_hat = {:.6}", fit.alpha_hat);
                    println!("residual = {:.6}", fit.residual);
                    println!("window_len = {}", fit.window_len);
                    if let Some(cfg_path) = config {
                        let cfg = load_config(&cfg_path)?;
                        // analytic rate for the constructed quadratic sandwich:
                        // beta = lambda_min(M_R) / (2 p2 lambda_max(M_R2))
                        let gains = cfg.gains();
                        let report = check_gains(&gains, 1.0).map_err(|e| e.to_string())?;
                        let max_v_re = t
                            .rows
                            .iter()
                            .map(|r| r.v_re)
                            .fold(0.0f64, f64::max);
                        let lam_max_m2 = report.eigs_m_r2[1];
                        let p2 = 1.0 + max_v_re / (lam_max_m2 * fit.eps_hat * fit.eps_hat);
                        let beta_analytic = report.eigs_m_r[0] / (2.0 * p2 * lam_max_m2);
                        println!("beta_analytic = {:.6e}", beta_analytic);
                        println!("p2 = {:.6e}", p2);
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Err(StabilityError::NoTransient) => {
                    println!("no_transient = true");
                    Ok(ExitCode::from(2))
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::VerifyLyapunov { trace, config } => {
            let t = load_trace(&trace)?;
            let cfg = match config {
                Some(path) => load_config(&path)?,
                None => SimConfig::default(),
            };
            let gains = cfg.gains();
            // measured stand-ins for the constant term: approximation error
            // from the steady-state tail, deviation bound from the trace
            let n = t.len();
            let tail_start = n - ((n as f64) * tol::TAIL_FRACTION_DEFAULT).max(1.0) as usize;
            let eps_r = t.rows[tail_start..]
                .iter()
                .map(|r| {
                    (0..3)
                        .map(|a| (r.phi_true[a] - r.phi_bar[a]).abs())
                        .fold(0.0f64, f64::max)
                })
                .fold(0.0f64, f64::max);
            let eps_m = t
                .rows
                .iter()
                .map(|r| {
                    r.delta_m
                        .iter()
                        .map(|v| v * v)
                        .sum::<f64>()
                        .sqrt()
                })
                .fold(0.0f64, f64::max);
            let lambda_min_j = cfg.inertia().min_principal();
            let c_r = sanm_core::stability::c_r_constant(eps_r, eps_m, lambda_min_j, &gains)
                .map_err(|e| e.to_string())?;
            let mut samples = t.lyapunov_samples();
            let report = verify_decrease(&mut samples, &gains, c_r);
            let lam = sym2_eigenvalues(
                gains.k_r * gains.c_r / 2.0,
                -gains.k_omega * gains.c_r / 2.0,
                (gains.k_omega - gains.c_r) / 2.0,
            );
            println!("lambda_min_m_r = {:.10}", lam[0]);
            println!("eps_r_measured = {:.6e}", eps_r);
            println!("eps_m_measured = {:.6e}", eps_m);
            println!("c_r_constant = {:.6e}", c_r);
            println!("checked = {}", report.checked);
            println!("violations = {}", report.violations);
            println!("pass_fraction = {:.6}", report.pass_fraction);
            println!("floor = {:.6e}", report.floor);
            println!("tolerance = {:.6e}", report.tolerance);
            if !report.violation_times.is_empty() {
                let times: Vec<String> = report
                    .violation_times
                    .iter()
                    .map(|t| format!("{t:.4}"))
                    .collect();
                println!("violation_times = {}", times.join(" "));
            }
            if report.pass_fraction >= 0.99 {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(2))
            }
        }
        Command::Bench { iters, config } => {
            let cfg = match config {
                Some(path) => load_config(&path)?,
                None => SimConfig::default(),
            };
            let stats = bench_step(&cfg, iters).map_err(|e| e.to_string())?;
            let l = cfg.sanm.centers_e_r[0].len() as u64;
            println!("iterations = {}", stats.iterations);
            println!("gaussian_evals_per_step = {}", stats.gaussian_evals_per_step);
            println!("expected_gaussian_evals = {}", 3 * l);
            println!("mean_us = {:.3}", stats.mean_us);
            println!("p50_us = {:.3}", stats.p50_us);
            println!("p99_us = {:.3}", stats.p99_us);
            println!("max_us = {:.3}", stats.max_us);
            if stats.gaussian_evals_per_step == 3 * l {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(2))
            }
        }
    }
}

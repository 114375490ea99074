//! Closed-loop scenario execution, paired-run comparison and the
//! control-step latency benchmark.
//!
//! Each run is single-threaded and owns its state; traces are pure
//! functions of `(config, seed)`, so identical inputs produce byte-identical
//! CSV output.

use crate::config::SimConfig;
use crate::controller::{compute_moment, desired_rates, AttitudeCommand, ControllerError};
use crate::rigid_body::{
    actual_moment, eval_disturbance, gyroscopic_accel, step, RigidBodyState, Scenario,
};
use crate::sanm::{sanm_step, SanmState};
use crate::so3::{
    angular_velocity_error, attitude_error, exp_so3, psi_r, So3Error, Vec3,
};
use crate::stability::{fit_envelope_norms, lyapunov_sample, reciprocal_inertia_error, EnvelopeFit, StabilityError};
use crate::trace::{rates_from_arrays, SimTrace, TraceRow};
use crate::tol;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("trajectory error: {0}")]
    Trajectory(#[from] ControllerError),
    #[error("integration error: {0}")]
    Integration(#[from] So3Error),
    #[error("traces differ in shape: {0}")]
    ShapeMismatch(String),
    #[error("analysis error: {0}")]
    Analysis(#[from] StabilityError),
    #[error("{0}")]
    InvalidArgument(String),
}

/// A finished run: the trace plus actuator saturation counters.
#[derive(Debug, Clone, PartialEq)]
pub struct SimOutput {
    pub trace: SimTrace,
    /// Steps whose mixing demanded a negative rotor thrust.
    pub infeasible_steps: usize,
    /// Steps with any rotor clamped.
    pub clamped_steps: usize,
}

/// Runs one closed-loop scenario. Deterministic in `(config, seed)`.
///
/// Per control step: reference command, tracking errors (from the measured
/// state when sensor noise is enabled), identifier update (when enabled),
/// per-axis moment law, rotor allocation, plant step, trace row. The
/// identifier consumes the previous step's moment, matching the one-step
/// causality of a discrete control loop.
pub fn run_scenario(config: &SimConfig) -> Result<SimOutput, SimError> {
    config
        .validate()
        .map_err(|e| SimError::InvalidArgument(e.to_string()))?;

    let mut rng = ChaCha8Rng::seed_from_u64(config.run.seed);
    let mut phase_offsets = [0.0f64; 3];
    if config.plant.disturbance.seeded_phases {
        for (axis, offset) in phase_offsets.iter_mut().enumerate() {
            // constant (zero-frequency) axes keep their configured phase
            if config.plant.disturbance.frequency[axis] > 0.0 {
                *offset = rng.gen_range(0.0..core::f64::consts::TAU);
            }
        }
    }

    let disturbance = config.disturbance(phase_offsets);
    let trajectory = config.trajectory();
    let gains = config.gains();
    let allocation = config.allocation();
    let j_true = config.inertia();
    let scenario = config.plant.scenario;
    let rates = rates_from_arrays(config.sanm.eta, config.sanm.gamma);
    let dt = config.run.dt;
    let steps = (config.run.duration / dt).round().max(1.0) as usize;

    let noise_omega = Normal::new(0.0, config.plant.noise.omega_std.max(f64::MIN_POSITIVE))
        .expect("valid std");
    let noise_att = Normal::new(0.0, config.plant.noise.attitude_std.max(f64::MIN_POSITIVE))
        .expect("valid std");
    let noisy = |rng: &mut ChaCha8Rng, n: &Normal<f64>| {
        Vec3::new(n.sample(rng), n.sample(rng), n.sample(rng))
    };

    let mut state = RigidBodyState::new(
        exp_so3(Vec3::from_array(config.initial.attitude_log)),
        Vec3::from_array(config.initial.omega),
        0.0,
    );
    let mut sanm = config.sanm_state();
    let j_bar_fixed = sanm.j_bar();
    let mut m_d_prev = Vec3::zero();
    let mut trace = SimTrace::new(sanm.rbf[0].len());
    trace.rows.reserve(steps);
    let mut infeasible_steps = 0usize;
    let mut clamped_steps = 0usize;

    for i in 0..steps {
        let t = i as f64 * dt;
        let cmd = desired_rates(&trajectory, t, dt)?;

        // measured state (noise defaults to zero and adds nothing)
        let measured = if config.plant.noise.attitude_std > 0.0 || config.plant.noise.omega_std > 0.0
        {
            let r_meas = if config.plant.noise.attitude_std > 0.0 {
                state.r * exp_so3(noisy(&mut rng, &noise_att))
            } else {
                state.r
            };
            let omega_meas = if config.plant.noise.omega_std > 0.0 {
                state.omega + noisy(&mut rng, &noise_omega)
            } else {
                state.omega
            };
            RigidBodyState::new(r_meas, omega_meas, t)
        } else {
            state
        };

        let e_r = attitude_error(&measured.r, &cmd.rd);
        let e_omega = angular_velocity_error(measured.omega, &measured.r, &cmd.rd, cmd.omega_d);

        // identifier state active at this step (logged), then advanced
        let w_norm = sanm.weight_norms();
        let mut weights = Vec::with_capacity(3 * trace.neuron_count);
        for axis in 0..3 {
            weights.extend_from_slice(&sanm.rbf[axis].weights);
        }
        let (j_bar, phi_bar) = if config.controller.sanm_enabled {
            let (next, j_bar, phi_bar) =
                sanm_step(&sanm, e_r, e_omega, m_d_prev, gains.c_r, dt);
            sanm = next;
            (j_bar, phi_bar)
        } else {
            (j_bar_fixed, Vec3::zero())
        };

        let m_d = compute_moment(
            e_r, e_omega, &measured, &cmd, &gains, j_bar, phi_bar, &j_true, scenario,
        );
        let f_d = -trajectory.force(t).dot(measured.r.rotate(Vec3::new(0.0, 0.0, 1.0)));
        let wrench = actual_moment(&allocation, m_d, f_d);
        if wrench.infeasible {
            infeasible_steps += 1;
        }
        if wrench.clamped {
            clamped_steps += 1;
        }

        // generalized disturbance the identifier is expected to learn:
        // external only when the inertia is known, external plus folded
        // gyroscopic term otherwise
        let phi_ext = eval_disturbance(&disturbance, &state);
        let phi_true = match scenario {
            Scenario::KnownInertia => phi_ext,
            Scenario::UnknownInertia => phi_ext - gyroscopic_accel(state.omega, &j_true),
        };

        let psi = psi_r(&measured.r, &cmd.rd);
        let j_tilde = reciprocal_inertia_error(j_true.as_vec3(), j_bar);
        // weight error norms against the zero reference (exact for
        // zero-disturbance runs, a reported proxy otherwise)
        let lyap = lyapunov_sample(t, e_r, e_omega, psi, j_tilde, w_norm, &gains, &rates);

        trace.rows.push(TraceRow {
            t,
            r: flatten(state.r.matrix().m),
            omega: state.omega.to_array(),
            rd: flatten(cmd.rd.matrix().m),
            omega_d: cmd.omega_d.to_array(),
            e_r: e_r.to_array(),
            e_omega: e_omega.to_array(),
            psi_r: psi,
            m_d: m_d.to_array(),
            m: wrench.moment.to_array(),
            delta_m: wrench.delta_m.to_array(),
            phi_true: phi_true.to_array(),
            phi_bar: phi_bar.to_array(),
            j_bar: j_bar.to_array(),
            w_norm: w_norm.to_array(),
            v_rs: lyap.v_rs,
            v_re: lyap.v_re,
            v_r: lyap.v_r,
            weights,
        });

        state = step(&state, wrench.moment, &j_true, &disturbance, scenario, dt)?;
        m_d_prev = m_d;
    }

    if infeasible_steps > 0 {
        log::info!(
            "{} of {} steps demanded negative rotor thrust (clamped)",
            infeasible_steps,
            steps
        );
    }
    Ok(SimOutput {
        trace,
        infeasible_steps,
        clamped_steps,
    })
}

fn flatten(m: [[f64; 3]; 3]) -> [f64; 9] {
    [
        m[0][0], m[0][1], m[0][2], m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2],
    ]
}

/// Envelope fit over a trace's `|z_R|` series.
pub fn fit_envelope(trace: &SimTrace, tail_fraction: f64) -> Result<EnvelopeFit<f64>, SimError> {
    let dt = trace
        .dt()
        .ok_or_else(|| SimError::InvalidArgument("trace too short".into()))?;
    Ok(fit_envelope_norms(&trace.z_norms(), dt, tail_fraction)?)
}

/// Steady-state summary of one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunMetrics {
    /// RMS `|e_R|` over the steady-state tail.
    pub rms_e_r: f64,
    /// RMS `|e_Omega|` over the steady-state tail.
    pub rms_e_omega: f64,
    /// Last time `|z_R|` exceeded the settling radius (run duration when
    /// it never settles).
    pub settling_time: f64,
    /// Max `|z_R|` over the tail.
    pub eps_hat: f64,
}

fn metrics(trace: &SimTrace) -> RunMetrics {
    let n = trace.len();
    let tail_start = n - ((n as f64) * tol::TAIL_FRACTION_DEFAULT).floor().max(1.0) as usize;
    let tail = &trace.rows[tail_start..];
    let mean_sq = |f: &dyn Fn(&TraceRow) -> f64| {
        tail.iter().map(|r| f(r) * f(r)).sum::<f64>() / tail.len() as f64
    };
    let er = |r: &TraceRow| r.e_r_vec().norm();
    let eo = |r: &TraceRow| r.e_omega_vec().norm();
    let duration = trace.rows.last().map(|r| r.t).unwrap_or(0.0);
    let settling_time = trace
        .rows
        .iter()
        .rev()
        .find(|r| r.z_norm() > tol::SETTLING_RADIUS)
        .map(|r| r.t)
        .unwrap_or(0.0);
    let settled = tail.iter().all(|r| r.z_norm() <= tol::SETTLING_RADIUS);
    RunMetrics {
        rms_e_r: mean_sq(&er).sqrt(),
        rms_e_omega: mean_sq(&eo).sqrt(),
        settling_time: if settled { settling_time } else { duration },
        eps_hat: trace.tail_max_z(tol::TAIL_FRACTION_DEFAULT),
    }
}

/// Paired comparison of a compensated (`on`) and baseline (`off`) run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonReport {
    pub on: RunMetrics,
    pub off: RunMetrics,
    /// `on - off` differences (zero for identical traces).
    pub d_rms_e_r: f64,
    pub d_rms_e_omega: f64,
    pub d_eps_hat: f64,
    pub d_settling_time: f64,
    /// `on / off` ratios.
    pub eps_ratio: f64,
    pub rms_e_r_ratio: f64,
}

/// Compares two traces of equal shape (same dt, same length).
pub fn compare_runs(on: &SimTrace, off: &SimTrace) -> Result<ComparisonReport, SimError> {
    if on.len() != off.len() {
        return Err(SimError::ShapeMismatch(format!(
            "row counts {} vs {}",
            on.len(),
            off.len()
        )));
    }
    let (dt_on, dt_off) = match (on.dt(), off.dt()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(SimError::ShapeMismatch("trace too short".into())),
    };
    if (dt_on - dt_off).abs() > 1e-12 * dt_on.abs().max(1.0) {
        return Err(SimError::ShapeMismatch(format!(
            "sample intervals {dt_on} vs {dt_off}"
        )));
    }
    let m_on = metrics(on);
    let m_off = metrics(off);
    Ok(ComparisonReport {
        on: m_on,
        off: m_off,
        d_rms_e_r: m_on.rms_e_r - m_off.rms_e_r,
        d_rms_e_omega: m_on.rms_e_omega - m_off.rms_e_omega,
        d_eps_hat: m_on.eps_hat - m_off.eps_hat,
        d_settling_time: m_on.settling_time - m_off.settling_time,
        eps_ratio: m_on.eps_hat / m_off.eps_hat,
        rms_e_r_ratio: m_on.rms_e_r / m_off.rms_e_r,
    })
}

/// Latency statistics of the controller-plus-identifier step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatencyStats {
    pub iterations: usize,
    pub mean_us: f64,
    pub p50_us: f64,
    pub p99_us: f64,
    pub max_us: f64,
    /// Gaussian activations evaluated per step (`3 l` by construction).
    pub gaussian_evals_per_step: u64,
}

/// Times one full controller step (reference, errors, identifier update,
/// moment law, allocation; no plant) in a warm loop and reports
/// per-iteration latency percentiles plus the Gaussian evaluation count.
pub fn bench_step(config: &SimConfig, iterations: usize) -> Result<LatencyStats, SimError> {
    if iterations < 10_000 {
        return Err(SimError::InvalidArgument(format!(
            "need at least 10000 iterations, got {iterations}"
        )));
    }
    config
        .validate()
        .map_err(|e| SimError::InvalidArgument(e.to_string()))?;

    let trajectory = config.trajectory();
    let gains = config.gains();
    let allocation = config.allocation();
    let j_true = config.inertia();
    let scenario = config.plant.scenario;
    let dt = config.run.dt;
    let sanm0 = config.sanm_state();
    let state = RigidBodyState::new(
        exp_so3(Vec3::from_array(config.initial.attitude_log)),
        Vec3::new(0.12, -0.08, 0.05),
        0.0,
    );
    let m_d_prev = Vec3::new(0.02, -0.01, 0.005);

    let one_step = |sanm: &SanmState<f64>| -> (Vec3<f64>, f64) {
        let cmd: AttitudeCommand<f64> = desired_rates(&trajectory, state.t, dt).expect("reference");
        let e_r = attitude_error(&state.r, &cmd.rd);
        let e_omega = angular_velocity_error(state.omega, &state.r, &cmd.rd, cmd.omega_d);
        let (_, j_bar, phi_bar) = sanm_step(sanm, e_r, e_omega, m_d_prev, gains.c_r, dt);
        let m_d = compute_moment(
            e_r, e_omega, &state, &cmd, &gains, j_bar, phi_bar, &j_true, scenario,
        );
        let f_d = -trajectory.force(state.t).dot(state.r.rotate(Vec3::new(0.0, 0.0, 1.0)));
        let wrench = actual_moment(&allocation, m_d, f_d);
        (wrench.moment, wrench.thrust)
    };

    // instrument one step for the evaluation count
    crate::sanm::reset_gaussian_eval_count();
    let _ = one_step(&sanm0);
    let gaussian_evals_per_step = crate::sanm::gaussian_eval_count();
    crate::sanm::reset_gaussian_eval_count();

    // warm-up
    for _ in 0..1_000 {
        std::hint::black_box(one_step(std::hint::black_box(&sanm0)));
    }

    let mut nanos: Vec<u64> = Vec::with_capacity(iterations);
    for _ in 0..iterations {
        let start = Instant::now();
        std::hint::black_box(one_step(std::hint::black_box(&sanm0)));
        nanos.push(start.elapsed().as_nanos() as u64);
    }
    nanos.sort_unstable();
    let mean = nanos.iter().sum::<u64>() as f64 / nanos.len() as f64;
    let pct = |p: f64| nanos[((nanos.len() as f64 * p) as usize).min(nanos.len() - 1)] as f64;
    Ok(LatencyStats {
        iterations,
        mean_us: mean / 1e3,
        p50_us: pct(0.50) / 1e3,
        p99_us: pct(0.99) / 1e3,
        max_us: *nanos.last().unwrap() as f64 / 1e3,
        gaussian_evals_per_step,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_config() -> SimConfig {
        let mut cfg = SimConfig::default();
        cfg.run.duration = 2.0;
        cfg
    }

    #[test]
    fn equilibrium_hold_stays_at_zero() {
        // exact knowledge, zero errors, no disturbance, exact allocation
        let mut cfg = SimConfig::default();
        cfg.plant.scenario = Scenario::KnownInertia;
        cfg.plant.disturbance.kind = "none".into();
        cfg.plant.allocation.thrust_perturbation = [0.0; 4];
        cfg.plant.allocation.torque_perturbation = [0.0; 4];
        cfg.controller.sanm_enabled = false;
        cfg.sanm.j_bar_init = cfg.plant.inertia;
        cfg.initial.attitude_log = [0.0; 3];
        cfg.run.duration = 2.0;
        let out = run_scenario(&cfg).unwrap();
        let max_z = out.trace.z_norms().into_iter().fold(0.0, f64::max);
        assert!(max_z <= 1e-6, "max |z| {max_z:e}");
        assert_eq!(out.infeasible_steps, 0);
    }

    #[test]
    fn identical_config_and_seed_bit_identical_csv() {
        let cfg = quick_config();
        let a = run_scenario(&cfg).unwrap();
        let b = run_scenario(&cfg).unwrap();
        assert_eq!(a.trace.to_csv(), b.trace.to_csv());
    }

    #[test]
    fn different_seed_changes_disturbance_phases() {
        let mut cfg = quick_config();
        let a = run_scenario(&cfg).unwrap();
        cfg.run.seed = 2;
        let b = run_scenario(&cfg).unwrap();
        assert_ne!(a.trace.rows.last().unwrap().r, b.trace.rows.last().unwrap().r);
    }

    #[test]
    fn first_step_matches_between_enabled_and_disabled() {
        // zero-initialized weights leave the first moment identical
        let mut on = quick_config();
        on.run.duration = 0.25;
        let mut off = on.clone();
        off.controller.sanm_enabled = false;
        let ta = run_scenario(&on).unwrap().trace;
        let tb = run_scenario(&off).unwrap().trace;
        assert_eq!(ta.rows[0].m_d, tb.rows[0].m_d);
        assert_ne!(ta.rows[10].m_d, tb.rows[10].m_d);
    }

    #[test]
    fn compare_identical_traces_zero_deltas() {
        let cfg = quick_config();
        let t = run_scenario(&cfg).unwrap().trace;
        let report = compare_runs(&t, &t).unwrap();
        assert_eq!(report.d_rms_e_r, 0.0);
        assert_eq!(report.d_rms_e_omega, 0.0);
        assert_eq!(report.d_eps_hat, 0.0);
        assert_eq!(report.eps_ratio, 1.0);
    }

    #[test]
    fn compare_rejects_shape_mismatch() {
        let mut cfg = quick_config();
        let a = run_scenario(&cfg).unwrap().trace;
        cfg.run.duration = 1.0;
        let b = run_scenario(&cfg).unwrap().trace;
        assert!(matches!(
            compare_runs(&a, &b),
            Err(SimError::ShapeMismatch(_))
        ));
    }

    #[test]
    fn synthetic_eps_ratio() {
        // two synthetic traces whose tails sit at 0.02 and 0.06
        let mk = |tail: f64| {
            let mut trace = SimTrace::new(1);
            for i in 0..400 {
                let t = i as f64 * 0.0025;
                let z = (2.0f64 * (-25.0 * t).exp()).max(tail);
                trace.rows.push(TraceRow {
                    t,
                    r: [0.0; 9],
                    omega: [0.0; 3],
                    rd: [0.0; 9],
                    omega_d: [0.0; 3],
                    e_r: [z, 0.0, 0.0],
                    e_omega: [0.0; 3],
                    psi_r: 0.0,
                    m_d: [0.0; 3],
                    m: [0.0; 3],
                    delta_m: [0.0; 3],
                    phi_true: [0.0; 3],
                    phi_bar: [0.0; 3],
                    j_bar: [0.0; 3],
                    w_norm: [0.0; 3],
                    v_rs: 0.0,
                    v_re: 0.0,
                    v_r: 0.0,
                    weights: vec![0.0; 3],
                });
            }
            trace
        };
        let report = compare_runs(&mk(0.02), &mk(0.06)).unwrap();
        assert!((report.eps_ratio - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn bench_requires_enough_iterations() {
        let cfg = SimConfig::default();
        assert!(matches!(
            bench_step(&cfg, 100),
            Err(SimError::InvalidArgument(_))
        ));
    }

    #[test]
    fn bench_counts_three_l_evaluations() {
        let cfg = SimConfig::default();
        let stats = bench_step(&cfg, 10_000).unwrap();
        assert_eq!(stats.gaussian_evals_per_step, 15);
        assert!(stats.mean_us > 0.0);
        assert!(stats.p99_us >= stats.p50_us);
    }

    #[test]
    fn bench_count_scales_with_neurons() {
        let mut cfg = SimConfig::default();
        for axis in 0..3 {
            cfg.sanm.centers_e_r[axis] = (0..10).map(|k| k as f64 * 0.2 - 1.0).collect();
            cfg.sanm.centers_e_omega[axis] = (0..10).map(|k| k as f64 * 2.0 - 10.0).collect();
            cfg.sanm.widths[axis] = vec![2.0; 10];
        }
        let stats = bench_step(&cfg, 10_000).unwrap();
        assert_eq!(stats.gaussian_evals_per_step, 30);
    }
}

//! Numerical verification of the stability machinery: gain feasibility,
//! Lyapunov candidate values and decrease, attraction-domain membership and
//! the exponential envelope of the closed-loop error norm.
//!
//! Pure post-processing over immutable data; trivially parallel across
//! traces.

use crate::controller::ControllerGains;
use crate::so3::{attitude_error, psi_r, RotationMatrix, Vec3};
use crate::{tol, Real};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum StabilityError {
    #[error("psi_R = {psi} outside the open interval (0, 2)")]
    InvalidPsi { psi: f64 },
    #[error("no transient to fit: the trace starts at or below its floor")]
    NoTransient,
    #[error("gain ordering violated: k_omega = {k_omega} <= c_r = {c_r}")]
    GainOrder { k_omega: f64, c_r: f64 },
}

/// Eigenvalues of the symmetric 2x2 matrix `[[a, b], [b, d]]`, ascending.
pub fn sym2_eigenvalues<T: Real>(a: T, b: T, d: T) -> [T; 2] {
    let half = T::lit(0.5);
    let mean = (a + d) * half;
    let rad = (((a - d) * half) * ((a - d) * half) + b * b).sqrt();
    [mean - rad, mean + rad]
}

/// The three audit matrices as `[[a, b], [b, d]]` triples `(a, b, d)`:
/// the sandwich bounds `M_R1`, `M_R2` of the state candidate and the
/// decrease matrix `M_R`.
pub fn audit_matrices<T: Real>(gains: &ControllerGains<T>, psi_r: T) -> [(T, T, T); 3] {
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    [
        (gains.k_r * half, -gains.c_r * half, half),
        (gains.k_r / (two - psi_r), gains.c_r * half, half),
        (
            gains.k_r * gains.c_r * half,
            -gains.k_omega * gains.c_r * half,
            (gains.k_omega - gains.c_r) * half,
        ),
    ]
}

/// Gain feasibility report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainAuditReport<T> {
    /// `min{ k_R k_O/(k_O^2 + k_R), sqrt(k_R), sqrt(2 k_R/(2 - psi)), k_O }`.
    pub c_r_bound: T,
    pub c_r_ok: bool,
    /// Eigenvalue pairs, ascending.
    pub eigs_m_r1: [T; 2],
    pub eigs_m_r2: [T; 2],
    pub eigs_m_r: [T; 2],
    /// Every minimum eigenvalue positive.
    pub all_pd: bool,
    pub psi_r_used: T,
}

/// Audits the gain triple at configuration error level `psi_r in (0, 2)`:
/// evaluates the admissible `c_R` bound and the eigenvalues of the three
/// audit matrices.
pub fn check_gains<T: Real>(
    gains: &ControllerGains<T>,
    psi_r: T,
) -> Result<GainAuditReport<T>, StabilityError> {
    let two = T::lit(2.0);
    if psi_r <= T::zero() || psi_r >= two {
        return Err(StabilityError::InvalidPsi {
            psi: psi_r.to_f64().unwrap_or(f64::NAN),
        });
    }
    let k_r = gains.k_r;
    let k_o = gains.k_omega;
    let c_r_bound = (k_r * k_o / (k_o * k_o + k_r))
        .min(k_r.sqrt())
        .min((two * k_r / (two - psi_r)).sqrt())
        .min(k_o);
    let [m1, m2, mr] = audit_matrices(gains, psi_r);
    let eigs_m_r1 = sym2_eigenvalues(m1.0, m1.1, m1.2);
    let eigs_m_r2 = sym2_eigenvalues(m2.0, m2.1, m2.2);
    let eigs_m_r = sym2_eigenvalues(mr.0, mr.1, mr.2);
    Ok(GainAuditReport {
        c_r_bound,
        c_r_ok: gains.c_r < c_r_bound,
        eigs_m_r1,
        eigs_m_r2,
        eigs_m_r,
        all_pd: eigs_m_r1[0] > T::zero() && eigs_m_r2[0] > T::zero() && eigs_m_r[0] > T::zero(),
        psi_r_used: psi_r,
    })
}

/// Per-axis adaptation rates of the estimation candidate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptationRates<T> {
    pub eta: Vec3<T>,
    pub gamma: Vec3<T>,
}

/// One Lyapunov sample along a trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovSample<T> {
    pub t: T,
    /// State candidate `k_R Psi + |e_O|^2/2 + c_R e_R . e_O`.
    pub v_rs: T,
    /// Estimation candidate `sum_j eta_j Jtilde_j^2/2 + |Wtilde_j|^2/(2 gamma_j)`.
    pub v_re: T,
    pub v_r: T,
    /// `|(|e_R|, |e_O|)|`.
    pub z_r_norm: T,
    /// Central-difference derivative of `v_r`, filled by [`verify_decrease`].
    pub vdot_fd: Option<T>,
}

/// Reciprocal inertia estimation error `1/J - 1/Jbar`, componentwise.
pub fn reciprocal_inertia_error<T: Real>(j_true: Vec3<T>, j_bar: Vec3<T>) -> Vec3<T> {
    Vec3::new(
        T::one() / j_true.x - T::one() / j_bar.x,
        T::one() / j_true.y - T::one() / j_bar.y,
        T::one() / j_true.z - T::one() / j_bar.z,
    )
}

/// Evaluates the Lyapunov candidates at one instant. `psi` is the attitude
/// configuration error scalar; estimation errors come from the caller (the
/// reciprocal inertia error and per-axis weight error norms).
#[allow(clippy::too_many_arguments)]
pub fn lyapunov_sample<T: Real>(
    t: T,
    e_r: Vec3<T>,
    e_omega: Vec3<T>,
    psi: T,
    j_tilde: Vec3<T>,
    w_tilde_norms: Vec3<T>,
    gains: &ControllerGains<T>,
    rates: &AdaptationRates<T>,
) -> LyapunovSample<T> {
    let half = T::lit(0.5);
    let v_rs = gains.k_r * psi + half * e_omega.norm_squared() + gains.c_r * e_r.dot(e_omega);
    let mut v_re = T::zero();
    for j in 0..3 {
        v_re = v_re
            + half * rates.eta[j] * j_tilde[j] * j_tilde[j]
            + w_tilde_norms[j] * w_tilde_norms[j] / (T::lit(2.0) * rates.gamma[j]);
    }
    let z = (e_r.norm_squared() + e_omega.norm_squared()).sqrt();
    LyapunovSample {
        t,
        v_rs,
        v_re,
        v_r: v_rs + v_re,
        z_r_norm: z,
        vdot_fd: None,
    }
}

/// Attraction-domain membership with per-condition margins.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainReport<T> {
    pub psi0: T,
    pub e_r_norm: T,
    pub e_omega_norm: T,
    /// `0 < Psi(0) < 2` (a zero-error start reports `converged_boundary`
    /// and is treated as inside).
    pub psi_ok: bool,
    /// `|e_R(0)| < 1`.
    pub e_r_ok: bool,
    /// `|e_O(0)|^2 < k_R (2 - Psi(0)) - c_R^2/2`.
    pub omega_ok: bool,
    pub psi_margin: T,
    pub e_r_margin: T,
    pub omega_margin: T,
    pub converged_boundary: bool,
    pub inside: bool,
}

/// Checks the initial conditions against the almost-global attraction
/// domain. `Psi(0) = 0` (already converged) sits on the domain boundary as
/// printed; it is reported distinctly and treated as inside.
pub fn check_attraction_domain<T: Real>(
    r0: &RotationMatrix<T>,
    rd0: &RotationMatrix<T>,
    e_omega0: Vec3<T>,
    gains: &ControllerGains<T>,
) -> DomainReport<T> {
    let two = T::lit(2.0);
    let psi0 = psi_r(r0, rd0);
    let e_r_norm = attitude_error(r0, rd0).norm();
    let e_omega_norm = e_omega0.norm();

    let converged_boundary = psi0.abs() <= T::lit(1e-12);
    let psi_ok = (psi0 > T::zero() && psi0 < two) || converged_boundary;
    let e_r_ok = e_r_norm < T::one();
    let omega_bound = gains.k_r * (two - psi0) - gains.c_r * gains.c_r * T::lit(0.5);
    let omega_margin = omega_bound - e_omega_norm * e_omega_norm;
    let omega_ok = omega_margin > T::zero();

    DomainReport {
        psi0,
        e_r_norm,
        e_omega_norm,
        psi_ok,
        e_r_ok,
        omega_ok,
        psi_margin: psi0.min(two - psi0),
        e_r_margin: T::one() - e_r_norm,
        omega_margin,
        converged_boundary,
        inside: psi_ok && e_r_ok && omega_ok,
    }
}

/// Exponential envelope fit `|z(t)| ~ alpha |z(0)| exp(-beta t) + eps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeFit<T> {
    pub alpha_hat: T,
    pub beta_hat: T,
    pub eps_hat: T,
    /// RMS residual of the log-linear fit.
    pub residual: T,
    /// Samples used by the fit.
    pub window_len: usize,
}

/// Fits the envelope to a series of `|z_R|` norms sampled at `dt`.
///
/// `eps_hat` is the max norm over the final `tail_fraction` of the trace.
/// The fit runs on `log(|z| - 0.99 eps_hat)` over the contiguous prefix of
/// samples above `max(1.5 eps, min(50 eps, |z(0)|/2))`; the cutoff keeps the
/// subtracted floor from bending the regression. Fails with `NoTransient`
/// when the trace starts at or below its floor (or the window is shorter
/// than the minimum).
pub fn fit_envelope_norms<T: Real>(
    z: &[T],
    dt: T,
    tail_fraction: T,
) -> Result<EnvelopeFit<T>, StabilityError> {
    assert!(z.len() >= 100, "need at least 100 samples, got {}", z.len());
    let tf = tail_fraction.to_f64().unwrap_or(0.0);
    assert!(tf > 0.0 && tf <= 0.5, "tail_fraction {tf} outside (0, 0.5]");

    let n = z.len();
    let tail_len = ((n as f64) * tf).floor().max(1.0) as usize;
    let eps = z[n - tail_len..]
        .iter()
        .fold(T::zero(), |a, &b| a.max(b));
    let z0 = z[0];
    if z0 <= eps {
        return Err(StabilityError::NoTransient);
    }

    let cutoff = (T::lit(tol::ENVELOPE_CUTOFF_MIN) * eps)
        .max((T::lit(tol::ENVELOPE_CUTOFF_MAX) * eps).min(T::lit(tol::ENVELOPE_CUTOFF_INITIAL) * z0));
    let floor = T::lit(tol::ENVELOPE_FLOOR_FACTOR) * eps;

    let mut ts: Vec<T> = Vec::new();
    let mut ys: Vec<T> = Vec::new();
    for (i, &zi) in z.iter().enumerate() {
        if zi < cutoff || zi - floor <= T::zero() {
            break;
        }
        ts.push(T::from_usize(i).unwrap() * dt);
        ys.push((zi - floor).ln());
    }
    if ts.len() < tol::ENVELOPE_MIN_WINDOW {
        return Err(StabilityError::NoTransient);
    }

    let m = T::from_usize(ts.len()).unwrap();
    let tbar = ts.iter().copied().sum::<T>() / m;
    let ybar = ys.iter().copied().sum::<T>() / m;
    let mut sxx = T::zero();
    let mut sxy = T::zero();
    for (&t, &y) in ts.iter().zip(&ys) {
        sxx = sxx + (t - tbar) * (t - tbar);
        sxy = sxy + (t - tbar) * (y - ybar);
    }
    let slope = sxy / sxx;
    let intercept = ybar - slope * tbar;
    let mut ss = T::zero();
    for (&t, &y) in ts.iter().zip(&ys) {
        let r = y - (intercept + slope * t);
        ss = ss + r * r;
    }
    Ok(EnvelopeFit {
        alpha_hat: intercept.exp() / z0,
        beta_hat: -slope,
        eps_hat: eps,
        residual: (ss / m).sqrt(),
        window_len: ts.len(),
    })
}

/// Constant offset of the Lyapunov decrease bound:
/// `c_R q^2 / (2 k_R) + q^2 / (2 (k_O - c_R))` with
/// `q = eps_R + eps_M / lambda_min(J)`.
pub fn c_r_constant<T: Real>(
    eps_r: T,
    eps_m: T,
    lambda_min_j: T,
    gains: &ControllerGains<T>,
) -> Result<T, StabilityError> {
    if gains.k_omega <= gains.c_r {
        return Err(StabilityError::GainOrder {
            k_omega: gains.k_omega.to_f64().unwrap_or(f64::NAN),
            c_r: gains.c_r.to_f64().unwrap_or(f64::NAN),
        });
    }
    let two = T::lit(2.0);
    let q = eps_r + eps_m / lambda_min_j;
    Ok(gains.c_r * q * q / (two * gains.k_r) + q * q / (two * (gains.k_omega - gains.c_r)))
}

/// Result of the pointwise decrease check.
#[derive(Debug, Clone, PartialEq)]
pub struct DecreaseReport<T> {
    /// Samples above the floor that were checked.
    pub checked: usize,
    pub violations: usize,
    pub pass_fraction: T,
    /// Timestamps of violating samples (capped at 64 entries).
    pub violation_times: Vec<T>,
    pub lambda_min: T,
    pub c_r_constant: T,
    pub tolerance: T,
    /// Norm floor below which samples are skipped.
    pub floor: T,
}

/// Checks `Vdot_R <= -lambda_min(M_R) |z|^2 + C_R + tol` by central finite
/// differences at every interior sample whose `|z_R|` exceeds the measured
/// floor (max over the final quarter of the trace). The slack is
/// `1e-4 max(V_R)`, absorbing discretization noise at the trace rate.
/// Report-only: violations are returned, not asserted.
pub fn verify_decrease<T: Real>(
    samples: &mut [LyapunovSample<T>],
    gains: &ControllerGains<T>,
    c_r_estimate: T,
) -> DecreaseReport<T> {
    assert!(samples.len() >= 3, "need at least 3 samples");
    let n = samples.len();
    let dt = samples[1].t - samples[0].t;
    let tail_len = ((n as f64) * tol::TAIL_FRACTION_DEFAULT).floor().max(1.0) as usize;
    let floor = samples[n - tail_len..]
        .iter()
        .fold(T::zero(), |a, s| a.max(s.z_r_norm));
    let max_v = samples.iter().fold(T::zero(), |a, s| a.max(s.v_r));
    let tolerance = T::lit(tol::VDOT_TOL_FACTOR) * max_v;

    let mr = audit_matrices(gains, T::one())[2];
    let lambda_min = sym2_eigenvalues(mr.0, mr.1, mr.2)[0];

    let mut checked = 0usize;
    let mut violations = 0usize;
    let mut violation_times = Vec::new();
    for i in 1..n - 1 {
        let vdot = (samples[i + 1].v_r - samples[i - 1].v_r) / (dt + dt);
        samples[i].vdot_fd = Some(vdot);
        if samples[i].z_r_norm <= floor {
            continue;
        }
        checked += 1;
        let z2 = samples[i].z_r_norm * samples[i].z_r_norm;
        let bound = -lambda_min * z2 + c_r_estimate + tolerance;
        if vdot > bound {
            violations += 1;
            if violation_times.len() < 64 {
                violation_times.push(samples[i].t);
            }
        }
    }
    let pass_fraction = if checked == 0 {
        T::one()
    } else {
        T::from_usize(checked - violations).unwrap() / T::from_usize(checked).unwrap()
    };
    DecreaseReport {
        checked,
        violations,
        pass_fraction,
        violation_times,
        lambda_min,
        c_r_constant: c_r_estimate,
        tolerance,
        floor,
    }
}

/// Margin check of the quadratic sandwich realizability: with
/// `p1 = 1 + max(V_Re) / (lambda_min(M_R1) eps^2)`, verifies
/// `p1 lambda_min(M_R1) |z|^2 >= V_R` at every sample with `|z| >= eps`.
/// Returns the worst (most negative) margin.
pub fn lemma_realizability_margin<T: Real>(
    samples: &[LyapunovSample<T>],
    gains: &ControllerGains<T>,
    eps: T,
) -> T {
    let m1 = audit_matrices(gains, T::one())[0];
    let lambda_min = sym2_eigenvalues(m1.0, m1.1, m1.2)[0];
    let max_v_re = samples.iter().fold(T::zero(), |a, s| a.max(s.v_re));
    let p1 = T::one() + max_v_re / (lambda_min * eps * eps);
    let mut worst = T::infinity();
    for s in samples {
        if s.z_r_norm >= eps {
            worst = worst.min(p1 * lambda_min * s.z_r_norm * s.z_r_norm - s.v_r);
        }
    }
    worst
}

//! Baseline geometric attitude controller: desired-attitude construction
//! from a commanded force and heading, reference rates by finite
//! differences through the rotation log, and the per-axis moment law that
//! consumes the online estimates.

use crate::rigid_body::{gyroscopic_accel, InertiaTensor, RigidBodyState, Scenario};
use crate::so3::{log_so3, RotationMatrix, Vec3};
use crate::{tol, Real};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ControllerError {
    /// `|b3c x b1d|` fell below the guard: heading parallel to thrust axis.
    #[error("desired heading is degenerate: |b3c x b1d| = {cross_norm:e}")]
    DegenerateHeading { cross_norm: f64 },
    /// Commanded force too small to define a thrust axis.
    #[error("commanded force norm {force_norm:e} is below the minimum")]
    ZeroForce { force_norm: f64 },
}

/// Rotational PD gains plus the cross-term weight of the adaptation drive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControllerGains<T> {
    /// 1/s^2
    pub k_r: T,
    /// 1/s
    pub k_omega: T,
    /// 1/s; must satisfy the feasibility bound audited by
    /// `stability::check_gains`.
    pub c_r: T,
}

impl<T: Real> ControllerGains<T> {
    pub fn new(k_r: T, k_omega: T, c_r: T) -> Self {
        debug_assert!(k_r > T::zero() && k_omega > T::zero() && c_r > T::zero());
        ControllerGains { k_r, k_omega, c_r }
    }
}

/// Desired attitude with its angular velocity and acceleration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttitudeCommand<T> {
    pub rd: RotationMatrix<T>,
    pub omega_d: Vec3<T>,
    pub omega_d_dot: Vec3<T>,
}

/// Reference trajectory kinds. The force is the commanded resultant
/// (hover-sized in the shipped configs); the heading is the desired body-x
/// direction.
#[derive(Debug, Clone, PartialEq)]
pub enum ReferenceTrajectory<T> {
    /// Constant force and heading; all reference rates are exactly zero.
    FixedHover { force: Vec3<T>, heading: Vec3<T> },
    /// Heading spinning in the horizontal plane at a constant rate:
    /// `b1d(t) = (cos(rate t), sin(rate t), 0)`.
    HeadingSpin { force: Vec3<T>, rate: T },
    /// Piecewise-constant headings: `(start_time, heading)` segments in
    /// ascending order. Reference rates are zero within a segment.
    AttitudeWaypoints {
        force: Vec3<T>,
        segments: Vec<(T, Vec3<T>)>,
    },
}

impl<T: Real> ReferenceTrajectory<T> {
    pub fn force(&self, _t: T) -> Vec3<T> {
        match self {
            ReferenceTrajectory::FixedHover { force, .. }
            | ReferenceTrajectory::HeadingSpin { force, .. }
            | ReferenceTrajectory::AttitudeWaypoints { force, .. } => *force,
        }
    }

    pub fn heading(&self, t: T) -> Vec3<T> {
        match self {
            ReferenceTrajectory::FixedHover { heading, .. } => *heading,
            ReferenceTrajectory::HeadingSpin { rate, .. } => {
                Vec3::new((*rate * t).cos(), (*rate * t).sin(), T::zero())
            }
            ReferenceTrajectory::AttitudeWaypoints { segments, .. } => {
                let mut h = segments
                    .first()
                    .map(|(_, h)| *h)
                    .unwrap_or_else(|| Vec3::new(T::one(), T::zero(), T::zero()));
                for (start, heading) in segments {
                    if t >= *start {
                        h = *heading;
                    }
                }
                h
            }
        }
    }
}

/// Desired attitude `[b1c, b2c, b3c]` with `b3c = -F_d/|F_d|`,
/// `b2c = (b3c x b1d)/|b3c x b1d|`, `b1c = b2c x b3c`.
pub fn desired_attitude<T: Real>(
    f_d: Vec3<T>,
    b1d: Vec3<T>,
) -> Result<RotationMatrix<T>, ControllerError> {
    let force_norm = f_d.norm();
    if force_norm <= T::lit(tol::FORCE_MIN) {
        return Err(ControllerError::ZeroForce {
            force_norm: force_norm.to_f64().unwrap_or(f64::NAN),
        });
    }
    let b1d = b1d.normalized();
    let b3c = -f_d / force_norm;
    let cross = b3c.cross(b1d);
    let cross_norm = cross.norm();
    if cross_norm < T::lit(tol::HEADING_CROSS_MIN) {
        return Err(ControllerError::DegenerateHeading {
            cross_norm: cross_norm.to_f64().unwrap_or(f64::NAN),
        });
    }
    let b2c = cross / cross_norm;
    let b1c = b2c.cross(b3c);
    // columns are orthonormal right-handed by construction
    Ok(RotationMatrix::new_unchecked(
        crate::so3::Mat3::from_columns(b1c, b2c, b3c),
    ))
}

/// Reference attitude, angular velocity and acceleration at time `t`.
///
/// Rates come from central finite differences of the desired attitude taken
/// through the rotation log, which keeps the derivative in the tangent
/// space; the acceleration is the central difference of the two half-step
/// velocities. Constant-reference kinds short-circuit to exact zeros.
pub fn desired_rates<T: Real>(
    traj: &ReferenceTrajectory<T>,
    t: T,
    dt: T,
) -> Result<AttitudeCommand<T>, ControllerError> {
    debug_assert!(dt > T::zero());
    let rd = desired_attitude(traj.force(t), traj.heading(t))?;
    match traj {
        ReferenceTrajectory::FixedHover { .. } | ReferenceTrajectory::AttitudeWaypoints { .. } => {
            Ok(AttitudeCommand {
                rd,
                omega_d: Vec3::zero(),
                omega_d_dot: Vec3::zero(),
            })
        }
        ReferenceTrajectory::HeadingSpin { .. } => {
            let rm = desired_attitude(traj.force(t - dt), traj.heading(t - dt))?;
            let rp = desired_attitude(traj.force(t + dt), traj.heading(t + dt))?;
            let two_dt = dt + dt;
            let omega_d = log_so3(&(rm.transpose() * rp)) / two_dt;
            let w_minus = log_so3(&(rm.transpose() * rd)) / dt;
            let w_plus = log_so3(&(rd.transpose() * rp)) / dt;
            let omega_d_dot = (w_plus - w_minus) / dt;
            Ok(AttitudeCommand {
                rd,
                omega_d,
                omega_d_dot,
            })
        }
    }
}

/// Per-axis desired moment:
///
/// `M_d[j] = Jbar[j] * ( -k_R e_R[j] - k_O e_O[j] - ([Omega]x R^T Rd Omega_d)[j]`
/// `          + (R^T Rd Omega_d_dot)[j] - phi_bar[j] + gyro[j] )`
///
/// with the gyroscopic compensation `gyro = J^-1 [Omega]x J Omega` included
/// only when the inertia is known; `j_true` is consulted only then.
#[allow(clippy::too_many_arguments)]
pub fn compute_moment<T: Real>(
    e_r: Vec3<T>,
    e_omega: Vec3<T>,
    state: &RigidBodyState<T>,
    cmd: &AttitudeCommand<T>,
    gains: &ControllerGains<T>,
    j_bar: Vec3<T>,
    phi_bar: Vec3<T>,
    j_true: &InertiaTensor<T>,
    scenario: Scenario,
) -> Vec3<T> {
    debug_assert!(j_bar.x > T::zero() && j_bar.y > T::zero() && j_bar.z > T::zero());
    let q = *state.r.transpose().matrix() * *cmd.rd.matrix(); // R^T Rd
    let coupling = state.omega.cross(q * cmd.omega_d);
    let feedforward = q * cmd.omega_d_dot;
    let gyro = match scenario {
        Scenario::KnownInertia => gyroscopic_accel(state.omega, j_true),
        Scenario::UnknownInertia => Vec3::zero(),
    };
    let mut out = [T::zero(); 3];
    for j in 0..3 {
        let accel = -gains.k_r * e_r[j] - gains.k_omega * e_omega[j] - coupling[j]
            + feedforward[j]
            - phi_bar[j]
            + gyro[j];
        out[j] = j_bar[j] * accel;
    }
    Vec3::from_array(out)
}

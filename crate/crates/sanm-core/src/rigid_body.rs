//! Ground-truth plant: attitude kinematics and dynamics under a parametric
//! time-varying disturbance, a simplified X-configuration rotor allocation
//! with a controllable mapping deviation, and a structure-preserving RK4
//! integrator.
//!
//! Pure step functions over immutable state values; independent simulations
//! may run in parallel, a single simulation is strictly sequential.

use crate::so3::{exp_so3, orthonormalize, RotationMatrix, So3Error, Vec3};
use crate::{tol, Real};

/// Diagonal inertia tensor (principal moments, kg*m^2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InertiaTensor<T> {
    pub j1: T,
    pub j2: T,
    pub j3: T,
}

impl<T: Real> InertiaTensor<T> {
    pub fn new(j1: T, j2: T, j3: T) -> Self {
        debug_assert!(j1 > T::zero() && j2 > T::zero() && j3 > T::zero());
        InertiaTensor { j1, j2, j3 }
    }

    #[inline]
    pub fn as_vec3(&self) -> Vec3<T> {
        Vec3::new(self.j1, self.j2, self.j3)
    }

    /// `J v`.
    #[inline]
    pub fn mul_vec(&self, v: Vec3<T>) -> Vec3<T> {
        Vec3::new(self.j1 * v.x, self.j2 * v.y, self.j3 * v.z)
    }

    /// `J^-1 v`.
    #[inline]
    pub fn inv_mul_vec(&self, v: Vec3<T>) -> Vec3<T> {
        Vec3::new(v.x / self.j1, v.y / self.j2, v.z / self.j3)
    }

    #[inline]
    pub fn min_principal(&self) -> T {
        self.j1.min(self.j2).min(self.j3)
    }
}

/// Attitude, body angular velocity and simulation clock.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidBodyState<T> {
    pub r: RotationMatrix<T>,
    pub omega: Vec3<T>,
    pub t: T,
}

impl<T: Real> RigidBodyState<T> {
    pub fn new(r: RotationMatrix<T>, omega: Vec3<T>, t: T) -> Self {
        RigidBodyState { r, omega, t }
    }

    pub fn at_rest() -> Self {
        RigidBodyState::new(RotationMatrix::identity(), Vec3::zero(), T::zero())
    }
}

/// Which part of the model the controller is allowed to use. The plant
/// always simulates the full physics; the flag only changes how the
/// gyroscopic coupling is routed (explicit term vs folded into phi).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    KnownInertia,
    UnknownInertia,
}

/// Parametric external rotational disturbance (rad/s^2, body axes).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DisturbanceModel<T> {
    None,
    /// Per-axis `amplitude * sin(2 pi frequency t + phase)`.
    Sinusoid {
        amplitude: Vec3<T>,
        frequency_hz: Vec3<T>,
        phase: Vec3<T>,
    },
    /// Sinusoid plus a state-coupled term `coupling_gain * (Omega x e3) * |Omega|`
    /// standing in for slung-payload swing.
    PayloadProxy {
        amplitude: Vec3<T>,
        frequency_hz: Vec3<T>,
        phase: Vec3<T>,
        coupling_gain: T,
    },
}

/// External disturbance acceleration at the given state.
pub fn eval_disturbance<T: Real>(
    model: &DisturbanceModel<T>,
    state: &RigidBodyState<T>,
) -> Vec3<T> {
    let two_pi = T::lit(core::f64::consts::TAU);
    let sin_part = |amp: &Vec3<T>, freq: &Vec3<T>, phase: &Vec3<T>| {
        Vec3::new(
            amp.x * (two_pi * freq.x * state.t + phase.x).sin(),
            amp.y * (two_pi * freq.y * state.t + phase.y).sin(),
            amp.z * (two_pi * freq.z * state.t + phase.z).sin(),
        )
    };
    match model {
        DisturbanceModel::None => Vec3::zero(),
        DisturbanceModel::Sinusoid {
            amplitude,
            frequency_hz,
            phase,
        } => sin_part(amplitude, frequency_hz, phase),
        DisturbanceModel::PayloadProxy {
            amplitude,
            frequency_hz,
            phase,
            coupling_gain,
        } => {
            let e3 = Vec3::new(T::zero(), T::zero(), T::one());
            let swing = state.omega.cross(e3) * (*coupling_gain * state.omega.norm());
            sin_part(amplitude, frequency_hz, phase) + swing
        }
    }
}

/// X-configuration rotor allocation. Rotor order: 1 front-right, 2
/// back-left, 3 front-left, 4 back-right; rotors 1 and 2 produce +z
/// reaction torque. Multiplicative perturbations model imprecisely known
/// aerodynamic coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AllocationModel<T> {
    pub arm_length: T,
    pub thrust_coeff: [T; 4],
    pub torque_ratio: [T; 4],
    pub thrust_perturbation: [T; 4],
    pub torque_perturbation: [T; 4],
    pub max_rotor_thrust: T,
}

impl<T: Real> AllocationModel<T> {
    /// Nominal model: 0.2 m arms, unit thrust coefficients, 0.016
    /// torque/thrust ratio, 8 N per-rotor clamp, no perturbation.
    pub fn nominal() -> Self {
        AllocationModel {
            arm_length: T::lit(0.2),
            thrust_coeff: [T::one(); 4],
            torque_ratio: [T::lit(0.016); 4],
            thrust_perturbation: [T::zero(); 4],
            torque_perturbation: [T::zero(); 4],
            max_rotor_thrust: T::lit(8.0),
        }
    }

    pub fn is_valid(&self) -> bool {
        let half = T::lit(0.5);
        self.arm_length > T::zero()
            && self.max_rotor_thrust > T::zero()
            && self.thrust_coeff.iter().all(|&c| c > T::zero())
            && self.torque_ratio.iter().all(|&c| c > T::zero())
            && self
                .thrust_perturbation
                .iter()
                .chain(self.torque_perturbation.iter())
                .all(|&p| p > -half && p < half)
    }

    /// Nominal mixing matrix `B`: wrench `(f, Mx, My, Mz)` from rotor
    /// thrusts.
    pub fn mixing_matrix(&self) -> [[T; 4]; 4] {
        let d = self.arm_length / T::lit(2.0).sqrt();
        let c = self.torque_ratio;
        let one = T::one();
        [
            [one, one, one, one],
            [-d, d, d, -d],
            [d, -d, d, -d],
            [c[0], c[1], -c[2], -c[3]],
        ]
    }
}

/// Realized wrench after mixing, clamping and coefficient perturbation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealizedWrench<T> {
    /// Realized total thrust (N).
    pub thrust: T,
    /// Realized control moment `M = M_d + delta_m` (N*m).
    pub moment: Vec3<T>,
    /// Mapping deviation `M - M_d`.
    pub delta_m: Vec3<T>,
    /// The mixing demanded a negative rotor thrust beyond tolerance;
    /// reported, then clamped.
    pub infeasible: bool,
    /// Any rotor thrust was clamped (either side).
    pub clamped: bool,
}

fn solve4<T: Real>(a: &[[T; 4]; 4], b: &[T; 4]) -> [T; 4] {
    // Gaussian elimination with partial pivoting
    let mut m = [[T::zero(); 5]; 4];
    for i in 0..4 {
        m[i][..4].copy_from_slice(&a[i]);
        m[i][4] = b[i];
    }
    for col in 0..4 {
        let mut piv = col;
        for r in col + 1..4 {
            if m[r][col].abs() > m[piv][col].abs() {
                piv = r;
            }
        }
        m.swap(col, piv);
        for r in col + 1..4 {
            let f = m[r][col] / m[col][col];
            for c in col..5 {
                m[r][c] = m[r][c] - f * m[col][c];
            }
        }
    }
    let mut x = [T::zero(); 4];
    for r in (0..4).rev() {
        let mut acc = m[r][4];
        for c in r + 1..4 {
            acc = acc - m[r][c] * x[c];
        }
        x[r] = acc / m[r][r];
    }
    x
}

/// Pushes a desired wrench through the rotor chain: nominal inverse mixing,
/// per-rotor clamping to `[0, max]`, then the perturbed coefficients. The
/// deviation is accumulated directly from the clamp and perturbation deltas,
/// so with zero perturbation and no clamping `delta_m` is exactly zero.
pub fn actual_moment<T: Real>(
    allocation: &AllocationModel<T>,
    m_d: Vec3<T>,
    f_d: T,
) -> RealizedWrench<T> {
    let b = allocation.mixing_matrix();
    let t_des = solve4(&b, &[f_d, m_d.x, m_d.y, m_d.z]);

    let neg_tol = T::lit(tol::THRUST_NEGATIVE_TOL);
    let mut infeasible = false;
    let mut clamped = false;
    let mut t_cl = [T::zero(); 4];
    for i in 0..4 {
        if t_des[i] < -neg_tol {
            infeasible = true;
        }
        let c = t_des[i].max(T::zero()).min(allocation.max_rotor_thrust);
        if c != t_des[i] {
            clamped = true;
        }
        t_cl[i] = c;
    }

    // per-rotor thrust delta: clamp delta plus multiplicative error
    let mut dt = [T::zero(); 4];
    for i in 0..4 {
        dt[i] = (t_cl[i] - t_des[i]) + allocation.thrust_perturbation[i] * t_cl[i];
    }
    let d = allocation.arm_length / T::lit(2.0).sqrt();
    let dmx = d * (-dt[0] + dt[1] + dt[2] - dt[3]);
    let dmy = d * (dt[0] - dt[1] + dt[2] - dt[3]);
    // yaw: signs s = (+, +, -, -); the realized coefficient acts on the
    // realized thrust, the nominal one on the desired thrust
    let mut dmz = T::zero();
    let signs = [T::one(), T::one(), -T::one(), -T::one()];
    for i in 0..4 {
        let dq = allocation.torque_perturbation[i];
        let dtq = allocation.thrust_perturbation[i];
        let coeff_gain = (T::one() + dq) * (T::one() + dtq) - T::one();
        dmz = dmz
            + signs[i] * allocation.torque_ratio[i] * (coeff_gain * t_cl[i] + (t_cl[i] - t_des[i]));
    }
    let delta_m = Vec3::new(dmx, dmy, dmz);

    let mut thrust = T::zero();
    for i in 0..4 {
        thrust = thrust + (T::one() + allocation.thrust_perturbation[i]) * t_cl[i];
    }

    RealizedWrench {
        thrust,
        moment: m_d + delta_m,
        delta_m,
        infeasible,
        clamped,
    }
}

/// Gyroscopic coupling expressed at the acceleration level:
/// `J^-1 (Omega x J Omega)`.
#[inline]
pub fn gyroscopic_accel<T: Real>(omega: Vec3<T>, j: &InertiaTensor<T>) -> Vec3<T> {
    j.inv_mul_vec(omega.cross(j.mul_vec(omega)))
}

/// Angular acceleration. Under `KnownInertia`, `phi` is the external
/// disturbance and the gyroscopic term is applied explicitly; under
/// `UnknownInertia` the caller folds the gyroscopic term into `phi`
/// (computed with [`gyroscopic_accel`]), so both scenarios simulate
/// identical physics.
pub fn omega_dot<T: Real>(
    state: &RigidBodyState<T>,
    m: Vec3<T>,
    j: &InertiaTensor<T>,
    phi: Vec3<T>,
    scenario: Scenario,
) -> Vec3<T> {
    let jm = j.inv_mul_vec(m);
    match scenario {
        Scenario::KnownInertia => jm + (phi - gyroscopic_accel(state.omega, j)),
        Scenario::UnknownInertia => jm + phi,
    }
}

/// Stage derivative of the attitude increment `u` for body velocity `w`:
/// the inverse-dexp correction series truncated after the double bracket,
/// which keeps the Runge-Kutta scheme fourth order on the group.
#[inline]
fn dexpinv_body<T: Real>(u: Vec3<T>, w: Vec3<T>) -> Vec3<T> {
    let uw = u.cross(w);
    w + uw * T::lit(0.5) + u.cross(uw) * T::lit(1.0 / 12.0)
}

/// One RK4 step of the coupled attitude/rate dynamics with the moment held
/// constant. Attitude stages advance through the rotation exponential; the
/// result is re-orthonormalized.
pub fn step<T: Real>(
    state: &RigidBodyState<T>,
    m: Vec3<T>,
    j: &InertiaTensor<T>,
    model: &DisturbanceModel<T>,
    scenario: Scenario,
    dt: T,
) -> Result<RigidBodyState<T>, So3Error> {
    debug_assert!(dt > T::zero() && dt <= T::lit(tol::DT_MAX));

    let stage = |u: Vec3<T>, omega: Vec3<T>, t: T| -> (Vec3<T>, Vec3<T>) {
        let r_stage = *state.r.matrix() * *exp_so3(u).matrix();
        let stage_state = RigidBodyState {
            r: RotationMatrix::new_unchecked(r_stage),
            omega,
            t,
        };
        let phi_ext = eval_disturbance(model, &stage_state);
        let phi = match scenario {
            Scenario::KnownInertia => phi_ext,
            Scenario::UnknownInertia => phi_ext - gyroscopic_accel(omega, j),
        };
        (
            dexpinv_body(u, omega),
            omega_dot(&stage_state, m, j, phi, scenario),
        )
    };

    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let sixth = T::lit(1.0 / 6.0);
    let t_mid = state.t + dt * half;
    let t_end = state.t + dt;

    let (k1u, k1w) = stage(Vec3::zero(), state.omega, state.t);
    let (k2u, k2w) = stage(k1u * (dt * half), state.omega + k1w * (dt * half), t_mid);
    let (k3u, k3w) = stage(k2u * (dt * half), state.omega + k2w * (dt * half), t_mid);
    let (k4u, k4w) = stage(k3u * dt, state.omega + k3w * dt, t_end);

    let u = (k1u + k2u * two + k3u * two + k4u) * (dt * sixth);
    let omega = state.omega + (k1w + k2w * two + k3w * two + k4w) * (dt * sixth);
    let raw = *state.r.matrix() * *exp_so3(u).matrix();
    let r = orthonormalize(&raw)?;

    Ok(RigidBodyState { r, omega, t: t_end })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::so3::Mat3;
    use approx::assert_abs_diff_eq;

    type V = Vec3<f64>;

    fn vec(x: f64, y: f64, z: f64) -> V {
        Vec3::new(x, y, z)
    }

    fn paper_inertia() -> InertiaTensor<f64> {
        InertiaTensor::new(0.011, 0.020, 0.023)
    }

    #[test]
    fn disturbance_none_and_sinusoid() {
        let state = RigidBodyState::at_rest();
        assert_eq!(eval_disturbance(&DisturbanceModel::None, &state), V::zero());

        let model = DisturbanceModel::Sinusoid {
            amplitude: vec(1.0, 0.0, 0.0),
            frequency_hz: vec(0.0, 1.0, 2.0),
            phase: vec(core::f64::consts::FRAC_PI_2, 0.0, 0.0),
        };
        let state = RigidBodyState {
            t: 12.34,
            ..RigidBodyState::at_rest()
        };
        let d = eval_disturbance(&model, &state);
        assert_abs_diff_eq!(d.x, 1.0, epsilon = 1e-15);
        assert_eq!(d.y, 0.0);
        assert_eq!(d.z, 0.0);

        // 2 sin(2 pi 0.5 * 0.5) = 2 sin(pi/2) = 2
        let model = DisturbanceModel::Sinusoid {
            amplitude: vec(2.0, 0.0, 0.0),
            frequency_hz: vec(0.5, 0.0, 0.0),
            phase: V::zero(),
        };
        let state = RigidBodyState {
            t: 0.5,
            ..RigidBodyState::at_rest()
        };
        assert_abs_diff_eq!(eval_disturbance(&model, &state).x, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn payload_proxy_couples_to_rates() {
        let model = DisturbanceModel::PayloadProxy {
            amplitude: V::zero(),
            frequency_hz: V::zero(),
            phase: V::zero(),
            coupling_gain: 0.5,
        };
        let state = RigidBodyState {
            omega: vec(1.0, 0.0, 0.0),
            ..RigidBodyState::at_rest()
        };
        // (Omega x e3) |Omega| = (0, -1, 0) * 1
        let d = eval_disturbance(&model, &state);
        assert_eq!(d, vec(0.0, -0.5, 0.0));
    }

    #[test]
    fn allocation_exact_inverse_gives_zero_deviation() {
        let alloc = AllocationModel::<f64>::nominal();
        let out = actual_moment(&alloc, vec(0.1, -0.05, 0.02), 16.0);
        assert_eq!(out.delta_m, V::zero());
        assert_eq!(out.moment, vec(0.1, -0.05, 0.02));
        assert!(!out.infeasible && !out.clamped);
    }

    #[test]
    fn allocation_symmetric_perturbation_cancels() {
        // from tools/mixing_oracle.py
        let alloc = AllocationModel {
            thrust_perturbation: [0.1; 4],
            ..AllocationModel::<f64>::nominal()
        };
        let out = actual_moment(&alloc, V::zero(), 16.0);
        assert_eq!(out.delta_m, V::zero());
        assert_abs_diff_eq!(out.thrust, 17.6, epsilon = 1e-12);
    }

    #[test]
    fn allocation_single_rotor_perturbation_matches_oracle() {
        // from tools/mixing_oracle.py
        let alloc = AllocationModel {
            thrust_perturbation: [0.1, 0.0, 0.0, 0.0],
            ..AllocationModel::<f64>::nominal()
        };
        let out = actual_moment(&alloc, vec(0.1, 0.0, 0.0), 16.0);
        assert_abs_diff_eq!(out.thrust, 1.63823223304703340e1, epsilon = 1e-12);
        assert_abs_diff_eq!(out.delta_m.x, -5.40685424949234952e-2, epsilon = 1e-12);
        assert_abs_diff_eq!(out.delta_m.y, 5.40685424949236687e-2, epsilon = 1e-12);
        assert_abs_diff_eq!(out.delta_m.z, 6.11715728752537657e-3, epsilon = 1e-12);
    }

    #[test]
    fn allocation_reports_infeasible_and_clamps() {
        let alloc = AllocationModel::<f64>::nominal();
        // enormous roll demand at low thrust drives a rotor negative
        let out = actual_moment(&alloc, vec(5.0, 0.0, 0.0), 1.0);
        assert!(out.infeasible);
        assert!(out.clamped);
        assert!(out.delta_m.norm() > 0.0);
    }

    #[test]
    fn omega_dot_gyroscopic_cases() {
        let j = paper_inertia();
        let state = RigidBodyState::at_rest();
        assert_eq!(
            omega_dot(&state, V::zero(), &j, V::zero(), Scenario::KnownInertia),
            V::zero()
        );

        // spin about a principal axis: Omega parallel to J Omega
        let state = RigidBodyState {
            omega: vec(0.0, 0.0, 1.0),
            ..RigidBodyState::at_rest()
        };
        let dw = omega_dot(&state, V::zero(), &j, V::zero(), Scenario::KnownInertia);
        assert_eq!(dw, V::zero());

        // hand evaluation of -J^-1 (Omega x J Omega) for Omega = (1,1,0)
        let state = RigidBodyState {
            omega: vec(1.0, 1.0, 0.0),
            ..RigidBodyState::at_rest()
        };
        let dw = omega_dot(&state, V::zero(), &j, V::zero(), Scenario::KnownInertia);
        assert_abs_diff_eq!(dw.x, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(dw.y, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(dw.z, -(0.020 - 0.011) / 0.023, epsilon = 1e-12);
    }

    #[test]
    fn scenario_flag_is_bit_exact_symmetric() {
        let j = paper_inertia();
        let state = RigidBodyState {
            omega: vec(0.7, -0.4, 1.2),
            ..RigidBodyState::at_rest()
        };
        let m = vec(0.02, -0.01, 0.005);
        let phi_ext = vec(0.3, 0.1, -0.2);
        let known = omega_dot(&state, m, &j, phi_ext, Scenario::KnownInertia);
        let folded = phi_ext - gyroscopic_accel(state.omega, &j);
        let unknown = omega_dot(&state, m, &j, folded, Scenario::UnknownInertia);
        assert_eq!(known, unknown);
    }

    #[test]
    fn step_equilibrium() {
        let j = paper_inertia();
        let state = RigidBodyState::at_rest();
        let next = step(
            &state,
            V::zero(),
            &j,
            &DisturbanceModel::None,
            Scenario::KnownInertia,
            0.0025,
        )
        .unwrap();
        assert_eq!(*next.r.matrix(), Mat3::identity());
        assert_eq!(next.omega, V::zero());
        assert_abs_diff_eq!(next.t, 0.0025, epsilon = 1e-15);
    }

    #[test]
    fn step_full_turn_returns_to_start() {
        let j = paper_inertia();
        // principal-axis spin needs no moment to stay constant
        let mut state = RigidBodyState {
            omega: vec(0.0, 0.0, 1.0),
            ..RigidBodyState::at_rest()
        };
        let n = 2513;
        let dt = core::f64::consts::TAU / n as f64;
        for _ in 0..n {
            state = step(
                &state,
                V::zero(),
                &j,
                &DisturbanceModel::None,
                Scenario::KnownInertia,
                dt,
            )
            .unwrap();
        }
        let dist = (*state.r.matrix() - Mat3::identity()).frobenius_norm();
        assert!(dist < 1e-6, "distance {dist:e}");
        assert!((state.omega - vec(0.0, 0.0, 1.0)).max_abs() < 1e-12);
    }

    #[test]
    fn free_spin_conserves_inertial_momentum() {
        let j = paper_inertia();
        let mut state = RigidBodyState {
            omega: vec(0.9, -1.3, 0.6),
            ..RigidBodyState::at_rest()
        };
        let h0 = state.r.rotate(j.mul_vec(state.omega)).norm();
        let mut max_rel = 0.0f64;
        for _ in 0..10_000 {
            state = step(
                &state,
                V::zero(),
                &j,
                &DisturbanceModel::None,
                Scenario::KnownInertia,
                0.0025,
            )
            .unwrap();
            let h = state.r.rotate(j.mul_vec(state.omega)).norm();
            max_rel = max_rel.max(((h - h0) / h0).abs());
        }
        assert!(max_rel < 1e-6, "momentum drift {max_rel:e}");
    }

    /// Integrates a fixed interval at step h and h/2 against a fine
    /// reference; the error ratio must sit near 2^4.
    #[test]
    fn step_is_fourth_order() {
        let j = paper_inertia();
        let model = DisturbanceModel::Sinusoid {
            amplitude: vec(0.4, -0.3, 0.2),
            frequency_hz: vec(1.1, 0.7, 1.7),
            phase: vec(0.2, -0.4, 1.0),
        };
        let m = vec(0.05, -0.03, 0.02);
        let start = RigidBodyState {
            omega: vec(1.5, -1.0, 2.0),
            ..RigidBodyState::at_rest()
        };
        let run = |dt: f64, steps: usize| {
            let mut s = start;
            for _ in 0..steps {
                s = step(&s, m, &j, &model, Scenario::KnownInertia, dt).unwrap();
            }
            s
        };
        let reference = run(0.01 / 16.0, 160);
        let err = |s: &RigidBodyState<f64>| {
            (*s.r.matrix() - *reference.r.matrix()).frobenius_norm()
                + (s.omega - reference.omega).norm()
        };
        let e1 = err(&run(0.01, 10));
        let e2 = err(&run(0.005, 20));
        let ratio = e1 / e2;
        assert!(
            (11.2..=20.8).contains(&ratio),
            "Richardson ratio {ratio} (e1 {e1:e}, e2 {e2:e})"
        );
    }

    #[test]
    fn long_run_orthonormality_drift() {
        let j = paper_inertia();
        let model = DisturbanceModel::Sinusoid {
            amplitude: vec(0.2, 0.3, -0.1),
            frequency_hz: vec(0.5, 0.9, 1.3),
            phase: V::zero(),
        };
        let mut state = RigidBodyState {
            omega: vec(0.4, -0.2, 0.8),
            ..RigidBodyState::at_rest()
        };
        let mut worst = 0.0f64;
        for _ in 0..20_000 {
            state = step(&state, V::zero(), &j, &model, Scenario::KnownInertia, 0.0025).unwrap();
            worst = worst.max(state.r.orthonormality_defect());
        }
        assert!(worst < 1e-12, "defect {worst:e}");
    }
}

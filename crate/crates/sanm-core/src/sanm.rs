//! Sliced adaptive-neuro mapping: the online identifier.
//!
//! The 6-dimensional identification problem (three inertia components plus
//! three disturbance features) is sliced per body axis into six
//! 1-dimensional subtasks: each axis carries a bounded adaptive inertia
//! estimator and a 2-input Gaussian RBF network whose weights follow a
//! Lyapunov adaptation law, so no persistent excitation or pre-training is
//! required.
//!
//! [`SanmState`] is a plain value and [`sanm_step`] a pure state-transition
//! function; a single control loop owns one state sequentially, and states
//! clone freely across threads for sweeps.

use crate::so3::Vec3;
use crate::Real;
use std::cell::Cell;

thread_local! {
    static GAUSSIAN_EVALS: Cell<u64> = const { Cell::new(0) };
}

/// Resets this thread's Gaussian evaluation counter (cost instrumentation
/// for the step-latency audit).
pub fn reset_gaussian_eval_count() {
    GAUSSIAN_EVALS.with(|c| c.set(0));
}

/// Gaussian evaluations performed on this thread since the last reset.
pub fn gaussian_eval_count() -> u64 {
    GAUSSIAN_EVALS.with(|c| c.get())
}

/// One axis's RBF network: fixed centers and widths, adapted weights.
#[derive(Debug, Clone, PartialEq)]
pub struct RbfSlice<T> {
    /// Neuron centers in the `(e_R, e_Omega)` input plane.
    pub centers: Vec<[T; 2]>,
    /// Gaussian widths, one per neuron, all positive.
    pub widths: Vec<T>,
    /// Adapted weights; norm capped at `weight_cap`.
    pub weights: Vec<T>,
    /// Adaptation rate (1/s).
    pub gamma: T,
    /// Radial projection bound on the weight norm.
    pub weight_cap: T,
}

impl<T: Real> RbfSlice<T> {
    /// New slice with zero weights.
    pub fn new(centers: Vec<[T; 2]>, widths: Vec<T>, gamma: T, weight_cap: T) -> Self {
        assert!(!centers.is_empty(), "need at least one neuron");
        assert_eq!(centers.len(), widths.len());
        assert!(widths.iter().all(|&b| b > T::zero()));
        assert!(gamma > T::zero() && weight_cap > T::zero());
        let weights = vec![T::zero(); centers.len()];
        RbfSlice {
            centers,
            widths,
            weights,
            gamma,
            weight_cap,
        }
    }

    /// Neuron count.
    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn weight_norm(&self) -> T {
        self.weights
            .iter()
            .map(|&w| w * w)
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }
}

/// Gaussian activations `exp(-|x - c_k|^2 / (2 b_k^2))`, each in `(0, 1]`.
pub fn rbf_activation<T: Real>(slice: &RbfSlice<T>, x: [T; 2]) -> Vec<T> {
    GAUSSIAN_EVALS.with(|c| c.set(c.get() + slice.len() as u64));
    let two = T::lit(2.0);
    slice
        .centers
        .iter()
        .zip(&slice.widths)
        .map(|(c, &b)| {
            let dx = x[0] - c[0];
            let dy = x[1] - c[1];
            (-(dx * dx + dy * dy) / (two * b * b)).exp()
        })
        .collect()
}

/// Network output for a precomputed activation vector.
#[inline]
pub fn nn_output_with<T: Real>(slice: &RbfSlice<T>, activation: &[T]) -> T {
    slice
        .weights
        .iter()
        .zip(activation)
        .map(|(&w, &h)| w * h)
        .fold(T::zero(), |a, b| a + b)
}

/// Network output `W^T hbar(x)`; magnitude at most `|W| sqrt(l)`.
pub fn nn_output<T: Real>(slice: &RbfSlice<T>, x: [T; 2]) -> T {
    let h = rbf_activation(slice, x);
    nn_output_with(slice, &h)
}

fn update_weights_with<T: Real>(
    slice: &RbfSlice<T>,
    activation: &[T],
    drive: T,
    dt: T,
) -> RbfSlice<T> {
    let mut out = slice.clone();
    let gain = dt * slice.gamma * drive;
    for (w, &h) in out.weights.iter_mut().zip(activation) {
        *w = *w + gain * h;
    }
    // radial projection back onto the admissible ball
    let norm = out.weight_norm();
    if norm > out.weight_cap {
        let shrink = out.weight_cap / norm;
        for w in &mut out.weights {
            *w = *w * shrink;
        }
    }
    out
}

/// One forward-Euler step of the Lyapunov weight adaptation
/// `W <- W + dt gamma (e_Omega + c_R e_R) hbar(x)` at
/// `x = (e_R[j], e_Omega[j])`, followed by radial projection onto
/// `|W| <= weight_cap`.
pub fn update_weights<T: Real>(
    slice: &RbfSlice<T>,
    e_r_j: T,
    e_omega_j: T,
    c_r: T,
    dt: T,
) -> RbfSlice<T> {
    debug_assert!(dt > T::zero());
    let h = rbf_activation(slice, [e_r_j, e_omega_j]);
    update_weights_with(slice, &h, e_omega_j + c_r * e_r_j, dt)
}

/// One axis's bounded adaptive inertia estimator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InertiaSlice<T> {
    /// Current estimate (kg*m^2), at least `j_min`.
    pub j_bar: T,
    /// Inverse update rate.
    pub eta: T,
    /// Pull-back scaling factor applied above `j_max`.
    pub scale: T,
    /// Soft cap: above it the pull-back branch takes over.
    pub j_max: T,
    /// Hard floor keeping the reciprocal estimation error finite.
    pub j_min: T,
}

impl<T: Real> InertiaSlice<T> {
    pub fn new(j_bar: T, eta: T, scale: T, j_max: T, j_min: T) -> Self {
        assert!(j_min > T::zero() && j_bar >= j_min && j_max > j_min);
        assert!(eta > T::zero() && scale > T::zero());
        InertiaSlice {
            j_bar,
            eta,
            scale,
            j_max,
            j_min,
        }
    }
}

/// One forward-Euler step of the three-case bounded adaptive law. With
/// `p = (e_Omega + c_R e_R) M_d`:
///
/// * `p > 0`, or `p <= 0` while below the cap: `Jdot = -(Jbar^2/eta) p`;
/// * `p <= 0` at or above the cap: pull-back `Jdot = -s Jbar^2/eta`.
///
/// The estimate is then clamped to `[j_min, inf)`.
pub fn update_inertia<T: Real>(
    slice: &InertiaSlice<T>,
    e_r_j: T,
    e_omega_j: T,
    m_d_j: T,
    c_r: T,
    dt: T,
) -> InertiaSlice<T> {
    debug_assert!(dt > T::zero());
    let drive = e_omega_j + c_r * e_r_j;
    let p = drive * m_d_j;
    let j_sq_eta = slice.j_bar * slice.j_bar / slice.eta;
    let j_dot = if p <= T::zero() && slice.j_bar >= slice.j_max {
        -slice.scale * j_sq_eta
    } else {
        -j_sq_eta * p
    };
    let j_bar = (slice.j_bar + dt * j_dot).max(slice.j_min);
    InertiaSlice { j_bar, ..*slice }
}

/// The six slices, axis-indexed.
#[derive(Debug, Clone, PartialEq)]
pub struct SanmState<T> {
    pub inertia: [InertiaSlice<T>; 3],
    pub rbf: [RbfSlice<T>; 3],
}

impl<T: Real> SanmState<T> {
    /// Current inertia estimate vector.
    pub fn j_bar(&self) -> Vec3<T> {
        Vec3::new(
            self.inertia[0].j_bar,
            self.inertia[1].j_bar,
            self.inertia[2].j_bar,
        )
    }

    /// Per-axis weight norms.
    pub fn weight_norms(&self) -> Vec3<T> {
        Vec3::new(
            self.rbf[0].weight_norm(),
            self.rbf[1].weight_norm(),
            self.rbf[2].weight_norm(),
        )
    }
}

/// One identifier step: per axis, report the estimates held for this
/// control step `(Jbar, phi_bar = W^T hbar(x))`, then integrate the
/// adaptive laws for the next one. The outputs use the pre-update state, so
/// zero-initialized weights reproduce the baseline controller exactly on
/// the first step; the weight law uses the current errors while the inertia
/// law consumes the previous step's moment, which breaks the algebraic loop
/// between the moment law and the adaptation.
///
/// Gaussian activations are evaluated once per axis and shared between the
/// output and the weight update, so a step costs exactly `3 l` Gaussian
/// evaluations.
pub fn sanm_step<T: Real>(
    state: &SanmState<T>,
    e_r: Vec3<T>,
    e_omega: Vec3<T>,
    m_d_prev: Vec3<T>,
    c_r: T,
    dt: T,
) -> (SanmState<T>, Vec3<T>, Vec3<T>) {
    let mut phi_bar = [T::zero(); 3];
    let mut rbf = state.rbf.clone();
    let mut inertia = state.inertia;
    for axis in 0..3 {
        let x = [e_r[axis], e_omega[axis]];
        let drive = e_omega[axis] + c_r * e_r[axis];
        let h = rbf_activation(&state.rbf[axis], x);
        phi_bar[axis] = nn_output_with(&state.rbf[axis], &h);
        rbf[axis] = update_weights_with(&state.rbf[axis], &h, drive, dt);
        inertia[axis] = update_inertia(
            &state.inertia[axis],
            e_r[axis],
            e_omega[axis],
            m_d_prev[axis],
            c_r,
            dt,
        );
    }
    let j_bar = state.j_bar();
    let next = SanmState { inertia, rbf };
    (next, j_bar, Vec3::from_array(phi_bar))
}

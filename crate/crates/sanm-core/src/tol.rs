//! Numeric tolerances and guard constants, collected in one place.
//!
//! Values are stated for `f64`. Where a generic routine must also work in
//! `f32`, the tolerance is widened to a multiple of the type epsilon (see
//! the individual constants).

/// Maximum symmetric-part magnitude accepted by the checked vee map.
pub const SKEW_INPUT: f64 = 1e-8;

/// Orthonormality / determinant defect allowed by the rotation invariants.
pub const ROTATION_INVARIANT: f64 = 1e-9;

/// Below this rotation angle the exponential map switches to its series
/// branch, avoiding the 0/0 in sin(theta)/theta.
pub const EXP_SMALL_ANGLE: f64 = 1e-8;

/// Below this angle the logarithm uses its series branch; once cos(theta)
/// drops below the threshold it recovers the axis from the symmetric part,
/// which stays well-conditioned through theta = pi.
pub const LOG_SMALL_ANGLE: f64 = 1e-8;
pub const LOG_SYMMETRIC_BRANCH_COS: f64 = -0.9;

/// Frobenius repair radius of `orthonormalize`: inputs farther than this
/// from the nearest rotation are rejected.
pub const ORTHONORMALIZE_RADIUS: f64 = 0.1;

/// Polar refinement stops when successive iterates differ by less than
/// `POLAR_CONVERGENCE_EPS_FACTOR * epsilon` (about 1e-14 in `f64`).
pub const POLAR_CONVERGENCE_EPS_FACTOR: f64 = 50.0;

/// Orthonormality defect guaranteed on `orthonormalize` output (`f64`).
pub const ORTHONORMALIZE_RESULT: f64 = 1e-12;

/// Desired-attitude construction guards.
pub const FORCE_MIN: f64 = 1e-6;
pub const HEADING_CROSS_MIN: f64 = 1e-3;

/// Largest admissible integrator step.
pub const DT_MAX: f64 = 0.01;

/// Desired rotor thrusts below `-THRUST_NEGATIVE_TOL` are flagged as an
/// infeasible wrench before clamping.
pub const THRUST_NEGATIVE_TOL: f64 = 1e-9;

/// Envelope fit: the floor subtracted from the norms is
/// `ENVELOPE_FLOOR_FACTOR * eps_hat`.
pub const ENVELOPE_FLOOR_FACTOR: f64 = 0.99;
/// Envelope fit window: contiguous prefix of samples with
/// `z >= max(ENVELOPE_CUTOFF_MIN * eps, min(ENVELOPE_CUTOFF_MAX * eps, ENVELOPE_CUTOFF_INITIAL * z0))`.
pub const ENVELOPE_CUTOFF_MIN: f64 = 1.5;
pub const ENVELOPE_CUTOFF_MAX: f64 = 50.0;
pub const ENVELOPE_CUTOFF_INITIAL: f64 = 0.5;
/// Fewest samples on which an envelope fit is attempted.
pub const ENVELOPE_MIN_WINDOW: usize = 8;

/// Lyapunov decrease check: absolute slack is `VDOT_TOL_FACTOR * max(V_R)`,
/// absorbing finite-difference noise at the trace rate.
pub const VDOT_TOL_FACTOR: f64 = 1e-4;

/// Fraction of a trace treated as its steady-state tail.
pub const TAIL_FRACTION_DEFAULT: f64 = 0.25;

/// Settling radius used by the run metrics, on `||z_R||`.
pub const SETTLING_RADIUS: f64 = 0.05;

//! Geometric attitude control on SO(3) with per-axis online identification.
//!
//! The crate provides:
//!
//! * [`so3`] — exact SO(3)/so(3) algebra: hat/vee maps, the rotation
//!   exponential and logarithm, attitude error functions and the
//!   configuration error scalar;
//! * [`rigid_body`] — the ground-truth plant: attitude dynamics under a
//!   parametric disturbance, an X-configuration rotor allocation with
//!   controllable mapping deviation, and a structure-preserving RK4
//!   integrator;
//! * [`controller`] — the baseline geometric attitude controller and the
//!   per-axis moment law consuming online estimates;
//! * [`sanm`] — the sliced adaptive-neuro mapping: three bounded adaptive
//!   inertia estimators plus three small Gaussian RBF networks with
//!   Lyapunov weight adaptation, one pair per body axis;
//! * [`stability`] — numerical verification of the gain conditions,
//!   Lyapunov decrease, attraction-domain membership and the exponential
//!   envelope;
//! * [`config`], [`trace`], [`sim`] — scenario configuration, CSV trace
//!   persistence, closed-loop execution, paired-run comparison and the
//!   control-step latency benchmark.
//!
//! All core math is generic over the scalar type via [`Real`] (`f32` or
//! `f64`); the simulation harness is `f64`. Concrete aliases for the common
//! types live at the crate root.

pub mod config;
pub mod controller;
mod real;
pub mod rigid_body;
pub mod sanm;
pub mod sim;
pub mod so3;
pub mod stability;
pub mod tol;
pub mod trace;

pub use real::Real;

/// `f64` vector, the harness scalar type.
pub type Vec3d = so3::Vec3<f64>;
/// `f64` matrix.
pub type Mat3d = so3::Mat3<f64>;
/// `f64` rotation.
pub type Rotationd = so3::RotationMatrix<f64>;

/// `f32` vector, for embedded-style single-precision use.
pub type Vec3f = so3::Vec3<f32>;
/// `f32` matrix.
pub type Mat3f = so3::Mat3<f32>;
/// `f32` rotation.
pub type Rotationf = so3::RotationMatrix<f32>;

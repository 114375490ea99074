//! Scenario configuration: a flat, human-editable `key = value` format with
//! dotted section prefixes (see `configs/experiment1.cfg`). Unspecified keys
//! keep the built-in defaults, which reproduce the shipped experiment-1
//! parameter block.

use crate::controller::{ControllerGains, ReferenceTrajectory};
use crate::rigid_body::{AllocationModel, DisturbanceModel, InertiaTensor, Scenario};
use crate::sanm::{InertiaSlice, RbfSlice, SanmState};
use crate::so3::Vec3;
use crate::tol;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`, got `{text}`")]
    Malformed { line: usize, text: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: bad value for `{key}`: {reason}")]
    BadValue {
        line: usize,
        key: String,
        reason: String,
    },
    #[error("invalid configuration: {0}")]
    Invalid(String),
    #[error("cannot read config: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DisturbanceConfig {
    pub kind: String,
    pub amplitude: [f64; 3],
    pub frequency: [f64; 3],
    pub phase: [f64; 3],
    pub coupling_gain: f64,
    /// Draw phase offsets for the oscillatory axes (`frequency > 0`) from
    /// the run seed; constant axes keep the configured phase.
    pub seeded_phases: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AllocationConfig {
    pub arm_length: f64,
    pub thrust_coeff: [f64; 4],
    pub torque_ratio: [f64; 4],
    pub thrust_perturbation: [f64; 4],
    pub torque_perturbation: [f64; 4],
    pub max_rotor_thrust: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoiseConfig {
    /// Std-dev of additive Gaussian noise on the measured rates (rad/s).
    pub omega_std: f64,
    /// Std-dev of the per-axis attitude log perturbation (rad).
    pub attitude_std: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlantConfig {
    pub mass: f64,
    pub payload_mass: f64,
    pub gravity: f64,
    pub inertia: [f64; 3],
    pub scenario: Scenario,
    pub disturbance: DisturbanceConfig,
    pub allocation: AllocationConfig,
    pub noise: NoiseConfig,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ControllerConfig {
    pub k_r: f64,
    pub k_omega: f64,
    pub c_r: f64,
    pub sanm_enabled: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SanmConfig {
    pub eta: [f64; 3],
    pub scale: [f64; 3],
    pub j_max: [f64; 3],
    pub j_min: f64,
    pub j_bar_init: [f64; 3],
    pub gamma: [f64; 3],
    pub weight_cap: f64,
    pub centers_e_r: [Vec<f64>; 3],
    pub centers_e_omega: [Vec<f64>; 3],
    pub widths: [Vec<f64>; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryConfig {
    pub kind: String,
    pub heading: [f64; 3],
    pub spin_rate: f64,
    /// Flat `(t, hx, hy, hz)` groups for `attitude_waypoints`.
    pub waypoints: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InitialConfig {
    /// Initial attitude as a rotation log (axis-angle vector).
    pub attitude_log: [f64; 3],
    pub omega: [f64; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub dt: f64,
    pub duration: f64,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub plant: PlantConfig,
    pub controller: ControllerConfig,
    pub sanm: SanmConfig,
    pub trajectory: TrajectoryConfig,
    pub initial: InitialConfig,
    pub run: RunConfig,
}

impl Default for SimConfig {
    /// Experiment-1 defaults: 1.6 kg airframe with a 0.25 kg payload,
    /// J = diag(0.011, 0.020, 0.023), k_R = 100, k_Omega = 80, c_R = 0.6,
    /// per-axis adaptation rates (0.01, 0.01, 0.05) / (120, 120, 50),
    /// five neurons per slice, hover reference at 400 Hz.
    fn default() -> Self {
        SimConfig {
            plant: PlantConfig {
                mass: 1.6,
                payload_mass: 0.25,
                gravity: 9.81,
                inertia: [0.011, 0.020, 0.023],
                scenario: Scenario::UnknownInertia,
                disturbance: DisturbanceConfig {
                    kind: "payload_proxy".into(),
                    amplitude: [1.2, 5.0, 3.0],
                    frequency: [0.8, 0.0, 0.0],
                    phase: [0.0, core::f64::consts::FRAC_PI_2, -core::f64::consts::FRAC_PI_2],
                    coupling_gain: 0.1,
                    seeded_phases: true,
                },
                allocation: AllocationConfig {
                    arm_length: 0.2,
                    thrust_coeff: [1.0; 4],
                    torque_ratio: [0.016; 4],
                    thrust_perturbation: [0.02, -0.015, 0.01, -0.02],
                    torque_perturbation: [0.01, -0.01, 0.02, -0.015],
                    max_rotor_thrust: 8.0,
                },
                noise: NoiseConfig {
                    omega_std: 0.0,
                    attitude_std: 0.0,
                },
            },
            controller: ControllerConfig {
                k_r: 100.0,
                k_omega: 80.0,
                c_r: 0.6,
                sanm_enabled: true,
            },
            sanm: SanmConfig {
                eta: [0.01, 0.01, 0.05],
                scale: [0.02, 0.02, 0.02],
                j_max: [0.03, 0.03, 0.04],
                j_min: 1e-4,
                j_bar_init: [0.01, 0.02, 0.02],
                gamma: [120.0, 120.0, 50.0],
                weight_cap: 50.0,
                centers_e_r: [
                    vec![-1.0, -0.5, 0.0, 0.5, 1.0],
                    vec![-1.0, -0.5, 0.0, 0.5, 1.0],
                    vec![-1.0, -0.5, 0.0, 0.5, 1.0],
                ],
                centers_e_omega: [
                    vec![-10.0, -5.0, 0.0, 5.0, 10.0],
                    vec![-10.0, -5.0, 0.0, 5.0, 10.0],
                    vec![-6.0, -3.0, 0.0, 3.0, 6.0],
                ],
                widths: [vec![2.0; 5], vec![2.0; 5], vec![3.0; 5]],
            },
            trajectory: TrajectoryConfig {
                kind: "fixed_hover".into(),
                heading: [1.0, 0.0, 0.0],
                spin_rate: 0.0,
                waypoints: Vec::new(),
            },
            initial: InitialConfig {
                attitude_log: [0.45, -0.35, 0.10],
                omega: [0.0, 0.0, 0.0],
            },
            run: RunConfig {
                dt: 0.0025,
                duration: 20.0,
                seed: 1,
                out: None,
            },
        }
    }
}

fn parse_f64(line: usize, key: &str, v: &str) -> Result<f64, ConfigError> {
    v.parse::<f64>().map_err(|e| ConfigError::BadValue {
        line,
        key: key.into(),
        reason: e.to_string(),
    })
}

fn parse_vec(line: usize, key: &str, v: &str) -> Result<Vec<f64>, ConfigError> {
    v.split_whitespace()
        .map(|tok| parse_f64(line, key, tok))
        .collect()
}

fn parse_arr3(line: usize, key: &str, v: &str) -> Result<[f64; 3], ConfigError> {
    let items = parse_vec(line, key, v)?;
    items.try_into().map_err(|_| ConfigError::BadValue {
        line,
        key: key.into(),
        reason: "expected 3 numbers".into(),
    })
}

fn parse_arr4(line: usize, key: &str, v: &str) -> Result<[f64; 4], ConfigError> {
    let items = parse_vec(line, key, v)?;
    items.try_into().map_err(|_| ConfigError::BadValue {
        line,
        key: key.into(),
        reason: "expected 4 numbers".into(),
    })
}

fn parse_bool(line: usize, key: &str, v: &str) -> Result<bool, ConfigError> {
    match v {
        "true" | "on" | "1" => Ok(true),
        "false" | "off" | "0" => Ok(false),
        _ => Err(ConfigError::BadValue {
            line,
            key: key.into(),
            reason: "expected true/false".into(),
        }),
    }
}

fn axis_index(line: usize, key: &str) -> Result<usize, ConfigError> {
    let idx: usize = key
        .rsplit('.')
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| ConfigError::BadValue {
            line,
            key: key.into(),
            reason: "expected axis suffix .1/.2/.3".into(),
        })?;
    if (1..=3).contains(&idx) {
        Ok(idx - 1)
    } else {
        Err(ConfigError::BadValue {
            line,
            key: key.into(),
            reason: "axis must be 1, 2 or 3".into(),
        })
    }
}

impl SimConfig {
    /// Parses the flat key-value text onto the defaults.
    pub fn parse(text: &str) -> Result<SimConfig, ConfigError> {
        let mut cfg = SimConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let stripped = raw.split('#').next().unwrap_or("").trim();
            if stripped.is_empty() {
                continue;
            }
            let (key, value) = stripped.split_once('=').ok_or_else(|| ConfigError::Malformed {
                line,
                text: stripped.into(),
            })?;
            let key = key.trim();
            let v = value.trim();
            match key {
                "plant.mass" => cfg.plant.mass = parse_f64(line, key, v)?,
                "plant.payload_mass" => cfg.plant.payload_mass = parse_f64(line, key, v)?,
                "plant.gravity" => cfg.plant.gravity = parse_f64(line, key, v)?,
                "plant.inertia" => cfg.plant.inertia = parse_arr3(line, key, v)?,
                "plant.scenario" => {
                    cfg.plant.scenario = match v {
                        "known_inertia" => Scenario::KnownInertia,
                        "unknown_inertia" => Scenario::UnknownInertia,
                        _ => {
                            return Err(ConfigError::BadValue {
                                line,
                                key: key.into(),
                                reason: "expected known_inertia|unknown_inertia".into(),
                            })
                        }
                    }
                }
                "plant.disturbance.kind" => cfg.plant.disturbance.kind = v.into(),
                "plant.disturbance.amplitude" => {
                    cfg.plant.disturbance.amplitude = parse_arr3(line, key, v)?
                }
                "plant.disturbance.frequency" => {
                    cfg.plant.disturbance.frequency = parse_arr3(line, key, v)?
                }
                "plant.disturbance.phase" => cfg.plant.disturbance.phase = parse_arr3(line, key, v)?,
                "plant.disturbance.coupling_gain" => {
                    cfg.plant.disturbance.coupling_gain = parse_f64(line, key, v)?
                }
                "plant.disturbance.seeded_phases" => {
                    cfg.plant.disturbance.seeded_phases = parse_bool(line, key, v)?
                }
                "plant.allocation.arm_length" => {
                    cfg.plant.allocation.arm_length = parse_f64(line, key, v)?
                }
                "plant.allocation.thrust_coeff" => {
                    cfg.plant.allocation.thrust_coeff = parse_arr4(line, key, v)?
                }
                "plant.allocation.torque_ratio" => {
                    cfg.plant.allocation.torque_ratio = parse_arr4(line, key, v)?
                }
                "plant.allocation.thrust_perturbation" => {
                    cfg.plant.allocation.thrust_perturbation = parse_arr4(line, key, v)?
                }
                "plant.allocation.torque_perturbation" => {
                    cfg.plant.allocation.torque_perturbation = parse_arr4(line, key, v)?
                }
                "plant.allocation.max_rotor_thrust" => {
                    cfg.plant.allocation.max_rotor_thrust = parse_f64(line, key, v)?
                }
                "plant.noise.omega_std" => cfg.plant.noise.omega_std = parse_f64(line, key, v)?,
                "plant.noise.attitude_std" => {
                    cfg.plant.noise.attitude_std = parse_f64(line, key, v)?
                }
                "controller.k_r" => cfg.controller.k_r = parse_f64(line, key, v)?,
                "controller.k_omega" => cfg.controller.k_omega = parse_f64(line, key, v)?,
                "controller.c_r" => cfg.controller.c_r = parse_f64(line, key, v)?,
                "controller.sanm_enabled" => {
                    cfg.controller.sanm_enabled = parse_bool(line, key, v)?
                }
                "sanm.eta" => cfg.sanm.eta = parse_arr3(line, key, v)?,
                "sanm.scale" => cfg.sanm.scale = parse_arr3(line, key, v)?,
                "sanm.j_max" => cfg.sanm.j_max = parse_arr3(line, key, v)?,
                "sanm.j_min" => cfg.sanm.j_min = parse_f64(line, key, v)?,
                "sanm.j_bar_init" => cfg.sanm.j_bar_init = parse_arr3(line, key, v)?,
                "sanm.gamma" => cfg.sanm.gamma = parse_arr3(line, key, v)?,
                "sanm.weight_cap" => cfg.sanm.weight_cap = parse_f64(line, key, v)?,
                _ if key.starts_with("sanm.centers_e_r.") => {
                    cfg.sanm.centers_e_r[axis_index(line, key)?] = parse_vec(line, key, v)?
                }
                _ if key.starts_with("sanm.centers_e_omega.") => {
                    cfg.sanm.centers_e_omega[axis_index(line, key)?] = parse_vec(line, key, v)?
                }
                _ if key.starts_with("sanm.widths.") => {
                    cfg.sanm.widths[axis_index(line, key)?] = parse_vec(line, key, v)?
                }
                "trajectory.kind" => cfg.trajectory.kind = v.into(),
                "trajectory.heading" => cfg.trajectory.heading = parse_arr3(line, key, v)?,
                "trajectory.spin_rate" => cfg.trajectory.spin_rate = parse_f64(line, key, v)?,
                "trajectory.waypoints" => cfg.trajectory.waypoints = parse_vec(line, key, v)?,
                "initial.attitude_log" => cfg.initial.attitude_log = parse_arr3(line, key, v)?,
                "initial.omega" => cfg.initial.omega = parse_arr3(line, key, v)?,
                "run.dt" => cfg.run.dt = parse_f64(line, key, v)?,
                "run.duration" => cfg.run.duration = parse_f64(line, key, v)?,
                "run.seed" => {
                    cfg.run.seed = v.parse().map_err(|_| ConfigError::BadValue {
                        line,
                        key: key.into(),
                        reason: "expected unsigned integer".into(),
                    })?
                }
                "run.out" => cfg.run.out = Some(PathBuf::from(v)),
                _ => {
                    return Err(ConfigError::UnknownKey {
                        line,
                        key: key.into(),
                    })
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<SimConfig, ConfigError> {
        let text = std::fs::read_to_string(path)?;
        SimConfig::parse(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let fail = |msg: String| Err(ConfigError::Invalid(msg));
        if !(self.run.dt > 0.0 && self.run.dt <= tol::DT_MAX) {
            return fail(format!("run.dt = {} outside (0, {}]", self.run.dt, tol::DT_MAX));
        }
        if self.run.duration <= 0.0 {
            return fail("run.duration must be positive".into());
        }
        if self.plant.mass <= 0.0 || self.plant.payload_mass < 0.0 || self.plant.gravity <= 0.0 {
            return fail("plant masses and gravity must be positive".into());
        }
        if self.plant.inertia.iter().any(|&j| j <= 0.0) {
            return fail("plant.inertia components must be positive".into());
        }
        if !matches!(
            self.plant.disturbance.kind.as_str(),
            "none" | "sinusoid" | "payload_proxy"
        ) {
            return fail(format!(
                "plant.disturbance.kind `{}` not one of none|sinusoid|payload_proxy",
                self.plant.disturbance.kind
            ));
        }
        if self.plant.disturbance.frequency.iter().any(|&f| f < 0.0) {
            return fail("disturbance frequencies must be nonnegative".into());
        }
        if self
            .plant
            .disturbance
            .amplitude
            .iter()
            .any(|a| !a.is_finite())
        {
            return fail("disturbance amplitudes must be finite".into());
        }
        let alloc = &self.plant.allocation;
        if alloc.arm_length <= 0.0
            || alloc.max_rotor_thrust <= 0.0
            || alloc.thrust_coeff.iter().any(|&c| c <= 0.0)
            || alloc.torque_ratio.iter().any(|&c| c <= 0.0)
        {
            return fail("allocation coefficients must be positive".into());
        }
        if alloc
            .thrust_perturbation
            .iter()
            .chain(alloc.torque_perturbation.iter())
            .any(|&p| p <= -0.5 || p >= 0.5)
        {
            return fail("allocation perturbations must lie in (-0.5, 0.5)".into());
        }
        if self.plant.noise.omega_std < 0.0 || self.plant.noise.attitude_std < 0.0 {
            return fail("noise std-devs must be nonnegative".into());
        }
        let ctrl = &self.controller;
        if ctrl.k_r <= 0.0 || ctrl.k_omega <= 0.0 || ctrl.c_r <= 0.0 {
            return fail("controller gains must be positive".into());
        }
        let s = &self.sanm;
        if s.j_min <= 0.0 {
            return fail("sanm.j_min must be positive".into());
        }
        for axis in 0..3 {
            let l = s.centers_e_r[axis].len();
            if l == 0 || s.centers_e_omega[axis].len() != l || s.widths[axis].len() != l {
                return fail(format!(
                    "sanm slice {} has inconsistent center/width lengths",
                    axis + 1
                ));
            }
            if s.widths[axis].iter().any(|&b| b <= 0.0) {
                return fail("sanm widths must be positive".into());
            }
            if s.j_max[axis] <= s.j_min || s.j_bar_init[axis] < s.j_min {
                return fail("sanm inertia bounds must satisfy j_min <= j_bar_init, j_min < j_max".into());
            }
            if s.eta[axis] <= 0.0 || s.gamma[axis] <= 0.0 || s.scale[axis] <= 0.0 {
                return fail("sanm rates must be positive".into());
            }
        }
        if s.weight_cap <= 0.0 {
            return fail("sanm.weight_cap must be positive".into());
        }
        match self.trajectory.kind.as_str() {
            "fixed_hover" | "heading_spin" => {}
            "attitude_waypoints" => {
                if self.trajectory.waypoints.is_empty() || self.trajectory.waypoints.len() % 4 != 0 {
                    return fail("trajectory.waypoints must be (t, x, y, z) groups".into());
                }
            }
            other => {
                return fail(format!(
                    "trajectory.kind `{other}` not one of fixed_hover|heading_spin|attitude_waypoints"
                ))
            }
        }
        let h = Vec3::new(
            self.trajectory.heading[0],
            self.trajectory.heading[1],
            self.trajectory.heading[2],
        );
        if h.norm() < 1e-9 {
            return fail("trajectory.heading must be nonzero".into());
        }
        Ok(())
    }

    /// Hover force `(0, 0, -(m + m_p) g)` in the NED world frame.
    pub fn hover_force(&self) -> Vec3<f64> {
        Vec3::new(
            0.0,
            0.0,
            -(self.plant.mass + self.plant.payload_mass) * self.plant.gravity,
        )
    }

    pub fn inertia(&self) -> InertiaTensor<f64> {
        InertiaTensor::new(
            self.plant.inertia[0],
            self.plant.inertia[1],
            self.plant.inertia[2],
        )
    }

    pub fn gains(&self) -> ControllerGains<f64> {
        ControllerGains::new(self.controller.k_r, self.controller.k_omega, self.controller.c_r)
    }

    pub fn allocation(&self) -> AllocationModel<f64> {
        let a = &self.plant.allocation;
        AllocationModel {
            arm_length: a.arm_length,
            thrust_coeff: a.thrust_coeff,
            torque_ratio: a.torque_ratio,
            thrust_perturbation: a.thrust_perturbation,
            torque_perturbation: a.torque_perturbation,
            max_rotor_thrust: a.max_rotor_thrust,
        }
    }

    /// Disturbance model with the given per-axis phase offsets added to the
    /// configured phases.
    pub fn disturbance(&self, phase_offsets: [f64; 3]) -> DisturbanceModel<f64> {
        let d = &self.plant.disturbance;
        let amplitude = Vec3::new(d.amplitude[0], d.amplitude[1], d.amplitude[2]);
        let frequency_hz = Vec3::new(d.frequency[0], d.frequency[1], d.frequency[2]);
        let phase = Vec3::new(
            d.phase[0] + phase_offsets[0],
            d.phase[1] + phase_offsets[1],
            d.phase[2] + phase_offsets[2],
        );
        match d.kind.as_str() {
            "sinusoid" => DisturbanceModel::Sinusoid {
                amplitude,
                frequency_hz,
                phase,
            },
            "payload_proxy" => DisturbanceModel::PayloadProxy {
                amplitude,
                frequency_hz,
                phase,
                coupling_gain: d.coupling_gain,
            },
            _ => DisturbanceModel::None,
        }
    }

    pub fn trajectory(&self) -> ReferenceTrajectory<f64> {
        let force = self.hover_force();
        match self.trajectory.kind.as_str() {
            "heading_spin" => ReferenceTrajectory::HeadingSpin {
                force,
                rate: self.trajectory.spin_rate,
            },
            "attitude_waypoints" => {
                let segments = self
                    .trajectory
                    .waypoints
                    .chunks_exact(4)
                    .map(|c| (c[0], Vec3::new(c[1], c[2], c[3])))
                    .collect();
                ReferenceTrajectory::AttitudeWaypoints { force, segments }
            }
            _ => ReferenceTrajectory::FixedHover {
                force,
                heading: Vec3::new(
                    self.trajectory.heading[0],
                    self.trajectory.heading[1],
                    self.trajectory.heading[2],
                ),
            },
        }
    }

    /// Fresh identifier state: zero weights, configured inertia estimates.
    pub fn sanm_state(&self) -> SanmState<f64> {
        let s = &self.sanm;
        let slice = |axis: usize| {
            let centers = s.centers_e_r[axis]
                .iter()
                .zip(&s.centers_e_omega[axis])
                .map(|(&a, &b)| [a, b])
                .collect();
            RbfSlice::new(
                centers,
                s.widths[axis].clone(),
                s.gamma[axis],
                s.weight_cap,
            )
        };
        let inertia = |axis: usize| {
            InertiaSlice::new(
                s.j_bar_init[axis],
                s.eta[axis],
                s.scale[axis],
                s.j_max[axis],
                s.j_min,
            )
        };
        SanmState {
            inertia: [inertia(0), inertia(1), inertia(2)],
            rbf: [slice(0), slice(1), slice(2)],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        SimConfig::default().validate().unwrap();
    }

    #[test]
    fn parse_overrides_and_comments() {
        let text = "
# comment line
controller.k_r = 40.0    # trailing comment
plant.scenario = known_inertia
run.seed = 42
sanm.widths.3 = 3 3 3 3 3
";
        let cfg = SimConfig::parse(text).unwrap();
        assert_eq!(cfg.controller.k_r, 40.0);
        assert_eq!(cfg.plant.scenario, Scenario::KnownInertia);
        assert_eq!(cfg.run.seed, 42);
        assert_eq!(cfg.controller.k_omega, 80.0); // default kept
    }

    #[test]
    fn parse_rejects_unknown_key_and_bad_values() {
        assert!(matches!(
            SimConfig::parse("plant.massive = 1.0"),
            Err(ConfigError::UnknownKey { .. })
        ));
        assert!(matches!(
            SimConfig::parse("plant.mass = heavy"),
            Err(ConfigError::BadValue { .. })
        ));
        assert!(matches!(
            SimConfig::parse("run.dt = 0.05"),
            Err(ConfigError::Invalid(_))
        ));
        assert!(matches!(
            SimConfig::parse("just some text"),
            Err(ConfigError::Malformed { .. })
        ));
    }

    #[test]
    fn slice_lengths_must_agree() {
        let err = SimConfig::parse("sanm.widths.1 = 2 2").unwrap_err();
        assert!(matches!(err, ConfigError::Invalid(_)));
    }

    #[test]
    fn hover_force_matches_weights() {
        let cfg = SimConfig::default();
        let f = cfg.hover_force();
        assert!((f.z - (-(1.6 + 0.25) * 9.81)).abs() < 1e-12);
    }

    #[test]
    fn sanm_state_has_five_neurons_per_axis() {
        let st = SimConfig::default().sanm_state();
        for axis in 0..3 {
            assert_eq!(st.rbf[axis].len(), 5);
        }
        assert_eq!(st.j_bar().to_array(), [0.01, 0.02, 0.02]);
    }
}

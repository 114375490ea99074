//! Time-indexed simulation record and its CSV form.
//!
//! The CSV carries a fixed header row and full double precision (17
//! significant digits, `%.16e`), so `parse(emit(trace)) == trace` exactly
//! and identical runs produce byte-identical files. The per-axis network
//! weights are flattened one column per scalar, which makes the identifier
//! state recoverable from any row.

use crate::stability::{AdaptationRates, LyapunovSample};
use crate::so3::Vec3;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("line {line}: expected {expected} columns, found {found}")]
    ColumnCount {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: bad number `{token}`")]
    BadNumber { line: usize, token: String },
    #[error("header mismatch: {0}")]
    Header(String),
    #[error("trace is empty")]
    Empty,
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Fixed (non-weight) column names, in order.
const FIXED_COLUMNS: [&str; 56] = [
    "t", "r00", "r01", "r02", "r10", "r11", "r12", "r20", "r21", "r22", "omx", "omy", "omz",
    "rd00", "rd01", "rd02", "rd10", "rd11", "rd12", "rd20", "rd21", "rd22", "omdx", "omdy",
    "omdz", "erx", "ery", "erz", "eox", "eoy", "eoz", "psi_r", "mdx", "mdy", "mdz", "mx", "my",
    "mz", "dmx", "dmy", "dmz", "phix", "phiy", "phiz", "phibx", "phiby", "phibz", "jbar1",
    "jbar2", "jbar3", "wn1", "wn2", "wn3", "v_rs", "v_re", "v_r",
];

/// One logged control step.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub t: f64,
    pub r: [f64; 9],
    pub omega: [f64; 3],
    pub rd: [f64; 9],
    pub omega_d: [f64; 3],
    pub e_r: [f64; 3],
    pub e_omega: [f64; 3],
    pub psi_r: f64,
    pub m_d: [f64; 3],
    pub m: [f64; 3],
    pub delta_m: [f64; 3],
    pub phi_true: [f64; 3],
    pub phi_bar: [f64; 3],
    pub j_bar: [f64; 3],
    pub w_norm: [f64; 3],
    pub v_rs: f64,
    pub v_re: f64,
    pub v_r: f64,
    /// Flattened per-axis weights, axis-major (`3 * neuron_count` values).
    pub weights: Vec<f64>,
}

impl TraceRow {
    /// `|(|e_R|, |e_Omega|)|`.
    pub fn z_norm(&self) -> f64 {
        let er2: f64 = self.e_r.iter().map(|v| v * v).sum();
        let eo2: f64 = self.e_omega.iter().map(|v| v * v).sum();
        (er2 + eo2).sqrt()
    }

    pub fn e_r_vec(&self) -> Vec3<f64> {
        Vec3::from_array(self.e_r)
    }

    pub fn e_omega_vec(&self) -> Vec3<f64> {
        Vec3::from_array(self.e_omega)
    }
}

/// Uniformly sampled simulation trace.
#[derive(Debug, Clone, PartialEq)]
pub struct SimTrace {
    /// Neurons per axis slice (fixes the column count).
    pub neuron_count: usize,
    pub rows: Vec<TraceRow>,
}

impl SimTrace {
    pub fn new(neuron_count: usize) -> Self {
        SimTrace {
            neuron_count,
            rows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Sample interval, from the first two rows.
    pub fn dt(&self) -> Option<f64> {
        (self.rows.len() >= 2).then(|| self.rows[1].t - self.rows[0].t)
    }

    pub fn column_count(&self) -> usize {
        FIXED_COLUMNS.len() + 3 * self.neuron_count
    }

    pub fn header(&self) -> String {
        let mut cols: Vec<String> = FIXED_COLUMNS.iter().map(|s| s.to_string()).collect();
        for axis in 1..=3 {
            for k in 1..=self.neuron_count {
                cols.push(format!("w{axis}_{k}"));
            }
        }
        cols.join(",")
    }

    /// `|z_R|` per row.
    pub fn z_norms(&self) -> Vec<f64> {
        self.rows.iter().map(TraceRow::z_norm).collect()
    }

    /// Lyapunov samples as logged (derivatives unfilled).
    pub fn lyapunov_samples(&self) -> Vec<LyapunovSample<f64>> {
        self.rows
            .iter()
            .map(|r| LyapunovSample {
                t: r.t,
                v_rs: r.v_rs,
                v_re: r.v_re,
                v_r: r.v_r,
                z_r_norm: r.z_norm(),
                vdot_fd: None,
            })
            .collect()
    }

    /// Max `|z_R|` over the final `fraction` of the rows.
    pub fn tail_max_z(&self, fraction: f64) -> f64 {
        let n = self.rows.len();
        let tail = ((n as f64) * fraction).floor().max(1.0) as usize;
        self.rows[n.saturating_sub(tail)..]
            .iter()
            .map(TraceRow::z_norm)
            .fold(0.0, f64::max)
    }

    /// Per-axis weights of the identifier at row `i`.
    pub fn weights_at(&self, i: usize) -> [&[f64]; 3] {
        let l = self.neuron_count;
        let w = &self.rows[i].weights;
        [&w[0..l], &w[l..2 * l], &w[2 * l..3 * l]]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.rows.len() * 24 * self.column_count());
        out.push_str(&self.header());
        out.push('\n');
        let mut fields: Vec<f64> = Vec::with_capacity(self.column_count());
        for row in &self.rows {
            fields.clear();
            fields.push(row.t);
            fields.extend_from_slice(&row.r);
            fields.extend_from_slice(&row.omega);
            fields.extend_from_slice(&row.rd);
            fields.extend_from_slice(&row.omega_d);
            fields.extend_from_slice(&row.e_r);
            fields.extend_from_slice(&row.e_omega);
            fields.push(row.psi_r);
            fields.extend_from_slice(&row.m_d);
            fields.extend_from_slice(&row.m);
            fields.extend_from_slice(&row.delta_m);
            fields.extend_from_slice(&row.phi_true);
            fields.extend_from_slice(&row.phi_bar);
            fields.extend_from_slice(&row.j_bar);
            fields.extend_from_slice(&row.w_norm);
            fields.push(row.v_rs);
            fields.push(row.v_re);
            fields.push(row.v_r);
            fields.extend_from_slice(&row.weights);
            for (i, v) in fields.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&format!("{v:.16e}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<SimTrace, TraceError> {
        let mut lines = text.lines();
        let header = lines.next().ok_or(TraceError::Empty)?;
        let cols: Vec<&str> = header.split(',').collect();
        if cols.len() < FIXED_COLUMNS.len() || (cols.len() - FIXED_COLUMNS.len()) % 3 != 0 {
            return Err(TraceError::Header(format!(
                "unexpected column count {}",
                cols.len()
            )));
        }
        for (have, want) in cols.iter().zip(FIXED_COLUMNS.iter()) {
            if have != want {
                return Err(TraceError::Header(format!(
                    "column `{have}` where `{want}` expected"
                )));
            }
        }
        let neuron_count = (cols.len() - FIXED_COLUMNS.len()) / 3;
        let expected = cols.len();
        let mut trace = SimTrace::new(neuron_count);
        for (lineno, line) in lines.enumerate() {
            if line.is_empty() {
                continue;
            }
            let line_idx = lineno + 2;
            let mut values = Vec::with_capacity(expected);
            for token in line.split(',') {
                values.push(token.parse::<f64>().map_err(|_| TraceError::BadNumber {
                    line: line_idx,
                    token: token.into(),
                })?);
            }
            if values.len() != expected {
                return Err(TraceError::ColumnCount {
                    line: line_idx,
                    expected,
                    found: values.len(),
                });
            }
            let mut it = values.into_iter();
            let mut take = |n: usize| -> Vec<f64> { it.by_ref().take(n).collect() };
            let t = take(1)[0];
            let r: [f64; 9] = take(9).try_into().unwrap();
            let omega: [f64; 3] = take(3).try_into().unwrap();
            let rd: [f64; 9] = take(9).try_into().unwrap();
            let omega_d: [f64; 3] = take(3).try_into().unwrap();
            let e_r: [f64; 3] = take(3).try_into().unwrap();
            let e_omega: [f64; 3] = take(3).try_into().unwrap();
            let psi_r = take(1)[0];
            let m_d: [f64; 3] = take(3).try_into().unwrap();
            let m: [f64; 3] = take(3).try_into().unwrap();
            let delta_m: [f64; 3] = take(3).try_into().unwrap();
            let phi_true: [f64; 3] = take(3).try_into().unwrap();
            let phi_bar: [f64; 3] = take(3).try_into().unwrap();
            let j_bar: [f64; 3] = take(3).try_into().unwrap();
            let w_norm: [f64; 3] = take(3).try_into().unwrap();
            let v_rs = take(1)[0];
            let v_re = take(1)[0];
            let v_r = take(1)[0];
            let weights: Vec<f64> = it.collect();
            trace.rows.push(TraceRow {
                t,
                r,
                omega,
                rd,
                omega_d,
                e_r,
                e_omega,
                psi_r,
                m_d,
                m,
                delta_m,
                phi_true,
                phi_bar,
                j_bar,
                w_norm,
                v_rs,
                v_re,
                v_r,
                weights,
            });
        }
        Ok(trace)
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), TraceError> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }

    pub fn read_csv(path: &Path) -> Result<SimTrace, TraceError> {
        SimTrace::from_csv(&std::fs::read_to_string(path)?)
    }
}

/// Adaptation rates bundled for Lyapunov logging.
pub fn rates_from_arrays(eta: [f64; 3], gamma: [f64; 3]) -> AdaptationRates<f64> {
    AdaptationRates {
        eta: Vec3::from_array(eta),
        gamma: Vec3::from_array(gamma),
    }
}

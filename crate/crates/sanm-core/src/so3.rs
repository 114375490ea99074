//! SO(3)/so(3) algebra: hat/vee maps, rotation exponential and logarithm,
//! attitude error functions and the configuration error scalar.
//!
//! All types are immutable values and every operation is a pure function,
//! safe to call concurrently.

use crate::{tol, Real};
use core::ops::{Add, Div, Index, Mul, Neg, Sub};
use thiserror::Error;

/// Errors from the SO(3) primitives.
#[derive(Debug, Error, PartialEq)]
pub enum So3Error {
    /// The checked vee map received a matrix whose symmetric part exceeds
    /// the skew tolerance.
    #[error("matrix is not skew-symmetric: symmetric part {max_sym:e} exceeds {tolerance:e}")]
    NonSkewInput { max_sym: f64, tolerance: f64 },
    /// `orthonormalize` received a matrix outside its repair radius.
    #[error("matrix is {distance:e} (Frobenius) from SO(3), repair radius is {radius:e}")]
    TooFarFromSO3 { distance: f64, radius: f64 },
}

/// 3-vector. Units depend on role: rad/s for angular velocities, N*m for
/// moments, dimensionless for error vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Vec3<T> {
    #[inline]
    pub fn new(x: T, y: T, z: T) -> Self {
        Vec3 { x, y, z }
    }

    #[inline]
    pub fn zero() -> Self {
        Vec3::new(T::zero(), T::zero(), T::zero())
    }

    #[inline]
    pub fn dot(self, other: Self) -> T {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    #[inline]
    pub fn cross(self, other: Self) -> Self {
        Vec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    #[inline]
    pub fn norm_squared(self) -> T {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> T {
        self.norm_squared().sqrt()
    }

    #[inline]
    pub fn normalized(self) -> Self {
        self / self.norm()
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    #[inline]
    pub fn to_array(self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    #[inline]
    pub fn from_array(a: [T; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }

    /// Largest absolute component.
    #[inline]
    pub fn max_abs(self) -> T {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }
}

impl<T: Real> Index<usize> for Vec3<T> {
    type Output = T;
    #[inline]
    fn index(&self, i: usize) -> &T {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("Vec3 index {i} out of range"),
        }
    }
}

impl<T: Real> Add for Vec3<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Real> Sub for Vec3<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Real> Neg for Vec3<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl<T: Real> Mul<T> for Vec3<T> {
    type Output = Self;
    #[inline]
    fn mul(self, s: T) -> Self {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl<T: Real> Div<T> for Vec3<T> {
    type Output = Self;
    #[inline]
    fn div(self, s: T) -> Self {
        Vec3::new(self.x / s, self.y / s, self.z / s)
    }
}

/// 3x3 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3<T> {
    pub m: [[T; 3]; 3],
}

impl<T: Real> Mat3<T> {
    #[inline]
    pub fn new(m: [[T; 3]; 3]) -> Self {
        Mat3 { m }
    }

    #[inline]
    pub fn zero() -> Self {
        Mat3::new([[T::zero(); 3]; 3])
    }

    #[inline]
    pub fn identity() -> Self {
        let mut m = [[T::zero(); 3]; 3];
        m[0][0] = T::one();
        m[1][1] = T::one();
        m[2][2] = T::one();
        Mat3::new(m)
    }

    #[inline]
    pub fn from_columns(c0: Vec3<T>, c1: Vec3<T>, c2: Vec3<T>) -> Self {
        Mat3::new([
            [c0.x, c1.x, c2.x],
            [c0.y, c1.y, c2.y],
            [c0.z, c1.z, c2.z],
        ])
    }

    #[inline]
    pub fn column(&self, j: usize) -> Vec3<T> {
        Vec3::new(self.m[0][j], self.m[1][j], self.m[2][j])
    }

    #[inline]
    pub fn row(&self, i: usize) -> Vec3<T> {
        Vec3::from_array(self.m[i])
    }

    #[inline]
    pub fn transpose(&self) -> Self {
        let m = &self.m;
        Mat3::new([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    #[inline]
    pub fn trace(&self) -> T {
        self.m[0][0] + self.m[1][1] + self.m[2][2]
    }

    pub fn determinant(&self) -> T {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Inverse via the adjugate; `None` when the determinant vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let det = self.determinant();
        if det == T::zero() || !det.is_finite() {
            return None;
        }
        let m = &self.m;
        let inv_det = T::one() / det;
        let adj = [
            [
                m[1][1] * m[2][2] - m[1][2] * m[2][1],
                m[0][2] * m[2][1] - m[0][1] * m[2][2],
                m[0][1] * m[1][2] - m[0][2] * m[1][1],
            ],
            [
                m[1][2] * m[2][0] - m[1][0] * m[2][2],
                m[0][0] * m[2][2] - m[0][2] * m[2][0],
                m[0][2] * m[1][0] - m[0][0] * m[1][2],
            ],
            [
                m[1][0] * m[2][1] - m[1][1] * m[2][0],
                m[0][1] * m[2][0] - m[0][0] * m[2][1],
                m[0][0] * m[1][1] - m[0][1] * m[1][0],
            ],
        ];
        let mut out = [[T::zero(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = adj[i][j] * inv_det;
            }
        }
        Some(Mat3::new(out))
    }

    #[inline]
    pub fn scale(&self, s: T) -> Self {
        let mut out = self.m;
        for row in &mut out {
            for v in row {
                *v = *v * s;
            }
        }
        Mat3::new(out)
    }

    pub fn max_abs(&self) -> T {
        let mut acc = T::zero();
        for row in &self.m {
            for v in row {
                acc = acc.max(v.abs());
            }
        }
        acc
    }

    pub fn frobenius_norm(&self) -> T {
        let mut acc = T::zero();
        for row in &self.m {
            for v in row {
                acc = acc + *v * *v;
            }
        }
        acc.sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().all(|r| r.iter().all(|v| v.is_finite()))
    }

    /// Max-abs entry of `self^T self - I`.
    pub fn orthonormality_defect(&self) -> T {
        let p = self.transpose() * *self;
        let mut defect = T::zero();
        for i in 0..3 {
            for j in 0..3 {
                let target = if i == j { T::one() } else { T::zero() };
                defect = defect.max((p.m[i][j] - target).abs());
            }
        }
        defect
    }
}

impl<T: Real> Add for Mat3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut out = self.m;
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = out[i][j] + o.m[i][j];
            }
        }
        Mat3::new(out)
    }
}

impl<T: Real> Sub for Mat3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let mut out = self.m;
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = out[i][j] - o.m[i][j];
            }
        }
        Mat3::new(out)
    }
}

impl<T: Real> Mul for Mat3<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut out = [[T::zero(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = T::zero();
                for k in 0..3 {
                    acc = acc + self.m[i][k] * o.m[k][j];
                }
                out[i][j] = acc;
            }
        }
        Mat3::new(out)
    }
}

impl<T: Real> Mul<Vec3<T>> for Mat3<T> {
    type Output = Vec3<T>;
    #[inline]
    fn mul(self, v: Vec3<T>) -> Vec3<T> {
        let m = &self.m;
        Vec3::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }
}

/// Orthonormal 3x3 attitude with determinant +1.
///
/// Construction goes through [`RotationMatrix::from_matrix`] (validated),
/// [`exp_so3`] or [`orthonormalize`]; products of rotations stay rotations
/// up to rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationMatrix<T>(Mat3<T>);

impl<T: Real> RotationMatrix<T> {
    #[inline]
    pub fn identity() -> Self {
        RotationMatrix(Mat3::identity())
    }

    /// Validates the rotation invariants (orthonormality and determinant
    /// within tolerance) before wrapping.
    pub fn from_matrix(m: Mat3<T>) -> Result<Self, So3Error> {
        let tolerance = invariant_tol::<T>();
        let defect = m.orthonormality_defect();
        let det_defect = (m.determinant() - T::one()).abs();
        if defect > tolerance || det_defect > tolerance {
            let distance = nearest_rotation_distance(&m);
            return Err(So3Error::TooFarFromSO3 {
                distance,
                radius: tolerance.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(RotationMatrix(m))
    }

    pub fn from_columns(c0: Vec3<T>, c1: Vec3<T>, c2: Vec3<T>) -> Result<Self, So3Error> {
        Self::from_matrix(Mat3::from_columns(c0, c1, c2))
    }

    #[inline]
    pub(crate) fn new_unchecked(m: Mat3<T>) -> Self {
        RotationMatrix(m)
    }

    #[inline]
    pub fn matrix(&self) -> &Mat3<T> {
        &self.0
    }

    #[inline]
    pub fn transpose(&self) -> Self {
        RotationMatrix(self.0.transpose())
    }

    /// `self * v`.
    #[inline]
    pub fn rotate(&self, v: Vec3<T>) -> Vec3<T> {
        self.0 * v
    }

    #[inline]
    pub fn orthonormality_defect(&self) -> T {
        self.0.orthonormality_defect()
    }
}

impl<T: Real> Mul for RotationMatrix<T> {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        RotationMatrix(self.0 * o.0)
    }
}

fn invariant_tol<T: Real>() -> T {
    T::lit(tol::ROTATION_INVARIANT).max(T::epsilon() * T::lit(100.0))
}

/// Skew-symmetric (cross-product) matrix of `v`: `hat(a) * b = a x b`.
#[inline]
pub fn hat<T: Real>(v: Vec3<T>) -> Mat3<T> {
    let z = T::zero();
    Mat3::new([[z, -v.z, v.y], [v.z, z, -v.x], [-v.y, v.x, z]])
}

/// Inverse of [`hat`]. Rejects matrices whose symmetric part exceeds the
/// skew tolerance.
pub fn vee<T: Real>(m: &Mat3<T>) -> Result<Vec3<T>, So3Error> {
    let half = T::lit(0.5);
    let mut max_sym = T::zero();
    for i in 0..3 {
        for j in i..3 {
            let s = if i == j {
                m.m[i][j].abs()
            } else {
                ((m.m[i][j] + m.m[j][i]) * half).abs()
            };
            max_sym = max_sym.max(s);
        }
    }
    let tolerance = T::lit(tol::SKEW_INPUT).max(T::epsilon() * T::lit(100.0));
    if max_sym > tolerance {
        return Err(So3Error::NonSkewInput {
            max_sym: max_sym.to_f64().unwrap_or(f64::NAN),
            tolerance: tolerance.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(Vec3::new(m.m[2][1], m.m[0][2], m.m[1][0]))
}

/// `(1/2) (m - m^T)^vee`, exact for any matrix. The antisymmetric part of
/// a float matrix is exactly skew, so no tolerance check is needed.
#[inline]
pub fn antisymmetric_vee<T: Real>(m: &Mat3<T>) -> Vec3<T> {
    let half = T::lit(0.5);
    Vec3::new(
        (m.m[2][1] - m.m[1][2]) * half,
        (m.m[0][2] - m.m[2][0]) * half,
        (m.m[1][0] - m.m[0][1]) * half,
    )
}

/// Rotation exponential (Rodrigues form), with a series branch below the
/// small-angle threshold to avoid sin(theta)/theta at 0/0.
pub fn exp_so3<T: Real>(v: Vec3<T>) -> RotationMatrix<T> {
    debug_assert!(v.is_finite());
    let theta_sq = v.norm_squared();
    let theta = theta_sq.sqrt();
    let (a, b) = if theta < T::lit(tol::EXP_SMALL_ANGLE) {
        // sin(t)/t and (1-cos t)/t^2 to second order
        let six = T::lit(6.0);
        let twenty_four = T::lit(24.0);
        (
            T::one() - theta_sq / six,
            T::lit(0.5) - theta_sq / twenty_four,
        )
    } else {
        (theta.sin() / theta, (T::one() - theta.cos()) / theta_sq)
    };
    let k = hat(v);
    let k2 = k * k;
    let m = Mat3::identity() + k.scale(a) + k2.scale(b);
    RotationMatrix::new_unchecked(m)
}

/// Rotation logarithm: the axis-angle vector `v` with `exp_so3(v) = r`,
/// `|v| <= pi`.
pub fn log_so3<T: Real>(r: &RotationMatrix<T>) -> Vec3<T> {
    let m = r.matrix();
    let half = T::lit(0.5);
    let cos_theta = ((m.trace() - T::one()) * half)
        .max(-T::one())
        .min(T::one());
    let w = antisymmetric_vee(m); // = sin(theta) * axis
    let sin_theta = w.norm();
    let theta = sin_theta.atan2(cos_theta);

    if theta < T::lit(tol::LOG_SMALL_ANGLE) {
        // sin t ~ t: w itself is the answer to second order
        return w;
    }
    if cos_theta > T::lit(tol::LOG_SYMMETRIC_BRANCH_COS) {
        return w * (theta / sin_theta);
    }

    // Large angles: the antisymmetric part degenerates as theta -> pi.
    // Use a a^T = (sym(R) - cos I) / (1 - cos), well-conditioned there.
    let one_minus_cos = T::one() - cos_theta;
    let sym = (*m + m.transpose()).scale(half);
    let diag = |i: usize| ((sym.m[i][i] - cos_theta) / one_minus_cos).max(T::zero());
    let mut k = 0;
    for i in 1..3 {
        if diag(i) > diag(k) {
            k = i;
        }
    }
    let ak = diag(k).sqrt();
    let mut a = [T::zero(); 3];
    for (i, slot) in a.iter_mut().enumerate() {
        *slot = if i == k {
            ak
        } else {
            sym.m[i][k] / one_minus_cos / ak
        };
    }
    let axis = Vec3::from_array(a).normalized();
    // fix the sign against the antisymmetric part when it is nonzero;
    // at exactly pi both signs are valid
    let axis = if w.dot(axis) < T::zero() { -axis } else { axis };
    axis * theta
}

/// Attitude tracking error `(1/2) (Rd^T R - R^T Rd)^vee`; norm is at
/// most 1 (it equals sin of the rotation angle between `r` and `rd`).
#[inline]
pub fn attitude_error<T: Real>(r: &RotationMatrix<T>, rd: &RotationMatrix<T>) -> Vec3<T> {
    let a = rd.transpose().matrix().mul(*r.matrix());
    antisymmetric_vee(&a)
}

/// Angular velocity tracking error `Omega - R^T Rd Omega_d` (body frame).
#[inline]
pub fn angular_velocity_error<T: Real>(
    omega: Vec3<T>,
    r: &RotationMatrix<T>,
    rd: &RotationMatrix<T>,
    omega_d: Vec3<T>,
) -> Vec3<T> {
    let transported = r.transpose().matrix().mul(*rd.matrix()) * omega_d;
    omega - transported
}

/// Attitude configuration error scalar `(1/2) tr[I - Rd^T R]`, in `[0, 2]`;
/// 0 at coincidence, 2 at a half-turn.
#[inline]
pub fn psi_r<T: Real>(r: &RotationMatrix<T>, rd: &RotationMatrix<T>) -> T {
    let a = rd.transpose().matrix().mul(*r.matrix());
    (T::lit(3.0) - a.trace()) * T::lit(0.5)
}

/// The linear map taking `e_Omega` to `d/dt e_R`:
/// `(1/2) (tr[R^T Rd] I - R^T Rd)`. Its spectral norm is at most 1.
pub fn attitude_error_rate_map<T: Real>(
    r: &RotationMatrix<T>,
    rd: &RotationMatrix<T>,
) -> Mat3<T> {
    let q = r.transpose().matrix().mul(*rd.matrix());
    let half = T::lit(0.5);
    (Mat3::identity().scale(q.trace()) - q).scale(half)
}

/// Projects a matrix near SO(3) back onto it by iterated polar refinement
/// `R <- (R + R^-T) / 2`, run to convergence. Rejects inputs farther than
/// the repair radius from the nearest rotation.
pub fn orthonormalize<T: Real>(m: &Mat3<T>) -> Result<RotationMatrix<T>, So3Error> {
    let radius = tol::ORTHONORMALIZE_RADIUS;
    if !m.is_finite() || m.determinant() <= T::zero() {
        return Err(So3Error::TooFarFromSO3 {
            distance: f64::INFINITY,
            radius,
        });
    }
    let conv = T::epsilon() * T::lit(tol::POLAR_CONVERGENCE_EPS_FACTOR);
    let half = T::lit(0.5);
    let mut x = *m;
    for _ in 0..60 {
        let inv_t = match x.inverse() {
            Some(inv) => inv.transpose(),
            None => {
                return Err(So3Error::TooFarFromSO3 {
                    distance: f64::INFINITY,
                    radius,
                })
            }
        };
        let next = (x + inv_t).scale(half);
        let delta = (next - x).max_abs();
        x = next;
        if delta < conv {
            break;
        }
    }
    let distance = (*m - x).frobenius_norm();
    if distance > T::lit(radius) {
        return Err(So3Error::TooFarFromSO3 {
            distance: distance.to_f64().unwrap_or(f64::NAN),
            radius,
        });
    }
    Ok(RotationMatrix(x))
}

/// Frobenius distance from `m` to the nearest rotation, or infinity when
/// no rotation is reachable (non-positive determinant).
fn nearest_rotation_distance<T: Real>(m: &Mat3<T>) -> f64 {
    match polar_factor(m) {
        Some(q) => (*m - q).frobenius_norm().to_f64().unwrap_or(f64::NAN),
        None => f64::INFINITY,
    }
}

fn polar_factor<T: Real>(m: &Mat3<T>) -> Option<Mat3<T>> {
    if !m.is_finite() || m.determinant() <= T::zero() {
        return None;
    }
    let conv = T::epsilon() * T::lit(tol::POLAR_CONVERGENCE_EPS_FACTOR);
    let half = T::lit(0.5);
    let mut x = *m;
    for _ in 0..60 {
        let inv_t = x.inverse()?.transpose();
        let next = (x + inv_t).scale(half);
        let delta = (next - x).max_abs();
        x = next;
        if delta < conv {
            return Some(x);
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    type V = Vec3<f64>;

    fn vec(x: f64, y: f64, z: f64) -> V {
        Vec3::new(x, y, z)
    }

    #[test]
    fn hat_basis_and_general() {
        let m = hat(vec(1.0, 0.0, 0.0));
        assert_eq!(
            m,
            Mat3::new([[0.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]])
        );
        assert_eq!(hat(V::zero()), Mat3::zero());
        let m = hat(vec(1.0, 2.0, 3.0));
        assert_eq!(
            m,
            Mat3::new([[0.0, -3.0, 2.0], [3.0, 0.0, -1.0], [-2.0, 1.0, 0.0]])
        );
    }

    #[test]
    fn vee_examples() {
        assert_eq!(vee(&hat(vec(1.0, 2.0, 3.0))).unwrap(), vec(1.0, 2.0, 3.0));
        assert_eq!(vee(&Mat3::zero()).unwrap(), V::zero());
        let m = Mat3::new([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]);
        assert_eq!(vee(&m).unwrap(), vec(0.0, 0.0, 1.0));
    }

    #[test]
    fn vee_rejects_symmetric_part() {
        let m = Mat3::new([[0.0, -1.0, 0.0], [1.0, 2e-8, 0.0], [0.0, 0.0, 0.0]]);
        assert!(matches!(vee(&m), Err(So3Error::NonSkewInput { .. })));
    }

    #[test]
    fn exp_identity_and_half_turn() {
        let r = exp_so3(V::zero());
        assert_eq!(*r.matrix(), Mat3::identity());

        let r = exp_so3(vec(0.0, 0.0, core::f64::consts::PI));
        let expected = Mat3::new([[-1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]]);
        assert!((*r.matrix() - expected).max_abs() < 1e-12);
    }

    // from tools/so3_exp_oracle.py (truncated power series, 20 terms)
    const EXP_SERIES_EXPECTED: [[f64; 3]; 3] = [
        [
            9.75290308953045693e-01,
            -1.27334574917630283e-01,
            -1.80540076694397728e-01,
        ],
        [
            6.80313164049400204e-02,
            9.50580617906091496e-01,
            -3.02932713402637166e-01,
        ],
        [
            2.10191705950742824e-01,
            2.83164960565073676e-01,
            9.35754803277918823e-01,
        ],
    ];

    #[test]
    fn exp_matches_series_oracle() {
        let r = exp_so3(vec(0.3, -0.2, 0.1));
        let diff = (*r.matrix() - Mat3::new(EXP_SERIES_EXPECTED)).max_abs();
        assert!(diff < 1e-14, "diff {diff:e}");
    }

    #[test]
    fn exp_small_angle_branch() {
        let v = vec(3e-9, -2e-9, 1e-9);
        let r = exp_so3(v);
        assert!(r.orthonormality_defect() < 1e-15);
        // exp(-v) = exp(v)^T
        let rt = exp_so3(-v);
        assert!((*rt.matrix() - r.transpose().0).max_abs() == 0.0);
    }

    #[test]
    fn attitude_error_examples() {
        let id = RotationMatrix::<f64>::identity();
        assert_eq!(attitude_error(&id, &id), V::zero());

        let r = exp_so3(vec(0.0, 0.0, core::f64::consts::FRAC_PI_2));
        let e = attitude_error(&r, &id);
        assert_abs_diff_eq!(e.x, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e.y, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e.z, 1.0, epsilon = 1e-15);

        let r = exp_so3(vec(0.0, 0.0, 0.1));
        let e = attitude_error(&r, &id);
        assert_abs_diff_eq!(e.z, 0.1f64.sin(), epsilon = 1e-15);
    }

    #[test]
    fn angular_velocity_error_examples() {
        let id = RotationMatrix::<f64>::identity();
        assert_eq!(
            angular_velocity_error(V::zero(), &id, &id, V::zero()),
            V::zero()
        );
        let spin = vec(0.0, 0.0, 1.0);
        let e = angular_velocity_error(spin, &id, &id, spin);
        assert_eq!(e, V::zero());

        let r = exp_so3(vec(0.0, 0.0, core::f64::consts::PI));
        let e = angular_velocity_error(V::zero(), &r, &id, vec(1.0, 0.0, 0.0));
        assert_abs_diff_eq!(e.x, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e.y, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn psi_examples() {
        let id = RotationMatrix::<f64>::identity();
        assert_eq!(psi_r(&id, &id), 0.0);
        let r = exp_so3(vec(0.0, 0.0, core::f64::consts::PI));
        assert_abs_diff_eq!(psi_r(&r, &id), 2.0, epsilon = 1e-12);
        let r = exp_so3(vec(0.0, 0.0, core::f64::consts::FRAC_PI_2));
        assert_abs_diff_eq!(psi_r(&r, &id), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn orthonormalize_fixed_point_and_repair() {
        let r = exp_so3(vec(0.4, -0.7, 0.2));
        let fixed = orthonormalize(r.matrix()).unwrap();
        assert!((*fixed.matrix() - *r.matrix()).max_abs() < 1e-12);

        let mut m = *r.matrix();
        m.m[0][1] += 1e-6;
        let repaired = orthonormalize(&m).unwrap();
        assert!(repaired.orthonormality_defect() < 1e-14);
        assert!((*repaired.matrix() - m).frobenius_norm() < 2e-6);
    }

    #[test]
    fn orthonormalize_rejects_scaled() {
        let m = Mat3::identity().scale(2.0);
        assert!(matches!(
            orthonormalize(&m),
            Err(So3Error::TooFarFromSO3 { .. })
        ));
    }

    #[test]
    fn log_round_trip_near_pi() {
        let axis = vec(1.0, 2.0, -0.5).normalized();
        for &angle in &[2.8, 3.141, 3.1415926, core::f64::consts::PI] {
            let v = axis * angle;
            let r = exp_so3(v);
            let back = log_so3(&r);
            let diff = (exp_so3(back).matrix().sub(*r.matrix())).max_abs();
            assert!(diff < 1e-12, "angle {angle}: diff {diff:e}");
        }
    }

    #[test]
    fn swap_antisymmetry_is_exact() {
        let r = exp_so3(vec(0.3, 0.1, -0.2));
        let rd = exp_so3(vec(-0.1, 0.25, 0.05));
        let e1 = attitude_error(&r, &rd);
        let e2 = attitude_error(&rd, &r);
        assert_eq!(e1 + e2, V::zero());
    }

    #[test]
    fn swap_antisymmetry_transported_small_angle() {
        let r = exp_so3(vec(4e-6, -2e-6, 3e-6));
        let rd = exp_so3(vec(-1e-6, 5e-6, 2e-6));
        let e1 = attitude_error(&r, &rd);
        let e2 = attitude_error(&rd, &r);
        let transport = r.transpose().matrix().mul(*rd.matrix());
        let residual = (e1 + transport * e2).max_abs();
        assert!(residual < 1e-9, "residual {residual:e}");
    }

    fn spectral_norm(m: &Mat3<f64>) -> f64 {
        // power iteration on m^T m
        let mtm = m.transpose().mul(*m);
        let mut v = vec(1.0, 0.7, -0.3).normalized();
        for _ in 0..200 {
            v = (mtm * v).normalized();
        }
        (mtm * v).dot(v).sqrt()
    }

    fn rot_strategy() -> impl Strategy<Value = RotationMatrix<f64>> {
        (
            -1.0f64..1.0,
            -1.0f64..1.0,
            -1.0f64..1.0,
            1e-4f64..(core::f64::consts::PI - 1e-3),
        )
            .prop_map(|(x, y, z, angle)| {
                let axis = vec(x, y, z);
                let axis = if axis.norm() < 1e-6 {
                    vec(1.0, 0.0, 0.0)
                } else {
                    axis.normalized()
                };
                exp_so3(axis * angle)
            })
    }

    proptest! {
        #[test]
        fn prop_vee_hat_roundtrip(x in -1e3f64..1e3, y in -1e3f64..1e3, z in -1e3f64..1e3) {
            let v = vec(x, y, z);
            prop_assert_eq!(vee(&hat(v)).unwrap(), v);
            let s = hat(v);
            prop_assert_eq!(hat(vee(&s).unwrap()), s);
        }

        #[test]
        fn prop_hat_is_cross(a in proptest::array::uniform3(-10.0f64..10.0),
                             b in proptest::array::uniform3(-10.0f64..10.0)) {
            let va = V::from_array(a);
            let vb = V::from_array(b);
            let lhs = hat(va) * vb;
            let rhs = va.cross(vb);
            prop_assert!((lhs - rhs).max_abs() < 1e-12);
        }

        #[test]
        fn prop_exp_is_rotation(a in proptest::array::uniform3(-10.0f64..10.0)) {
            let r = exp_so3(V::from_array(a));
            prop_assert!(r.orthonormality_defect() < 1e-9);
            prop_assert!((r.matrix().determinant() - 1.0).abs() < 1e-9);
        }

        #[test]
        fn prop_exp_transpose_inverse(a in proptest::array::uniform3(-3.0f64..3.0)) {
            let v = V::from_array(a);
            let diff = (*exp_so3(-v).matrix() - exp_so3(v).transpose().0).max_abs();
            prop_assert!(diff < 1e-15);
        }

        #[test]
        fn prop_error_norm_psi_identity(r in rot_strategy(), rd in rot_strategy()) {
            let e = attitude_error(&r, &rd);
            let psi = psi_r(&r, &rd);
            prop_assert!(e.norm() <= 1.0 + 1e-12);
            prop_assert!((e.norm_squared() - psi * (2.0 - psi)).abs() < 1e-9);
            prop_assert!((-1e-12..=2.0 + 1e-12).contains(&psi));
        }

        #[test]
        fn prop_psi_sandwich(r in rot_strategy(), rd in rot_strategy()) {
            let e = attitude_error(&r, &rd);
            let psi = psi_r(&r, &rd);
            // lower bound always; upper bound whenever psi <= psi_bar < 2
            prop_assert!(0.5 * e.norm_squared() <= psi + 1e-12);
            let psi_bar: f64 = 1.99;
            if psi <= psi_bar {
                prop_assert!(psi <= e.norm_squared() / (2.0 - psi_bar) + 1e-9);
            }
        }

        #[test]
        fn prop_rate_map_norm_bounded(r in rot_strategy(), rd in rot_strategy()) {
            let y = attitude_error_rate_map(&r, &rd);
            prop_assert!(spectral_norm(&y) <= 1.0 + 1e-9);
        }

        #[test]
        fn prop_log_exp_roundtrip(a in proptest::array::uniform3(-1.0f64..1.0),
                                  scale in 1e-6f64..3.0) {
            let v = V::from_array(a);
            prop_assume!(v.norm() > 1e-9);
            let v = v.normalized() * scale;
            let back = log_so3(&exp_so3(v));
            prop_assert!((back - v).max_abs() < 1e-9);
        }
    }
}

//! The two-to-one map from SU(2) onto SO(3).

use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::algebra::{require_unit, sigma_dot, Mat2c, Vec3};
use crate::spinor::{FlagParams, Spinor};
use crate::{Error, Result, DEFAULT_TOL};

/// A 3×3 real rotation matrix acting on column vectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rot3(pub [[f64; 3]; 3]);

impl Rot3 {
    pub fn identity() -> Self {
        Rot3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Rot3(std::array::from_fn(|r| std::array::from_fn(|c| m[c][r])))
    }

    pub fn apply(&self, v: Vec3) -> Vec3 {
        let m = &self.0;
        std::array::from_fn(|r| m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2])
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Rotation angle in `[0, π]`, from the trace.
    pub fn angle(&self) -> f64 {
        let tr = self.0[0][0] + self.0[1][1] + self.0[2][2];
        ((tr - 1.0) / 2.0).clamp(-1.0, 1.0).acos()
    }

    pub fn max_abs_diff(&self, other: &Rot3) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Deviation from `R Rᵀ = I`.
    pub fn orthogonality_defect(&self) -> f64 {
        (*self * self.transpose()).max_abs_diff(&Rot3::identity())
    }
}

impl Mul for Rot3 {
    type Output = Rot3;
    fn mul(self, rhs: Rot3) -> Rot3 {
        let (a, b) = (&self.0, &rhs.0);
        Rot3(std::array::from_fn(|r| {
            std::array::from_fn(|c| (0..3).map(|k| a[r][k] * b[k][c]).sum())
        }))
    }
}

/// Frame rotation by `angle` about `axis`:
/// `R = cos θ I + (1 − cos θ) n nᵀ − sin θ [n]×`.
pub fn so3_from_axis_angle(axis: Vec3, angle: f64) -> Result<Rot3> {
    let n = require_unit(axis)?;
    let (s, c) = angle.sin_cos();
    let k = 1.0 - c;
    Ok(Rot3([
        [c + k * n[0] * n[0], k * n[0] * n[1] + s * n[2], k * n[0] * n[2] - s * n[1]],
        [k * n[1] * n[0] - s * n[2], c + k * n[1] * n[1], k * n[1] * n[2] + s * n[0]],
        [k * n[2] * n[0] + s * n[1], k * n[2] * n[1] - s * n[0], c + k * n[2] * n[2]],
    ]))
}

/// `R_jk = ½ tr(σ_j U σ_k U†)`.
pub fn so3_from_su2(u: &Mat2c) -> Result<Rot3> {
    let unitarity = (*u * u.dagger()).max_abs_diff(&Mat2c::IDENTITY);
    let det = (u.det() - crate::algebra::Complex::new(1.0, 0.0)).norm();
    let defect = unitarity.max(det);
    if defect > DEFAULT_TOL || !defect.is_finite() {
        return Err(Error::NotSpecialUnitary(defect));
    }
    let s = &crate::algebra::SIGMA[1..];
    let ud = u.dagger();
    Ok(Rot3(std::array::from_fn(|j| {
        std::array::from_fn(|k| 0.5 * (s[j] * *u * s[k] * ud).trace().re)
    })))
}

/// `n·σ` for a unit vector.
pub fn spin_matrix(n: Vec3) -> Result<Mat2c> {
    Ok(sigma_dot(require_unit(n)?))
}

/// Unit-length right-handed spinor with eigenvalue +1 under `n·σ`, so its
/// flagpole points along `n`. The flag angle is fixed at zero.
pub fn eigenspinor(n: Vec3) -> Result<Spinor> {
    let n = require_unit(n)?;
    let theta = n[2].clamp(-1.0, 1.0).acos();
    let phi = if n[0] == 0.0 && n[1] == 0.0 {
        0.0
    } else {
        n[1].atan2(n[0])
    };
    Spinor::from_params(FlagParams::new(1.0, theta, phi, 0.0))
}

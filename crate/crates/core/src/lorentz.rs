//! SL(2,C) acting on Hermitian 2×2 matrices as the restricted Lorentz group,
//! and rank-2 spinors whose transformation law is fixed by their index tags.

use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    boost_exp, sigma_dot_complex, su2_exp, Complex, FourVector, Mat2c, Mat4r, Vec3, EPSILON,
    SIGMA,
};
use crate::{Error, Result, DEFAULT_TOL};

/// A unimodular 2×2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Mat2c", into = "Mat2c")]
pub struct Sl2c {
    m: Mat2c,
}

impl Sl2c {
    /// Validates `|det m − 1| ≤ 1e−10`.
    pub fn new(m: Mat2c) -> Result<Self> {
        let det = m.det();
        if (det - Complex::new(1.0, 0.0)).norm() > DEFAULT_TOL || !det.is_finite() {
            return Err(Error::NotUnimodular(det));
        }
        Ok(Sl2c { m })
    }

    pub fn identity() -> Self {
        Sl2c { m: Mat2c::IDENTITY }
    }

    /// Frame rotation about `axis` by `angle`.
    pub fn rotation(axis: Vec3, angle: f64) -> Result<Self> {
        Ok(Sl2c { m: su2_exp(axis, angle)? })
    }

    /// Boost along `direction` with the given rapidity.
    pub fn boost(direction: Vec3, rapidity: f64) -> Result<Self> {
        Ok(Sl2c { m: boost_exp(direction, rapidity)? })
    }

    pub fn matrix(&self) -> Mat2c {
        self.m
    }

    pub fn inverse(&self) -> Self {
        Sl2c { m: self.m.inverse() }
    }

    /// `(Λ†)⁻¹`, the law for left-handed spinors.
    pub fn dagger_inverse(&self) -> Mat2c {
        self.m.dagger().inverse()
    }

    pub fn neg(&self) -> Self {
        Sl2c { m: -self.m }
    }
}

impl TryFrom<Mat2c> for Sl2c {
    type Error = Error;
    fn try_from(m: Mat2c) -> Result<Self> {
        Sl2c::new(m)
    }
}

impl From<Sl2c> for Mat2c {
    fn from(l: Sl2c) -> Mat2c {
        l.m
    }
}

impl Mul for Sl2c {
    type Output = Sl2c;
    fn mul(self, rhs: Sl2c) -> Sl2c {
        Sl2c { m: self.m * rhs.m }
    }
}

/// Hermitian matrix `X = tI + xσ_x + yσ_y + zσ_z` standing for a 4-vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HermSpinorMatrix {
    pub x: Mat2c,
}

impl HermSpinorMatrix {
    pub fn new(x: Mat2c) -> Result<Self> {
        let defect = x.hermiticity_defect();
        if defect > DEFAULT_TOL {
            return Err(Error::NotHermitian(defect));
        }
        Ok(HermSpinorMatrix { x })
    }

    /// The same matrix tagged as `X^{αβ̄}`.
    pub fn to_rank2(&self) -> Rank2Spinor {
        Rank2Spinor::new(self.x, Variance::UpperUndotted, Variance::UpperDotted)
    }
}

pub fn herm_from_fourvec(v: FourVector) -> HermSpinorMatrix {
    let t = Complex::from(v.t);
    let x = Mat2c::IDENTITY * t + sigma_dot_complex([v.x.into(), v.y.into(), v.z.into()]);
    HermSpinorMatrix { x }
}

/// Inverse of [`herm_from_fourvec`]: `V^μ = ½ tr(σ^μ X)`.
pub fn fourvec_from_herm(x: &HermSpinorMatrix) -> Result<FourVector> {
    let defect = x.x.hermiticity_defect();
    if defect > DEFAULT_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let c = |mu: usize| 0.5 * (SIGMA[mu] * x.x).trace().re;
    Ok(FourVector::new(c(0), c(1), c(2), c(3)))
}

/// `ΛXΛ†`.
pub fn act(l: &Sl2c, x: &HermSpinorMatrix) -> HermSpinorMatrix {
    HermSpinorMatrix {
        x: l.m * x.x * l.m.dagger(),
    }
}

/// The 4×4 Lorentz matrix induced by `L`, found column by column from the
/// images of the basis 4-vectors.
pub fn induced_lorentz(l: &Sl2c) -> Mat4r {
    let mut out = [[0.0; 4]; 4];
    let m = l.m;
    let md = m.dagger();
    for (col, sigma) in SIGMA.iter().enumerate() {
        let image = m * *sigma * md;
        for (row, basis) in SIGMA.iter().enumerate() {
            out[row][col] = 0.5 * (*basis * image).trace().re;
        }
    }
    Mat4r(out)
}

/// `exp(iσ·θ/2 − σ·ρ/2)` in closed form.
///
/// With `w = (iθ − ρ)/2` the exponent is `σ·w`, and `(σ·w)² = (w·w) I`
/// (complex square, no conjugation), so `exp(σ·w) = cosh k I + sinh k / k σ·w`
/// with `k² = w·w`.
pub fn general_transform(theta: Vec3, rho: Vec3) -> Sl2c {
    let w: [Complex; 3] =
        std::array::from_fn(|i| Complex::new(-rho[i], theta[i]) * 0.5);
    let k2: Complex = w.iter().map(|c| c * c).sum();
    let k = k2.sqrt();
    let (cosh_k, sinhc) = if k.norm() < 1e-4 {
        // series in k²; sinh k / k = 1 + k²/6 + k⁴/120
        let cosh_k = 1.0 + k2 / 2.0 + k2 * k2 / 24.0 + k2 * k2 * k2 / 720.0;
        let sinhc = 1.0 + k2 / 6.0 + k2 * k2 / 120.0 + k2 * k2 * k2 / 5040.0;
        (cosh_k, sinhc)
    } else {
        (k.cosh(), k.sinh() / k)
    };
    let m = Mat2c::IDENTITY * cosh_k + sigma_dot_complex(w) * sinhc;
    Sl2c { m }
}

/// Index type of one slot of a rank-2 spinor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variance {
    UpperUndotted,
    LowerUndotted,
    UpperDotted,
    LowerDotted,
}

impl Variance {
    pub const ALL: [Variance; 4] = [
        Variance::UpperUndotted,
        Variance::LowerUndotted,
        Variance::UpperDotted,
        Variance::LowerDotted,
    ];

    pub fn is_dotted(self) -> bool {
        matches!(self, Variance::UpperDotted | Variance::LowerDotted)
    }

    pub fn is_upper(self) -> bool {
        matches!(self, Variance::UpperUndotted | Variance::UpperDotted)
    }

    /// Matrix acting on a rank-1 spinor carrying this index.
    pub fn law(self, l: &Sl2c) -> Mat2c {
        let m = l.m;
        match self {
            Variance::UpperUndotted => m,
            Variance::LowerUndotted => m.transpose().inverse(),
            Variance::UpperDotted => m.conj(),
            Variance::LowerDotted => m.dagger().inverse(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Slot {
    Index1,
    Index2,
}

/// A 2×2 array of components with a variance tag on each index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rank2Spinor {
    pub m: Mat2c,
    pub index1: Variance,
    pub index2: Variance,
}

impl Rank2Spinor {
    pub fn new(m: Mat2c, index1: Variance, index2: Variance) -> Self {
        Rank2Spinor { m, index1, index2 }
    }

    /// `M' = A M Bᵀ` where `A`, `B` are the laws of the two indices.
    pub fn transform(&self, l: &Sl2c) -> Rank2Spinor {
        let a = self.index1.law(l);
        let b = self.index2.law(l);
        Rank2Spinor {
            m: a * self.m * b.transpose(),
            ..*self
        }
    }

    /// Moves one index up or down. The dottedness of the slot may not change.
    pub fn raise_lower(&self, which: Slot, to: Variance) -> Result<Rank2Spinor> {
        let from = match which {
            Slot::Index1 => self.index1,
            Slot::Index2 => self.index2,
        };
        if from.is_dotted() != to.is_dotted() {
            return Err(Error::DottednessChange);
        }
        if from == to {
            return Ok(*self);
        }
        let lowering = from.is_upper();
        let m = match (which, lowering) {
            (Slot::Index1, true) => EPSILON * self.m,
            (Slot::Index1, false) => EPSILON.transpose() * self.m,
            (Slot::Index2, true) => self.m * EPSILON.transpose(),
            (Slot::Index2, false) => self.m * EPSILON,
        };
        Ok(match which {
            Slot::Index1 => Rank2Spinor { m, index1: to, ..*self },
            Slot::Index2 => Rank2Spinor { m, index2: to, ..*self },
        })
    }

    /// Lowers both indices.
    pub fn lowered(&self) -> Rank2Spinor {
        let down = |v: Variance| match v {
            Variance::UpperUndotted => Variance::LowerUndotted,
            Variance::UpperDotted => Variance::LowerDotted,
            other => other,
        };
        let out = self.raise_lower(Slot::Index1, down(self.index1)).unwrap();
        out.raise_lower(Slot::Index2, down(self.index2)).unwrap()
    }
}

fn pair_ok(a: Variance, b: Variance) -> bool {
    a.is_dotted() == b.is_dotted() && a.is_upper() != b.is_upper()
}

/// Full contraction `X^{αβ̄} Y_{αβ̄}` (or any legal variant), summing
/// index1 against index1 and index2 against index2.
pub fn contract(x: &Rank2Spinor, y: &Rank2Spinor) -> Result<Complex> {
    if !pair_ok(x.index1, y.index1) {
        return Err(Error::IllegalContraction(
            "first indices must share dottedness and be one up, one down",
        ));
    }
    if !pair_ok(x.index2, y.index2) {
        return Err(Error::IllegalContraction(
            "second indices must share dottedness and be one up, one down",
        ));
    }
    Ok(x.m.entrywise_dot(&y.m))
}

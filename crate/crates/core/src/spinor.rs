//! Rank-1 (Weyl) spinors, their flag parameters and null flagpoles.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::algebra::{Complex, FourVector, EPSILON, SIGMA};
use crate::lorentz::Sl2c;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chirality {
    #[default]
    Right,
    Left,
}

impl Chirality {
    pub fn flipped(self) -> Self {
        match self {
            Chirality::Right => Chirality::Left,
            Chirality::Left => Chirality::Right,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Chirality::Right => "right",
            Chirality::Left => "left",
        }
    }
}

/// A two-component spinor with a chirality tag. Right-handed spinors
/// transform with `Λ`, left-handed ones with `(Λ†)⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Spinor {
    pub a: Complex,
    pub b: Complex,
    pub chirality: Chirality,
}

/// Flagpole length `r`, direction `(θ, φ)`, flag angle `α` and the overall
/// sign that the other four cannot see.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlagParams {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
    pub alpha: f64,
    pub sign: i8,
}

impl FlagParams {
    pub fn new(r: f64, theta: f64, phi: f64, alpha: f64) -> Self {
        FlagParams {
            r,
            theta,
            phi,
            alpha,
            sign: 1,
        }
    }
}

/// Wraps an angle into `(−π, π]`.
pub fn wrap_angle(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

impl Spinor {
    pub const fn new(a: Complex, b: Complex, chirality: Chirality) -> Self {
        Spinor { a, b, chirality }
    }

    pub fn right(a: Complex, b: Complex) -> Self {
        Spinor::new(a, b, Chirality::Right)
    }

    pub fn left(a: Complex, b: Complex) -> Self {
        Spinor::new(a, b, Chirality::Left)
    }

    pub fn components(&self) -> [Complex; 2] {
        [self.a, self.b]
    }

    pub fn with_components(&self, c: [Complex; 2]) -> Self {
        Spinor::new(c[0], c[1], self.chirality)
    }

    pub fn with_chirality(&self, chirality: Chirality) -> Self {
        Spinor { chirality, ..*self }
    }

    /// `s†s = |a|² + |b|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.a.norm_sqr() + self.b.norm_sqr()
    }

    pub fn scale(&self, k: Complex) -> Self {
        self.with_components([self.a * k, self.b * k])
    }

    /// Largest component difference, ignoring chirality.
    pub fn max_abs_diff(&self, other: &Spinor) -> f64 {
        (self.a - other.a).norm().max((self.b - other.b).norm())
    }

    /// The raw components `s†σ^μ s`, for μ = 0..=3.
    ///
    /// For a right-handed spinor this is the contravariant flagpole. For a
    /// left-handed one it carries a lower index.
    pub fn sigma_bilinear(&self) -> FourVector {
        let s = self.components();
        let c = |mu: usize| {
            let v = SIGMA[mu].apply(s);
            (s[0].conj() * v[0] + s[1].conj() * v[1]).re
        };
        FourVector::new(c(0), c(1), c(2), c(3))
    }

    /// The null flagpole 4-vector, always contravariant and future-directed.
    ///
    /// Left-handed spinors have their spatial part negated relative to
    /// [`Spinor::sigma_bilinear`].
    pub fn flagpole(&self) -> FourVector {
        let raw = self.sigma_bilinear();
        match self.chirality {
            Chirality::Right => raw,
            Chirality::Left => FourVector::new(raw.t, -raw.x, -raw.y, -raw.z),
        }
    }

    /// Builds a right-handed spinor from flag parameters.
    pub fn from_params(p: FlagParams) -> Result<Spinor> {
        if p.r < 0.0 || !p.r.is_finite() {
            return Err(Error::NegativeLength(p.r));
        }
        if !(0.0..=PI).contains(&p.theta) {
            return Err(Error::PolarAngleOutOfRange(p.theta));
        }
        let root = p.r.sqrt() * if p.sign < 0 { -1.0 } else { 1.0 };
        let (s, c) = (p.theta / 2.0).sin_cos();
        let a = Complex::from_polar(root * c, (-p.alpha - p.phi) / 2.0);
        let b = Complex::from_polar(root * s, (-p.alpha + p.phi) / 2.0);
        Ok(Spinor::right(a, b))
    }

    /// Recovers `(r, θ, φ, α, sign)`. At the poles `φ` is set to zero and
    /// the remaining phase goes into `α`.
    pub fn to_params(&self) -> Result<FlagParams> {
        let r = self.norm_sqr();
        if r == 0.0 {
            return Err(Error::ZeroSpinor);
        }
        let (ma, mb) = (self.a.norm(), self.b.norm());
        let theta = 2.0 * mb.atan2(ma);
        let (phi, alpha) = if mb <= f64::EPSILON * ma {
            (0.0, wrap_angle(-2.0 * self.a.arg()))
        } else if ma <= f64::EPSILON * mb {
            (0.0, wrap_angle(-2.0 * self.b.arg()))
        } else {
            (
                wrap_angle(self.b.arg() - self.a.arg()),
                wrap_angle(-(self.a.arg() + self.b.arg())),
            )
        };
        let mut p = FlagParams {
            r,
            theta,
            phi,
            alpha,
            sign: 1,
        };
        let plus = Spinor::from_params(p)?;
        let flipped = plus.scale(Complex::new(-1.0, 0.0));
        if flipped.max_abs_diff(self) < plus.max_abs_diff(self) {
            p.sign = -1;
        }
        Ok(p)
    }

    /// `u₁w₂ − u₂w₁`, the Lorentz-invariant antisymmetric product.
    pub fn epsilon_inner(&self, w: &Spinor) -> Result<Complex> {
        if self.chirality != w.chirality {
            return Err(Error::MixedChirality);
        }
        Ok(self.a * w.b - self.b * w.a)
    }

    /// `ε s*` with the opposite chirality.
    pub fn dual(&self) -> Spinor {
        let c = EPSILON.apply([self.a.conj(), self.b.conj()]);
        Spinor::new(c[0], c[1], self.chirality.flipped())
    }

    /// Applies `Λ` (right) or `(Λ†)⁻¹` (left).
    pub fn transform(&self, l: &Sl2c) -> Spinor {
        let m = match self.chirality {
            Chirality::Right => l.matrix(),
            Chirality::Left => l.dagger_inverse(),
        };
        self.with_components(m.apply(self.components()))
    }

    /// Complex conjugate of both components: reflects the flagpole in the
    /// xz plane.
    pub fn conjugate_reflect(&self) -> Spinor {
        self.with_components([self.a.conj(), self.b.conj()])
    }
}

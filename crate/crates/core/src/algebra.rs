//! Small fixed-size complex matrices, Pauli constants, closed-form 2×2
//! exponentials and the Minkowski product.

use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result, DEFAULT_TOL};

pub type Complex = Complex64;

/// A real 3-vector.
pub type Vec3 = [f64; 3];

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);
const I: Complex = Complex::new(0.0, 1.0);

pub fn dot3(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross3(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm3(a: Vec3) -> f64 {
    dot3(a, a).sqrt()
}

pub fn scale3(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

/// Returns the vector unchanged if it has unit length within `1e-12`.
pub fn require_unit(a: Vec3) -> Result<Vec3> {
    let norm = norm3(a);
    if (norm - 1.0).abs() > 1e-12 || !norm.is_finite() {
        return Err(Error::NonUnitVector { norm });
    }
    Ok(a)
}

/// Scales a non-zero vector to unit length.
pub fn normalize3(a: Vec3) -> Result<Vec3> {
    let norm = norm3(a);
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::NonUnitVector { norm });
    }
    Ok(scale3(a, 1.0 / norm))
}

/// 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat2c(pub [[Complex; 2]; 2]);

impl Mat2c {
    pub const ZERO: Mat2c = Mat2c([[ZERO, ZERO], [ZERO, ZERO]]);
    pub const IDENTITY: Mat2c = Mat2c([[ONE, ZERO], [ZERO, ONE]]);

    pub const fn new(a: Complex, b: Complex, c: Complex, d: Complex) -> Self {
        Mat2c([[a, b], [c, d]])
    }

    pub fn from_real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2c::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn diag(a: Complex, d: Complex) -> Self {
        Mat2c::new(a, ZERO, ZERO, d)
    }

    pub fn det(&self) -> Complex {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn trace(&self) -> Complex {
        self.0[0][0] + self.0[1][1]
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Mat2c::new(m[0][0], m[1][0], m[0][1], m[1][1])
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn dagger(&self) -> Self {
        self.transpose().conj()
    }

    /// Inverse via the adjugate. For unit-determinant matrices this is exact
    /// up to the rounding of the determinant itself.
    pub fn inverse(&self) -> Self {
        let m = &self.0;
        let d = self.det();
        Mat2c::new(m[1][1] / d, -m[0][1] / d, -m[1][0] / d, m[0][0] / d)
    }

    pub fn map(&self, f: impl Fn(Complex) -> Complex) -> Self {
        let m = &self.0;
        Mat2c::new(f(m[0][0]), f(m[0][1]), f(m[1][0]), f(m[1][1]))
    }

    pub fn scale(&self, s: Complex) -> Self {
        self.map(|z| z * s)
    }

    pub fn apply(&self, v: [Complex; 2]) -> [Complex; 2] {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Mat2c) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.dagger())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (*self * self.dagger()).max_abs_diff(&Mat2c::IDENTITY) <= tol
    }

    /// Sum of entrywise products, `Σ_ij A_ij B_ij`.
    pub fn entrywise_dot(&self, other: &Mat2c) -> Complex {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| a * b)
            .sum()
    }
}

impl Index<(usize, usize)> for Mat2c {
    type Output = Complex;
    fn index(&self, (r, c): (usize, usize)) -> &Complex {
        &self.0[r][c]
    }
}

impl Add for Mat2c {
    type Output = Mat2c;
    fn add(self, rhs: Mat2c) -> Mat2c {
        let (a, b) = (&self.0, &rhs.0);
        Mat2c::new(
            a[0][0] + b[0][0],
            a[0][1] + b[0][1],
            a[1][0] + b[1][0],
            a[1][1] + b[1][1],
        )
    }
}

impl Sub for Mat2c {
    type Output = Mat2c;
    fn sub(self, rhs: Mat2c) -> Mat2c {
        self + (-rhs)
    }
}

impl Neg for Mat2c {
    type Output = Mat2c;
    fn neg(self) -> Mat2c {
        self.map(|z| -z)
    }
}

impl Mul for Mat2c {
    type Output = Mat2c;
    fn mul(self, rhs: Mat2c) -> Mat2c {
        let (a, b) = (&self.0, &rhs.0);
        Mat2c::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl Mul<Complex> for Mat2c {
    type Output = Mat2c;
    fn mul(self, s: Complex) -> Mat2c {
        self.scale(s)
    }
}

impl Mul<f64> for Mat2c {
    type Output = Mat2c;
    fn mul(self, s: f64) -> Mat2c {
        self.scale(s.into())
    }
}

/// σ⁰ = I.
pub const SIGMA_0: Mat2c = Mat2c::IDENTITY;
pub const SIGMA_X: Mat2c = Mat2c::new(ZERO, ONE, ONE, ZERO);
pub const SIGMA_Y: Mat2c = Mat2c::new(ZERO, Complex::new(0.0, -1.0), I, ZERO);
pub const SIGMA_Z: Mat2c = Mat2c::new(ONE, ZERO, ZERO, Complex::new(-1.0, 0.0));

/// The spinor Minkowski metric ε = [[0, 1], [−1, 0]].
pub const EPSILON: Mat2c = Mat2c::new(ZERO, ONE, Complex::new(-1.0, 0.0), ZERO);

/// `σ^μ` for μ = 0..=3, with σ⁰ the identity.
pub fn pauli(index: usize) -> Result<Mat2c> {
    match index {
        0 => Ok(SIGMA_0),
        1 => Ok(SIGMA_X),
        2 => Ok(SIGMA_Y),
        3 => Ok(SIGMA_Z),
        _ => Err(Error::IndexOutOfRange(index)),
    }
}

pub(crate) const SIGMA: [Mat2c; 4] = [SIGMA_0, SIGMA_X, SIGMA_Y, SIGMA_Z];

/// `v·σ` for a complex 3-vector.
pub fn sigma_dot_complex(v: [Complex; 3]) -> Mat2c {
    // [[v_z, v_x − i v_y], [v_x + i v_y, −v_z]]
    Mat2c::new(v[2], v[0] - I * v[1], v[0] + I * v[1], -v[2])
}

/// `v·σ` for a real 3-vector.
pub fn sigma_dot(v: Vec3) -> Mat2c {
    sigma_dot_complex([v[0].into(), v[1].into(), v[2].into()])
}

/// Spin rotation matrix `exp(i θ/2 n·σ) = cos(θ/2) I + i sin(θ/2) n·σ`.
pub fn su2_exp(axis: Vec3, angle: f64) -> Result<Mat2c> {
    let n = require_unit(axis)?;
    let (s, c) = (angle / 2.0).sin_cos();
    Ok(Mat2c::IDENTITY * c + sigma_dot(n) * Complex::new(0.0, s))
}

/// Spinor boost `exp(−ρ/2 n·σ) = cosh(ρ/2) I − sinh(ρ/2) n·σ`.
pub fn boost_exp(direction: Vec3, rapidity: f64) -> Result<Mat2c> {
    let n = require_unit(direction)?;
    let half = rapidity / 2.0;
    Ok(Mat2c::IDENTITY * half.cosh() - sigma_dot(n) * half.sinh())
}

/// `(σ·a)(σ·b) − (a·b) I − i σ·(a×b)`, which vanishes identically.
pub fn pauli_product_identity_residual(a: Vec3, b: Vec3) -> Mat2c {
    sigma_dot(a) * sigma_dot(b) - Mat2c::IDENTITY * dot3(a, b) - sigma_dot(cross3(a, b)) * I
}

/// 4×4 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat4c(pub [[Complex; 4]; 4]);

impl Mat4c {
    pub const ZERO: Mat4c = Mat4c([[ZERO; 4]; 4]);

    pub fn identity() -> Self {
        let mut m = Mat4c::ZERO;
        for k in 0..4 {
            m.0[k][k] = ONE;
        }
        m
    }

    /// `[[a, b], [c, d]]` in 2×2 blocks.
    pub fn from_blocks(a: Mat2c, b: Mat2c, c: Mat2c, d: Mat2c) -> Self {
        let mut m = Mat4c::ZERO;
        for r in 0..2 {
            for s in 0..2 {
                m.0[r][s] = a.0[r][s];
                m.0[r][s + 2] = b.0[r][s];
                m.0[r + 2][s] = c.0[r][s];
                m.0[r + 2][s + 2] = d.0[r][s];
            }
        }
        m
    }

    pub fn block_diag(a: Mat2c, d: Mat2c) -> Self {
        Mat4c::from_blocks(a, Mat2c::ZERO, Mat2c::ZERO, d)
    }

    pub fn map(&self, f: impl Fn(Complex) -> Complex) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z = f(*z));
        m
    }

    pub fn scale(&self, s: Complex) -> Self {
        self.map(|z| z * s)
    }

    pub fn transpose(&self) -> Self {
        let mut m = Mat4c::ZERO;
        for r in 0..4 {
            for c in 0..4 {
                m.0[r][c] = self.0[c][r];
            }
        }
        m
    }

    pub fn dagger(&self) -> Self {
        self.transpose().map(|z| z.conj())
    }

    pub fn apply(&self, v: [Complex; 4]) -> [Complex; 4] {
        let mut out = [ZERO; 4];
        for (r, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|c| self.0[r][c] * v[c]).sum();
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Mat4c) -> f64 {
        (*self - *other).max_abs()
    }

    /// `u† M v`.
    pub fn sandwich(&self, u: [Complex; 4], v: [Complex; 4]) -> Complex {
        let mv = self.apply(v);
        u.iter().zip(mv.iter()).map(|(a, b)| a.conj() * b).sum()
    }
}

impl Index<(usize, usize)> for Mat4c {
    type Output = Complex;
    fn index(&self, (r, c): (usize, usize)) -> &Complex {
        &self.0[r][c]
    }
}

impl Add for Mat4c {
    type Output = Mat4c;
    fn add(self, rhs: Mat4c) -> Mat4c {
        let mut m = self;
        for r in 0..4 {
            for c in 0..4 {
                m.0[r][c] += rhs.0[r][c];
            }
        }
        m
    }
}

impl Sub for Mat4c {
    type Output = Mat4c;
    fn sub(self, rhs: Mat4c) -> Mat4c {
        self + (-rhs)
    }
}

impl Neg for Mat4c {
    type Output = Mat4c;
    fn neg(self) -> Mat4c {
        self.map(|z| -z)
    }
}

impl Mul for Mat4c {
    type Output = Mat4c;
    fn mul(self, rhs: Mat4c) -> Mat4c {
        let mut m = Mat4c::ZERO;
        for r in 0..4 {
            for c in 0..4 {
                m.0[r][c] = (0..4).map(|k| self.0[r][k] * rhs.0[k][c]).sum();
            }
        }
        m
    }
}

impl Mul<Complex> for Mat4c {
    type Output = Mat4c;
    fn mul(self, s: Complex) -> Mat4c {
        self.scale(s)
    }
}

/// A 4-vector `(t, x, y, z)` in natural units.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FourVector {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl FourVector {
    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        FourVector { t, x, y, z }
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        FourVector::new(a[0], a[1], a[2], a[3])
    }

    pub fn from_parts(t: f64, spatial: Vec3) -> Self {
        FourVector::new(t, spatial[0], spatial[1], spatial[2])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.t, self.x, self.y, self.z]
    }

    pub fn spatial(self) -> Vec3 {
        [self.x, self.y, self.z]
    }

    /// Minkowski square `−t² + x² + y² + z²`.
    pub fn norm_sq(self) -> f64 {
        minkowski_dot(self, self)
    }

    /// Applies the metric `diag(−1, 1, 1, 1)`, converting between the
    /// contravariant and covariant components.
    pub fn with_metric(self) -> Self {
        FourVector::new(-self.t, self.x, self.y, self.z)
    }

    pub fn scale(self, s: f64) -> Self {
        FourVector::new(self.t * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn max_abs_diff(self, other: FourVector) -> f64 {
        (self - other)
            .to_array()
            .iter()
            .map(|c| c.abs())
            .fold(0.0, f64::max)
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, o: FourVector) -> FourVector {
        FourVector::new(self.t + o.t, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, o: FourVector) -> FourVector {
        FourVector::new(self.t - o.t, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for FourVector {
    type Output = FourVector;
    fn neg(self) -> FourVector {
        self.scale(-1.0)
    }
}

/// Minkowski inner product with signature `(−1, 1, 1, 1)`.
pub fn minkowski_dot(a: FourVector, b: FourVector) -> f64 {
    -a.t * b.t + a.x * b.x + a.y * b.y + a.z * b.z
}

/// The metric `η = diag(−1, 1, 1, 1)` as a lookup.
pub fn eta(mu: usize, nu: usize) -> f64 {
    match (mu, nu) {
        (0, 0) => -1.0,
        (m, n) if m == n => 1.0,
        _ => 0.0,
    }
}

/// A real 4×4 matrix acting on contravariant 4-vectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat4r(pub [[f64; 4]; 4]);

impl Mat4r {
    pub fn identity() -> Self {
        let mut m = [[0.0; 4]; 4];
        for (k, row) in m.iter_mut().enumerate() {
            row[k] = 1.0;
        }
        Mat4r(m)
    }

    pub fn metric() -> Self {
        let mut m = Mat4r::identity();
        m.0[0][0] = -1.0;
        m
    }

    pub fn apply(&self, v: FourVector) -> FourVector {
        let a = v.to_array();
        let mut out = [0.0; 4];
        for (r, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|c| self.0[r][c] * a[c]).sum();
        }
        FourVector::from_array(out)
    }

    pub fn transpose(&self) -> Self {
        let mut m = [[0.0; 4]; 4];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, x) in row.iter_mut().enumerate() {
                *x = self.0[c][r];
            }
        }
        Mat4r(m)
    }

    pub fn max_abs_diff(&self, other: &Mat4r) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Deviation from `Λᵀ η Λ = η`.
    pub fn lorentz_defect(&self) -> f64 {
        (self.transpose() * Mat4r::metric() * *self).max_abs_diff(&Mat4r::metric())
    }
}

impl Mul for Mat4r {
    type Output = Mat4r;
    fn mul(self, rhs: Mat4r) -> Mat4r {
        let mut m = [[0.0; 4]; 4];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, x) in row.iter_mut().enumerate() {
                *x = (0..4).map(|k| self.0[r][k] * rhs.0[k][c]).sum();
            }
        }
        Mat4r(m)
    }
}

/// `true` if `|det − 1| ≤ DEFAULT_TOL`.
pub fn has_unit_det(m: &Mat2c) -> bool {
    (m.det() - ONE).norm() <= DEFAULT_TOL
}

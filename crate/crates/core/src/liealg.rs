//! Generator algebra: rotation and boost generators, their commutators, the
//! A/B split, the Clifford algebra, and the `S^{μν}` representation acting on
//! Dirac spinors.

use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::algebra::{eta, Complex, Mat2c, Mat4c, Vec3};
use crate::dirac::{gammas, Basis, GammaSet};
use crate::{Error, Result};

const ZERO: Complex = Complex::new(0.0, 0.0);
const I: Complex = Complex::new(0.0, 1.0);

/// Dense square complex matrix of runtime size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            data: vec![ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n);
        for k in 0..n {
            m.data[k * n + k] = Complex::new(1.0, 0.0);
        }
        m
    }

    /// Builds from rows; panics if they are not square.
    pub fn from_rows(rows: &[Vec<Complex>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "rows must be square");
        CMatrix {
            n,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> Complex {
        self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex) {
        self.data[r * self.n + c] = v;
    }

    pub fn scale(&self, s: Complex) -> Self {
        CMatrix {
            n: self.n,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise difference; infinite if the sizes differ.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        (self - other).max_abs()
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|r| (0..self.n).map(|c| self.get(r, c).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn to_mat4(&self) -> Option<Mat4c> {
        (self.n == 4).then(|| Mat4c(std::array::from_fn(|r| std::array::from_fn(|c| self.get(r, c)))))
    }

    /// Matrix exponential by scaling and squaring with a Taylor series
    /// stopped once a term falls below `1e−16` relative to the sum.
    pub fn expm(&self) -> CMatrix {
        let norm = self.norm_inf();
        let squarings = if norm > 0.5 {
            (norm / 0.5).log2().ceil() as i32
        } else {
            0
        };
        let a = self.scale(Complex::from(0.5f64.powi(squarings)));
        let mut sum = CMatrix::identity(self.n);
        let mut term = CMatrix::identity(self.n);
        for k in 1..100 {
            term = (&term * &a).scale(Complex::from(1.0 / k as f64));
            sum = &sum + &term;
            if term.max_abs() <= 1e-16 * sum.max_abs() {
                break;
            }
        }
        for _ in 0..squarings {
            sum = &sum * &sum;
        }
        sum
    }
}

impl From<Mat2c> for CMatrix {
    fn from(m: Mat2c) -> Self {
        CMatrix {
            n: 2,
            data: m.0.iter().flatten().copied().collect(),
        }
    }
}

impl From<Mat4c> for CMatrix {
    fn from(m: Mat4c) -> Self {
        CMatrix {
            n: 4,
            data: m.0.iter().flatten().copied().collect(),
        }
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        CMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        CMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a == ZERO {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * rhs.data[k * n + c];
                }
            }
        }
        out
    }
}

/// `MN − NM`.
pub fn commutator(m: &CMatrix, n: &CMatrix) -> Result<CMatrix> {
    if m.n != n.n {
        return Err(Error::DimensionMismatch(m.n, n.n));
    }
    Ok(&(m * n) - &(n * m))
}

/// `MN + NM`.
pub fn anticommutator(m: &CMatrix, n: &CMatrix) -> Result<CMatrix> {
    if m.n != n.n {
        return Err(Error::DimensionMismatch(m.n, n.n));
    }
    Ok(&(m * n) + &(n * m))
}

fn mat_from_ints(rows: [[i8; 4]; 4], unit: Complex) -> CMatrix {
    CMatrix::from_rows(
        &rows
            .iter()
            .map(|r| r.iter().map(|&v| unit * f64::from(v)).collect())
            .collect::<Vec<_>>(),
    )
}

/// The 3×3 rotation generators `J_x, J_y, J_z` with `(J_k)_{ij} = −i ε_{ijk}`.
pub fn so3_generators() -> [CMatrix; 3] {
    std::array::from_fn(|k| {
        let mut m = CMatrix::zeros(3);
        for i in 0..3 {
            for j in 0..3 {
                let e = levi_civita(i, j, k);
                if e != 0 {
                    m.set(i, j, -I * f64::from(e));
                }
            }
        }
        m
    })
}

fn levi_civita(i: usize, j: usize, k: usize) -> i8 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

/// `exp(iJ·θ)` with the 3×3 generators.
pub fn so3_exp(theta: Vec3) -> CMatrix {
    let j = so3_generators();
    let mut gen = CMatrix::zeros(3);
    for (k, jk) in j.iter().enumerate() {
        gen = &gen + &jk.scale(I * theta[k]);
    }
    gen.expm()
}

/// Rotation and boost generators of the restricted Lorentz group acting on
/// `(t, x, y, z)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSet {
    pub j: [CMatrix; 3],
    pub k: [CMatrix; 3],
}

impl GeneratorSet {
    pub fn lorentz() -> Self {
        let jx = [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]];
        let jy = [[0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0], [0, -1, 0, 0]];
        let jz = [[0, 0, 0, 0], [0, 0, -1, 0], [0, 1, 0, 0], [0, 0, 0, 0]];
        let kx = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]];
        let ky = [[0, 0, 1, 0], [0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0]];
        let kz = [[0, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0]];
        GeneratorSet {
            j: [jx, jy, jz].map(|m| mat_from_ints(m, I)),
            k: [kx, ky, kz].map(|m| mat_from_ints(m, I)),
        }
    }
}

/// `A = (J + iK)/2`, `B = (J − iK)/2`.
pub fn ab_split(g: &GeneratorSet) -> ([CMatrix; 3], [CMatrix; 3]) {
    let half = Complex::new(0.5, 0.0);
    let a = std::array::from_fn(|i| (&g.j[i] + &g.k[i].scale(I)).scale(half));
    let b = std::array::from_fn(|i| (&g.j[i] - &g.k[i].scale(I)).scale(half));
    (a, b)
}

/// Largest entry of `{γ^μ, γ^ν} + 2η^{μν}I` over all pairs.
pub fn clifford_residual(g: &GammaSet) -> f64 {
    g.clifford_defect()
}

/// `S^{μν} = ¼[γ^μ, γ^ν]`.
pub fn smunu(mu: usize, nu: usize, g: &GammaSet) -> Mat4c {
    let (a, b) = (g.gamma[mu], g.gamma[nu]);
    (a * b - b * a).scale(Complex::from(0.25))
}

fn check_antisymmetric(theta: &[[f64; 4]; 4]) -> Result<()> {
    for mu in 0..4 {
        for nu in 0..4 {
            let s = theta[mu][nu] + theta[nu][mu];
            if s.abs() > 1e-12 * (1.0 + theta[mu][nu].abs()) || !s.is_finite() {
                return Err(Error::NotAntisymmetric);
            }
        }
    }
    Ok(())
}

/// `exp(½ θ_{μν} S^{μν})` with the chiral γ matrices.
pub fn dirac_lorentz(theta: &[[f64; 4]; 4]) -> Result<Mat4c> {
    dirac_lorentz_with(theta, &gammas(Basis::Chiral))
}

/// `exp(½ θ_{μν} S^{μν})` for a given γ set.
pub fn dirac_lorentz_with(theta: &[[f64; 4]; 4], g: &GammaSet) -> Result<Mat4c> {
    check_antisymmetric(theta)?;
    let mut gen = Mat4c::ZERO;
    for (mu, row) in theta.iter().enumerate() {
        for (nu, &t) in row.iter().enumerate() {
            if t != 0.0 {
                gen = gen + smunu(mu, nu, g).scale(Complex::from(0.5 * t));
            }
        }
    }
    Ok(CMatrix::from(gen).expm().to_mat4().expect("4×4"))
}

/// `(L^{ab})^c_d = η^{bc}δ^a_d − η^{ac}δ^b_d`.
pub fn lmunu(a: usize, b: usize) -> Mat4c {
    let mut m = Mat4c::ZERO;
    for c in 0..4 {
        for d in 0..4 {
            let da = if a == d { 1.0 } else { 0.0 };
            let db = if b == d { 1.0 } else { 0.0 };
            m.0[c][d] = Complex::from(eta(b, c) * da - eta(a, c) * db);
        }
    }
    m
}

/// Largest entry of
/// `[X^{μν}, X^{ρσ}] − s(η^{μρ}X^{νσ} − η^{νρ}X^{μσ} + η^{νσ}X^{μρ} − η^{μσ}X^{νρ})`
/// over all 256 index choices. `s = 1` is the Lorentz Lie algebra.
pub fn lorentz_bracket_defect(x: impl Fn(usize, usize) -> Mat4c, s: f64) -> f64 {
    let table: Vec<Vec<Mat4c>> = (0..4).map(|m| (0..4).map(|n| x(m, n)).collect()).collect();
    let mut worst: f64 = 0.0;
    for mu in 0..4 {
        for nu in 0..4 {
            for rho in 0..4 {
                for sg in 0..4 {
                    let (p, q) = (table[mu][nu], table[rho][sg]);
                    let lhs = p * q - q * p;
                    let rhs = table[nu][sg].scale(eta(mu, rho).into())
                        - table[mu][sg].scale(eta(nu, rho).into())
                        + table[mu][rho].scale(eta(nu, sg).into())
                        - table[nu][rho].scale(eta(mu, sg).into());
                    worst = worst.max(lhs.max_abs_diff(&rhs.scale(s.into())));
                }
            }
        }
    }
    worst
}

/// Largest entry of `S^{ab} − ½(γ^aγ^b + η^{ab})` for `a ≠ b` and of `S^{aa}`.
pub fn smunu_product_defect(g: &GammaSet) -> f64 {
    let mut worst: f64 = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            let rhs = (g.gamma[a] * g.gamma[b] + Mat4c::identity().scale(eta(a, b).into()))
                .scale(Complex::from(0.5));
            worst = worst.max(smunu(a, b, g).max_abs_diff(&rhs));
        }
    }
    worst
}

/// Largest entry of `[S^{ab}, γ^c] − (γ^bη^{ca} − γ^aη^{bc})`.
pub fn smunu_gamma_defect(g: &GammaSet) -> f64 {
    let mut worst: f64 = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            let s = smunu(a, b, g);
            for c in 0..4 {
                let lhs = s * g.gamma[c] - g.gamma[c] * s;
                let rhs = g.gamma[b].scale(eta(c, a).into()) - g.gamma[a].scale(eta(b, c).into());
                worst = worst.max(lhs.max_abs_diff(&rhs));
            }
        }
    }
    worst
}

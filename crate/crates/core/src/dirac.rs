//! Dirac bispinors `Ψ = (φ_R, χ_L)`: γ matrices in the chiral and standard
//! bases, boosts, the 4-velocity and 4-spin, the classical Dirac equation
//! and the bilinear covariants.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    boost_exp, minkowski_dot, norm3, require_unit, scale3, sigma_dot, Complex, FourVector, Mat2c,
    Mat4c, Vec3, SIGMA,
};
use crate::lorentz::Sl2c;
use crate::rotor::eigenspinor;
use crate::spinor::{Chirality, Spinor};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    #[default]
    Chiral,
    Standard,
}

impl Basis {
    pub fn other(self) -> Self {
        match self {
            Basis::Chiral => Basis::Standard,
            Basis::Standard => Basis::Chiral,
        }
    }
}

/// Four complex components tagged with the basis they are written in. In
/// the chiral basis the first pair is `φ_R` and the second `χ_L`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiracSpinor {
    pub components: [Complex; 4],
    pub basis: Basis,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaSet {
    pub basis: Basis,
    pub gamma: [Mat4c; 4],
    pub gamma5: Mat4c,
}

impl GammaSet {
    /// `{γ^μ, γ^ν} + 2η^{μν} I`, largest entry over all pairs.
    pub fn clifford_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for mu in 0..4 {
            for nu in 0..4 {
                let anti = self.gamma[mu] * self.gamma[nu] + self.gamma[nu] * self.gamma[mu];
                let eta = crate::algebra::eta(mu, nu);
                let target = Mat4c::identity().scale(Complex::from(-2.0 * eta));
                worst = worst.max(anti.max_abs_diff(&target));
            }
        }
        worst
    }
}

/// `(1/√2)[[I, I], [I, −I]]`, its own inverse.
pub fn basis_change_matrix() -> Mat4c {
    let i = Mat2c::IDENTITY;
    Mat4c::from_blocks(i, i, i, -i).scale(Complex::from(FRAC_1_SQRT_2))
}

fn chiral_gammas() -> GammaSet {
    let z = Mat2c::ZERO;
    let i = Mat2c::IDENTITY;
    let g0 = Mat4c::from_blocks(z, i, i, z);
    let gi = |k: usize| Mat4c::from_blocks(z, -SIGMA[k], SIGMA[k], z);
    GammaSet {
        basis: Basis::Chiral,
        gamma: [g0, gi(1), gi(2), gi(3)],
        gamma5: Mat4c::block_diag(i, -i),
    }
}

/// Entries are written out rather than conjugated by the basis change so
/// that they stay exact.
fn standard_gammas() -> GammaSet {
    let z = Mat2c::ZERO;
    let i = Mat2c::IDENTITY;
    let gi = |k: usize| Mat4c::from_blocks(z, SIGMA[k], -SIGMA[k], z);
    GammaSet {
        basis: Basis::Standard,
        gamma: [Mat4c::block_diag(i, -i), gi(1), gi(2), gi(3)],
        gamma5: Mat4c::from_blocks(z, i, i, z),
    }
}

pub fn gammas(basis: Basis) -> GammaSet {
    match basis {
        Basis::Chiral => chiral_gammas(),
        Basis::Standard => standard_gammas(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bilinears {
    /// `Ψ†γ⁰Ψ`
    pub scalar: f64,
    /// `Ψ†γ⁰γ⁵Ψ`, purely imaginary.
    pub pseudoscalar: Complex,
    /// `Ψ†γ⁰γ^μΨ`
    pub vector: FourVector,
    /// `Ψ†γ⁰γ^μγ⁵Ψ`
    pub axial: FourVector,
    /// `Ψ†γ⁰(γ^μγ^ν − γ^νγ^μ)Ψ`
    pub tensor: Mat4c,
}

impl DiracSpinor {
    pub fn new(components: [Complex; 4], basis: Basis) -> Self {
        DiracSpinor { components, basis }
    }

    /// Assembles a chiral-basis bispinor from its two Weyl parts.
    pub fn from_weyl(phi_r: &Spinor, chi_l: &Spinor) -> Result<Self> {
        if phi_r.chirality != Chirality::Right {
            return Err(Error::WrongChirality { expected: "right" });
        }
        if chi_l.chirality != Chirality::Left {
            return Err(Error::WrongChirality { expected: "left" });
        }
        Ok(DiracSpinor::new(
            [phi_r.a, phi_r.b, chi_l.a, chi_l.b],
            Basis::Chiral,
        ))
    }

    pub fn from_real(c: [f64; 4]) -> Self {
        DiracSpinor::new(c.map(Complex::from), Basis::Chiral)
    }

    pub fn to_basis(&self, basis: Basis) -> DiracSpinor {
        if self.basis == basis {
            *self
        } else {
            change_basis(self)
        }
    }

    pub fn to_chiral(&self) -> DiracSpinor {
        self.to_basis(Basis::Chiral)
    }

    pub fn phi_r(&self) -> Spinor {
        let c = self.to_chiral().components;
        Spinor::right(c[0], c[1])
    }

    pub fn chi_l(&self) -> Spinor {
        let c = self.to_chiral().components;
        Spinor::left(c[2], c[3])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.components.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn max_abs_diff(&self, other: &DiracSpinor) -> f64 {
        let o = other.to_basis(self.basis);
        self.components
            .iter()
            .zip(o.components.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `Ψ†γ⁰MΨ` using the γ set of this spinor's basis.
    fn adjoint_sandwich(&self, m: &Mat4c, g: &GammaSet) -> Complex {
        (g.gamma[0] * *m).sandwich(self.components, self.components)
    }

    /// `(Λφ_R, (Λ†)⁻¹χ_L)`; the result is in the chiral basis.
    pub fn transform(&self, l: &Sl2c) -> DiracSpinor {
        let phi = self.phi_r().transform(l);
        let chi = self.chi_l().transform(l);
        DiracSpinor::from_weyl(&phi, &chi).expect("chirality preserved")
    }

    /// The Dirac-representation matrix of `l`, `blockdiag(Λ, (Λ†)⁻¹)` in the
    /// chiral basis.
    pub fn lorentz_matrix(l: &Sl2c) -> Mat4c {
        Mat4c::block_diag(l.matrix(), l.dagger_inverse())
    }
}

/// Rest-frame bispinor with spin along `spin_dir`; `branch` selects
/// `χ_L = +φ_R` or `χ_L = −φ_R`.
pub fn from_rest(spin_dir: Vec3, branch: i8) -> Result<DiracSpinor> {
    let n = require_unit(spin_dir)?;
    let e = eigenspinor(n)?;
    let k = Complex::from(FRAC_1_SQRT_2);
    let phi = e.scale(k);
    let sign = if branch < 0 { -1.0 } else { 1.0 };
    let chi = phi.scale(Complex::from(sign)).with_chirality(Chirality::Left);
    DiracSpinor::from_weyl(&phi, &chi)
}

/// Boosts to the frame where the particle has momentum `p`:
/// `φ_R ← (E + m + σ·p)φ_R / √(2m(E+m))`, `χ_L ← (E + m − σ·p)χ_L / √(2m(E+m))`.
/// The result is returned in the input's basis.
pub fn boost(psi: &DiracSpinor, p: Vec3, m: f64) -> Result<DiracSpinor> {
    if m <= 0.0 || !m.is_finite() {
        return Err(Error::NonPositiveMass(m));
    }
    let e = (norm3(p).powi(2) + m * m).sqrt();
    let k = 1.0 / (2.0 * m * (e + m)).sqrt();
    let sp = sigma_dot(p);
    let em = Mat2c::IDENTITY * (e + m);
    let up = (em + sp) * k;
    let down = (em - sp) * k;
    let phi = psi.phi_r();
    let chi = psi.chi_l();
    let out = DiracSpinor::from_weyl(
        &phi.with_components(up.apply(phi.components())),
        &chi.with_components(down.apply(chi.components())),
    )?;
    Ok(out.to_basis(psi.basis))
}

/// `U^μ = Ψ†γ⁰γ^μΨ`.
pub fn four_velocity(psi: &DiracSpinor) -> FourVector {
    bilinears(psi).vector
}

/// `W^μ = (mS/2) Ψ†Σ^μΨ` with `Σ^μ = γ⁰γ^μγ⁵`.
pub fn four_spin(psi: &DiracSpinor, m: f64, s: f64) -> FourVector {
    bilinears(psi).axial.scale(m * s / 2.0)
}

/// `(−γ^λP_λ − m)Ψ` for `P = (E, p)`. A negative `m` gives the mass term of
/// the opposite rest-frame branch.
pub fn dirac_residual(psi: &DiracSpinor, e: f64, p: Vec3, m: f64) -> Result<[Complex; 4]> {
    let defect = e * e - norm3(p).powi(2) - m * m;
    if defect.abs() >= 1e-8 * e * e || !defect.is_finite() {
        return Err(Error::OffShell { defect });
    }
    let g = gammas(psi.basis);
    // −γ^λP_λ = Eγ⁰ − p·γ
    let mut op = g.gamma[0].scale(Complex::from(e)) - Mat4c::identity().scale(Complex::from(m));
    for (i, pi) in p.iter().enumerate() {
        op = op - g.gamma[i + 1].scale(Complex::from(*pi));
    }
    Ok(op.apply(psi.components))
}

/// Swaps `φ_R` and `χ_L`.
pub fn parity(psi: &DiracSpinor) -> DiracSpinor {
    let c = psi.to_chiral().components;
    DiracSpinor::new([c[2], c[3], c[0], c[1]], Basis::Chiral).to_basis(psi.basis)
}

pub fn bilinears(psi: &DiracSpinor) -> Bilinears {
    let g = gammas(psi.basis);
    let id = Mat4c::identity();
    let scalar = psi.adjoint_sandwich(&id, &g).re;
    let pseudoscalar = psi.adjoint_sandwich(&g.gamma5, &g);
    let vec_of = |f: &dyn Fn(usize) -> Mat4c| {
        FourVector::from_array(std::array::from_fn(|mu| {
            psi.adjoint_sandwich(&f(mu), &g).re
        }))
    };
    let vector = vec_of(&|mu| g.gamma[mu]);
    let axial = vec_of(&|mu| g.gamma[mu] * g.gamma5);
    let mut tensor = Mat4c::ZERO;
    for mu in 0..4 {
        for nu in 0..4 {
            let comm = g.gamma[mu] * g.gamma[nu] - g.gamma[nu] * g.gamma[mu];
            tensor.0[mu][nu] = psi.adjoint_sandwich(&comm, &g);
        }
    }
    Bilinears {
        scalar,
        pseudoscalar,
        vector,
        axial,
        tensor,
    }
}

/// Applies `(1/√2)[[I, I], [I, −I]]` and toggles the basis tag.
pub fn change_basis(psi: &DiracSpinor) -> DiracSpinor {
    DiracSpinor::new(
        basis_change_matrix().apply(psi.components),
        psi.basis.other(),
    )
}

/// Transforms `Ψ` to its rest frame. Returns the rest-frame spinor (chiral
/// basis) and the transformation used.
pub fn to_rest_frame(psi: &DiracSpinor) -> Result<(DiracSpinor, Sl2c)> {
    let u = four_velocity(psi);
    let sq = minkowski_dot(u, u);
    if sq >= 0.0 || u.t <= 0.0 {
        return Err(Error::NotTimelike(sq));
    }
    let mass = (-sq).sqrt();
    let speed = norm3(u.spatial());
    if speed == 0.0 {
        return Ok((psi.to_chiral(), Sl2c::identity()));
    }
    let dir = scale3(u.spatial(), 1.0 / speed);
    let rho = (u.t / mass).max(1.0).acosh();
    let l = Sl2c::new(boost_exp(dir, rho)?)?;
    Ok((psi.transform(&l), l))
}

/// Unit spin direction in the rest frame, from the flagpole of `φ_R` there.
pub fn rest_frame_spin_direction(psi: &DiracSpinor) -> Result<Vec3> {
    let (rest, _) = to_rest_frame(psi)?;
    let v = rest.phi_r().flagpole().spatial();
    let n = norm3(v);
    if n == 0.0 {
        return Err(Error::ZeroSpinor);
    }
    Ok(scale3(v, 1.0 / n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{eta, SIGMA_X, SIGMA_Y, SIGMA_Z};
    use crate::lorentz::induced_lorentz;
    use crate::sample;
    use crate::weyl::helicity;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn norm4(v: [Complex; 4]) -> f64 {
        v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    fn table() -> Vec<(DiracSpinor, FourVector, FourVector)> {
        let h = FRAC_1_SQRT_2;
        let fv = FourVector::new;
        vec![
            (DiracSpinor::from_real([h, 0.0, h, 0.0]), fv(1.0, 0.0, 0.0, 0.0), fv(0.0, 0.0, 0.0, 1.0)),
            (DiracSpinor::from_real([0.0, h, 0.0, h]), fv(1.0, 0.0, 0.0, 0.0), fv(0.0, 0.0, 0.0, -1.0)),
            (DiracSpinor::from_real([0.5; 4]), fv(1.0, 0.0, 0.0, 0.0), fv(0.0, 1.0, 0.0, 0.0)),
            (DiracSpinor::from_real([0.5, -0.5, 0.5, -0.5]), fv(1.0, 0.0, 0.0, 0.0), fv(0.0, -1.0, 0.0, 0.0)),
            (DiracSpinor::from_real([1.0, 0.0, 0.0, 0.0]), fv(1.0, 0.0, 0.0, 1.0), fv(1.0, 0.0, 0.0, 1.0)),
            (DiracSpinor::from_real([0.0, 1.0, 0.0, 0.0]), fv(1.0, 0.0, 0.0, -1.0), fv(1.0, 0.0, 0.0, -1.0)),
            (DiracSpinor::from_real([0.0, 0.0, 1.0, 0.0]), fv(1.0, 0.0, 0.0, -1.0), fv(-1.0, 0.0, 0.0, 1.0)),
            (DiracSpinor::from_real([0.0, 0.0, 0.0, 1.0]), fv(1.0, 0.0, 0.0, 1.0), fv(-1.0, 0.0, 0.0, -1.0)),
        ]
    }

    #[test]
    fn gamma_matrices_explicit() {
        let z = Mat2c::ZERO;
        let i = Mat2c::IDENTITY;
        let g = gammas(Basis::Chiral);
        assert_eq!(g.gamma[0], Mat4c::from_blocks(z, i, i, z));
        let s = gammas(Basis::Standard);
        assert!(s.gamma[0].max_abs_diff(&Mat4c::block_diag(i, -i)) < 1e-15);
        for (k, sig) in [SIGMA_X, SIGMA_Y, SIGMA_Z].iter().enumerate() {
            let expected = Mat4c::from_blocks(z, *sig, -*sig, z);
            assert!(s.gamma[k + 1].max_abs_diff(&expected) < 1e-15);
        }
        assert!(g.clifford_defect() == 0.0);
        assert!(s.clifford_defect() == 0.0);
        // the standard set is the chiral set conjugated by the basis change
        let u = basis_change_matrix();
        for mu in 0..4 {
            assert!((u * g.gamma[mu] * u).max_abs_diff(&s.gamma[mu]) < 1e-15);
        }
        assert!((u * g.gamma5 * u).max_abs_diff(&s.gamma5) < 1e-15);
        assert_eq!(g.gamma5 * g.gamma5, Mat4c::identity());
    }

    #[test]
    fn squares_of_gammas() {
        for basis in [Basis::Chiral, Basis::Standard] {
            let g = gammas(basis);
            for mu in 0..4 {
                let sq = g.gamma[mu] * g.gamma[mu];
                let target = Mat4c::identity().scale(Complex::from(-eta(mu, mu)));
                assert!(sq.max_abs_diff(&target) < 1e-15);
            }
        }
    }

    #[test]
    fn from_rest_examples() {
        let h = FRAC_1_SQRT_2;
        let cases = [
            ([0.0, 0.0, 1.0], DiracSpinor::from_real([h, 0.0, h, 0.0])),
            ([0.0, 0.0, -1.0], DiracSpinor::from_real([0.0, h, 0.0, h])),
            ([1.0, 0.0, 0.0], DiracSpinor::from_real([0.5; 4])),
        ];
        for (n, expected) in cases {
            let psi = from_rest(n, 1).unwrap();
            assert!(psi.max_abs_diff(&expected) < 1e-15, "{n:?}");
        }
        let anti = from_rest([0.0, 0.0, 1.0], -1).unwrap();
        assert!(anti.max_abs_diff(&DiracSpinor::from_real([h, 0.0, -h, 0.0])) < 1e-15);
    }

    #[test]
    fn table_rows() {
        for (psi, u, w2) in table() {
            assert!(four_velocity(&psi).max_abs_diff(u) < 1e-15, "{psi:?}");
            let w = four_spin(&psi, 1.0, 1.0).scale(2.0);
            assert!(w.max_abs_diff(w2) < 1e-15, "{psi:?}");
            // the same with mass and spin scale factored back out
            let w = four_spin(&psi, 3.0, 0.5).scale(2.0 / 1.5);
            assert!(w.max_abs_diff(w2) < 1e-15);
        }
    }

    #[test]
    fn velocity_and_spin_from_weyl_flagpoles() {
        // U = A + B and Ψ†ΣΨ = A − B with A, B the flagpoles of φ_R, χ_L.
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..200 {
            let phi = sample::spinor(&mut rng, Chirality::Right);
            let chi = sample::spinor(&mut rng, Chirality::Left);
            let psi = DiracSpinor::from_weyl(&phi, &chi).unwrap();
            let (a, b) = (phi.flagpole(), chi.flagpole());
            assert!(four_velocity(&psi).max_abs_diff(a + b) < 1e-13);
            assert!(bilinears(&psi).axial.max_abs_diff(a - b) < 1e-13);
        }
    }

    #[test]
    fn boost_example_components() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..50 {
            let p = sample::vec3(&mut rng, 3.0);
            let m = rng.random_range(0.1..2.0);
            let e = (norm3(p).powi(2) + m * m).sqrt();
            let psi = boost(&from_rest([0.0, 0.0, 1.0], 1).unwrap(), p, m).unwrap();
            let k = 1.0 / (4.0 * m * (e + m)).sqrt();
            let expected = DiracSpinor::new(
                [
                    c(e + m + p[2], 0.0) * k,
                    c(p[0], p[1]) * k,
                    c(e + m - p[2], 0.0) * k,
                    c(-p[0], -p[1]) * k,
                ],
                Basis::Chiral,
            );
            assert!(psi.max_abs_diff(&expected) < 1e-14);
            let u = four_velocity(&psi);
            assert!(u.max_abs_diff(FourVector::from_parts(e, p).scale(1.0 / m)) < 1e-12);
        }
    }

    #[test]
    fn boost_edge_cases() {
        let psi = from_rest([0.6, 0.0, 0.8], 1).unwrap();
        assert!(boost(&psi, [0.0; 3], 1.3).unwrap().max_abs_diff(&psi) < 1e-15);
        assert_eq!(boost(&psi, [0.0; 3], 0.0), Err(Error::NonPositiveMass(0.0)));
        assert_eq!(boost(&psi, [0.0; 3], -1.0), Err(Error::NonPositiveMass(-1.0)));

        // χ_L/φ_R ratio for spin up boosted along +z goes to zero
        let mut last = f64::INFINITY;
        for pz in [1.0, 10.0, 100.0, 1000.0] {
            let b = boost(&psi_z(), [0.0, 0.0, pz], 1.0).unwrap();
            let ratio = b.chi_l().norm_sqr().sqrt() / b.phi_r().norm_sqr().sqrt();
            assert!(ratio < last);
            last = ratio;
        }
        assert!(last < 1e-3);
    }

    fn psi_z() -> DiracSpinor {
        from_rest([0.0, 0.0, 1.0], 1).unwrap()
    }

    #[test]
    fn boost_x_velocity() {
        let (p, m): (f64, f64) = (0.75, 1.0);
        let e = (p * p + m * m).sqrt();
        let psi = boost(&psi_z(), [p, 0.0, 0.0], m).unwrap();
        // oracle: induced 4×4 of the equivalent SL(2,C) boost on (1,0,0,0)
        let rho = (p / m).asinh();
        let lam = induced_lorentz(&Sl2c::boost([-1.0, 0.0, 0.0], rho).unwrap());
        let expected = lam.apply(FourVector::new(1.0, 0.0, 0.0, 0.0));
        assert!(four_velocity(&psi).max_abs_diff(expected) < 1e-14);
        assert!(four_velocity(&psi).max_abs_diff(FourVector::new(e, p, 0.0, 0.0)) < 1e-14);
    }

    #[test]
    fn boost_is_the_sl2c_boost() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..50 {
            let p = sample::vec3(&mut rng, 4.0);
            let m = rng.random_range(0.2..2.0);
            let psi = from_rest(sample::unit_vector(&mut rng), 1).unwrap();
            let rho = (norm3(p) / m).asinh();
            let dir = scale3(p, -1.0 / norm3(p));
            let l = Sl2c::boost(dir, rho).unwrap();
            assert!(boost(&psi, p, m).unwrap().max_abs_diff(&psi.transform(&l)) < 1e-12);
        }
    }

    #[test]
    fn dirac_residual_examples() {
        let m = 1.7;
        let psi = psi_z();
        let r = dirac_residual(&psi, m, [0.0; 3], m).unwrap();
        assert!(norm4(r) < 1e-15);

        let anti = from_rest([0.0, 0.0, 1.0], -1).unwrap();
        assert!(norm4(dirac_residual(&anti, m, [0.0; 3], -m).unwrap()) < 1e-15);
        assert!(norm4(dirac_residual(&anti, m, [0.0; 3], m).unwrap()) > 1.0);

        assert!(matches!(
            dirac_residual(&psi, 2.0, [0.0; 3], 1.0),
            Err(Error::OffShell { .. })
        ));
    }

    #[test]
    fn dirac_operator_block_form() {
        // Oracle: the chiral-basis operator is [[−m, E + σ·p], [E − σ·p, −m]].
        let (e, p): (f64, Vec3) = (2.5, [0.3, -1.1, 0.8]);
        let m = (e * e - norm3(p).powi(2)).sqrt();
        let psi = DiracSpinor::new([c(0.1, 0.2), c(-0.3, 0.5), c(0.7, 0.0), c(0.2, -0.4)], Basis::Chiral);
        let sp = sigma_dot(p);
        let id = Mat2c::IDENTITY;
        let op = Mat4c::from_blocks(id * -m, id * e + sp, id * e - sp, id * -m);
        let expected = op.apply(psi.components);
        let got = dirac_residual(&psi, e, p, m).unwrap();
        assert!((0..4).all(|k| (got[k] - expected[k]).norm() < 1e-14));
    }

    #[test]
    fn parity_examples() {
        let psi = DiracSpinor::from_real([1.0, 0.0, 0.0, 0.0]);
        assert_eq!(parity(&psi), DiracSpinor::from_real([0.0, 0.0, 1.0, 0.0]));
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        for _ in 0..100 {
            let psi = boost(
                &from_rest(sample::unit_vector(&mut rng), 1).unwrap(),
                sample::vec3(&mut rng, 2.0),
                1.0,
            )
            .unwrap();
            let (u, w) = (four_velocity(&psi), four_spin(&psi, 1.0, 1.0));
            let pp = parity(&psi);
            let (up, wp) = (four_velocity(&pp), four_spin(&pp, 1.0, 1.0));
            assert!(up.max_abs_diff(FourVector::new(u.t, -u.x, -u.y, -u.z)) < 1e-12);
            assert!(wp.max_abs_diff(FourVector::new(-w.t, w.x, w.y, w.z)) < 1e-12);
        }
    }

    #[test]
    fn bilinear_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(45);
        for _ in 0..100 {
            let phi = sample::spinor(&mut rng, Chirality::Right);
            let chi = sample::spinor(&mut rng, Chirality::Left);
            let psi = DiracSpinor::from_weyl(&phi, &chi).unwrap();
            let cross = phi.a.conj() * chi.a + phi.b.conj() * chi.b;
            let b = bilinears(&psi);
            assert!((b.scalar - 2.0 * cross.re).abs() < 1e-13);
            assert!((b.pseudoscalar - (cross.conj() - cross)).norm() < 1e-13);
            assert!(b.pseudoscalar.re.abs() < 1e-14);
            let bp = bilinears(&parity(&psi));
            assert!((bp.pseudoscalar + b.pseudoscalar).norm() < 1e-13);
            assert!((bp.scalar - b.scalar).abs() < 1e-13);
            for mu in 0..4 {
                assert!(b.tensor.0[mu][mu].norm() == 0.0);
                for nu in 0..4 {
                    assert!((b.tensor.0[mu][nu] + b.tensor.0[nu][mu]).norm() < 1e-13);
                }
            }
        }
        let rest = from_rest(sample::unit_vector(&mut rng), 1).unwrap();
        assert!(bilinears(&rest).pseudoscalar.norm() < 1e-15);
    }

    #[test]
    fn change_basis_examples() {
        let std = change_basis(&psi_z());
        assert_eq!(std.basis, Basis::Standard);
        assert!(std.max_abs_diff(&DiracSpinor::new(
            [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            Basis::Standard
        )) < 1e-15);
        let psi = DiracSpinor::new([c(0.1, 0.2), c(-0.3, 0.5), c(0.7, 0.0), c(0.2, -0.4)], Basis::Chiral);
        let back = change_basis(&change_basis(&psi));
        assert_eq!(back.basis, Basis::Chiral);
        assert!((0..4).all(|k| (back.components[k] - psi.components[k]).norm() < 1e-15));
    }

    #[test]
    fn low_speed_standard_form() {
        let m = 1.0;
        let v = [1e-4, -2e-4, 3e-4];
        let p = scale3(v, m);
        let std = boost(&psi_z(), p, m).unwrap().to_basis(Basis::Standard);
        let c4 = std.components;
        let upper = [c4[0], c4[1]];
        let lower = [c4[2], c4[3]];
        let expected = (sigma_dot(v) * 0.5).apply(upper);
        let err = (lower[0] - expected[0]).norm().max((lower[1] - expected[1]).norm());
        assert!(err < 1e-7, "{err}");
    }

    #[test]
    fn bilinears_are_basis_covariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(46);
        for _ in 0..50 {
            let phi = sample::spinor(&mut rng, Chirality::Right);
            let chi = sample::spinor(&mut rng, Chirality::Left);
            let psi = DiracSpinor::from_weyl(&phi, &chi).unwrap();
            let a = bilinears(&psi);
            let b = bilinears(&psi.to_basis(Basis::Standard));
            assert!((a.scalar - b.scalar).abs() < 1e-13);
            assert!((a.pseudoscalar - b.pseudoscalar).norm() < 1e-13);
            assert!(a.vector.max_abs_diff(b.vector) < 1e-13);
            assert!(a.axial.max_abs_diff(b.axial) < 1e-13);
            assert!(a.tensor.max_abs_diff(&b.tensor) < 1e-13);
        }
    }

    #[test]
    fn helicity_emerges_at_high_speed() {
        // Boost spin-up along −z: χ_L dominates and has helicity −1.
        let b = boost(&psi_z(), [0.0, 0.0, -1e4], 1.0).unwrap();
        let phi = b.phi_r();
        let chi = b.chi_l();
        assert!(phi.norm_sqr() / chi.norm_sqr() < 1e-7);
        assert_eq!(helicity(&chi), Ok(-1));
        assert!(four_velocity(&b).z < 0.0);

        let b = boost(&psi_z(), [0.0, 0.0, 1e4], 1.0).unwrap();
        assert!(b.chi_l().norm_sqr() / b.phi_r().norm_sqr() < 1e-7);
        assert_eq!(helicity(&b.phi_r()), Ok(1));
    }

    #[test]
    fn rest_frame_roundtrip() {
        let psi = from_rest([0.0, 0.6, 0.8], 1).unwrap();
        let moving = boost(&psi, [1.0, -2.0, 0.5], 1.5).unwrap();
        let (rest, _) = to_rest_frame(&moving).unwrap();
        let u = four_velocity(&rest);
        assert!(u.max_abs_diff(FourVector::new(1.0, 0.0, 0.0, 0.0)) < 1e-12);
        let dir = rest_frame_spin_direction(&moving).unwrap();
        assert!((dir[1] - 0.6).abs() < 1e-12 && (dir[2] - 0.8).abs() < 1e-12);

        let massless = DiracSpinor::from_real([1.0, 0.0, 0.0, 0.0]);
        assert!(matches!(to_rest_frame(&massless), Err(Error::NotTimelike(_))));
    }

    #[test]
    fn from_weyl_checks_chirality() {
        let r = Spinor::right(c(1.0, 0.0), c(0.0, 0.0));
        assert!(DiracSpinor::from_weyl(&r, &r).is_err());
        assert!(DiracSpinor::from_weyl(&r.with_chirality(Chirality::Left), &r.with_chirality(Chirality::Left)).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn boosted_rest_spinor_solves_dirac(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = sample::vec3(&mut rng, 5.0);
            let m = rng.random_range(0.05..3.0);
            let e = (norm3(p).powi(2) + m * m).sqrt();
            let psi = boost(&from_rest(sample::unit_vector(&mut rng), 1).unwrap(), p, m).unwrap();
            let r = dirac_residual(&psi, e, p, m).unwrap();
            prop_assert!(norm4(r) < 1e-10 * (1.0 + e));
        }

        #[test]
        fn velocity_orthogonal_to_spin(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let phi = sample::spinor(&mut rng, Chirality::Right);
            let chi = sample::spinor(&mut rng, Chirality::Left);
            let psi = DiracSpinor::from_weyl(&phi, &chi).unwrap();
            let u = four_velocity(&psi);
            let w = four_spin(&psi, 1.3, 0.5);
            prop_assert!(minkowski_dot(u, w).abs() < 1e-12);
        }

        #[test]
        fn velocity_covariance(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let psi = DiracSpinor::from_weyl(
                &sample::spinor(&mut rng, Chirality::Right),
                &sample::spinor(&mut rng, Chirality::Left),
            ).unwrap();
            let l = sample::sl2c(&mut rng);
            let lhs = four_velocity(&psi.transform(&l));
            let rhs = induced_lorentz(&l).apply(four_velocity(&psi));
            prop_assert!(lhs.max_abs_diff(rhs) < 1e-9 * (1.0 + rhs.t));
            let ls = bilinears(&psi.transform(&l)).scalar;
            prop_assert!((ls - bilinears(&psi).scalar).abs() < 1e-9);
        }
    }
}

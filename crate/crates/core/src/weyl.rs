//! Massless spin-½ kinematics: the Pauli-Lubanski vector, the two Weyl
//! equations, helicity, and the failure of parity invariance.

use serde::{Deserialize, Serialize};

use crate::algebra::{dot3, norm3, scale3, sigma_dot, Complex, FourVector, Mat2c, Vec3};
use crate::spinor::{Chirality, Spinor};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParticleKinematics {
    pub energy: f64,
    pub momentum: Vec3,
    pub spin: Vec3,
}

impl ParticleKinematics {
    /// Energy and momentum from the flagpole; the spin vector is the
    /// momentum scaled by the helicity, so its length is read off the
    /// flagpole too.
    pub fn from_spinor(s: &Spinor) -> Result<Self> {
        let v = s.flagpole();
        let h = f64::from(helicity(s)?);
        Ok(ParticleKinematics {
            energy: v.t,
            momentum: v.spatial(),
            spin: scale3(v.spatial(), h),
        })
    }
}

/// `W = (s·p, E s)`.
pub fn pauli_lubanski(k: &ParticleKinematics) -> FourVector {
    FourVector::from_parts(dot3(k.spin, k.momentum), scale3(k.spin, k.energy))
}

/// `(E ∓ p·σ)s` with `(E, p)` taken from the flagpole; the minus sign is
/// for right-handed spinors.
pub fn weyl_residual(s: &Spinor) -> [Complex; 2] {
    let v = s.flagpole();
    let p = sigma_dot(v.spatial());
    let e = Mat2c::IDENTITY * v.t;
    let op = match s.chirality {
        Chirality::Right => e - p,
        Chirality::Left => e + p,
    };
    op.apply(s.components())
}

/// `+1` or `−1`, from the sign of `s†(p̂·σ)s / s†s`.
pub fn helicity(s: &Spinor) -> Result<i8> {
    let v = s.flagpole();
    let pn = norm3(v.spatial());
    if pn == 0.0 || !pn.is_finite() {
        return Err(Error::ZeroMomentum);
    }
    let ps = sigma_dot(scale3(v.spatial(), 1.0 / pn)).apply(s.components());
    let lambda = (s.a.conj() * ps[0] + s.b.conj() * ps[1]).re / s.norm_sqr();
    Ok(if lambda >= 0.0 { 1 } else { -1 })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParityReport {
    /// First-equation residual of `s` as given; zero.
    pub original: [Complex; 2],
    /// Residual after `p → −p` with `σ` unchanged.
    pub parity_flipped: [Complex; 2],
    pub parity_flipped_norm: f64,
    /// Second-equation residual of the dual spinor; zero.
    pub dual_residual: [Complex; 2],
}

/// Shows the first Weyl equation is not parity invariant: reversing the
/// (polar) momentum but not the (axial) σ leaves a nonzero residual.
pub fn parity_demo(s: &Spinor) -> Result<ParityReport> {
    if s.chirality != Chirality::Right {
        return Err(Error::WrongChirality { expected: "right" });
    }
    let v = s.flagpole();
    let flipped_op = Mat2c::IDENTITY * v.t + sigma_dot(v.spatial());
    let parity_flipped = flipped_op.apply(s.components());
    let parity_flipped_norm =
        (parity_flipped[0].norm_sqr() + parity_flipped[1].norm_sqr()).sqrt();
    Ok(ParityReport {
        original: weyl_residual(s),
        parity_flipped,
        parity_flipped_norm,
        dual_residual: weyl_residual(&s.dual()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cross3, minkowski_dot};
    use crate::lorentz::Sl2c;
    use crate::sample;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn norm2(v: [Complex; 2]) -> f64 {
        (v[0].norm_sqr() + v[1].norm_sqr()).sqrt()
    }

    #[test]
    fn pauli_lubanski_examples() {
        let p = 3.0;
        let k = ParticleKinematics {
            energy: p,
            momentum: [0.0, 0.0, p],
            spin: [0.0, 0.0, 0.5],
        };
        let w = pauli_lubanski(&k);
        assert_eq!(w, FourVector::new(p / 2.0, 0.0, 0.0, p / 2.0));
        assert_eq!(minkowski_dot(w, w), 0.0);

        let k = ParticleKinematics {
            energy: 2.0,
            momentum: [2.0, 0.0, 0.0],
            spin: [0.0, 0.5, 0.0],
        };
        let w = pauli_lubanski(&k);
        assert!((minkowski_dot(w, w) - 4.0 * 0.25).abs() < 1e-15);
        assert!(minkowski_dot(w, w) > 0.0);

        let k = ParticleKinematics {
            energy: 1.0,
            momentum: [1.0, 0.0, 0.0],
            spin: [0.0; 3],
        };
        assert_eq!(pauli_lubanski(&k), FourVector::default());
    }

    #[test]
    fn weyl_residual_example() {
        let s = Spinor::right(c(1.0, 0.0), c(0.0, 0.0));
        assert_eq!(s.flagpole(), FourVector::new(1.0, 0.0, 0.0, 1.0));
        assert_eq!(weyl_residual(&s), [c(0.0, 0.0); 2]);
    }

    #[test]
    fn weyl_operator_in_components() {
        // p·σ − E in the components: [[−2|b|², 2ab*], [2a*b, −2|a|²]]
        let s = Spinor::right(c(0.4, -1.2), c(0.9, 0.3));
        let v = s.flagpole();
        let op = sigma_dot(v.spatial()) - Mat2c::IDENTITY * v.t;
        let (a, b) = (s.a, s.b);
        let expected = Mat2c::new(
            c(-2.0 * b.norm_sqr(), 0.0),
            a * b.conj() * 2.0,
            a.conj() * b * 2.0,
            c(-2.0 * a.norm_sqr(), 0.0),
        );
        assert!(op.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn helicity_examples() {
        assert_eq!(helicity(&Spinor::right(c(1.0, 0.0), c(0.0, 0.0))), Ok(1));
        assert_eq!(helicity(&Spinor::left(c(1.0, 0.0), c(0.0, 0.0))), Ok(-1));
        assert_eq!(
            helicity(&Spinor::right(c(0.0, 0.0), c(0.0, 0.0))),
            Err(Error::ZeroMomentum)
        );
    }

    #[test]
    fn parity_demo_examples() {
        let r = parity_demo(&Spinor::right(c(1.0, 0.0), c(0.0, 0.0))).unwrap();
        assert_eq!(r.parity_flipped, [c(2.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(r.original, [c(0.0, 0.0); 2]);
        assert!(norm2(r.dual_residual) < 1e-15);

        // flagpole in the xy plane: |a| = |b|
        let s = Spinor::right(c(1.0, 0.0), Complex::from_polar(1.0, 0.7));
        assert!(s.flagpole().z.abs() < 1e-15);
        let r = parity_demo(&s).unwrap();
        assert!(r.parity_flipped_norm > 1.0);

        assert!(matches!(
            parity_demo(&Spinor::left(c(1.0, 0.0), c(0.0, 0.0))),
            Err(Error::WrongChirality { .. })
        ));
    }

    #[test]
    fn flipped_residual_is_twice_momentum_term() {
        // Oracle: (E + p·σ)s = (E − p·σ)s + 2(p·σ)s = 2(p·σ)s = 2E s.
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..100 {
            let s = sample::spinor(&mut rng, Chirality::Right);
            let r = parity_demo(&s).unwrap();
            let e = s.flagpole().t;
            assert!((r.parity_flipped[0] - s.a * (2.0 * e)).norm() < 1e-12);
            assert!((r.parity_flipped[1] - s.b * (2.0 * e)).norm() < 1e-12);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn residual_vanishes_in_every_frame(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ch = if rng.random::<bool>() { Chirality::Right } else { Chirality::Left };
            let s = sample::spinor(&mut rng, ch);
            prop_assert!(norm2(weyl_residual(&s)) < 1e-10);
            let t = s.transform(&sample::sl2c(&mut rng));
            prop_assert!(norm2(weyl_residual(&t)) < 1e-10 * (1.0 + t.norm_sqr()));
        }

        #[test]
        fn helicity_matches_chirality(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ch = if rng.random::<bool>() { Chirality::Right } else { Chirality::Left };
            let s = sample::spinor(&mut rng, ch);
            let expected = if ch == Chirality::Right { 1 } else { -1 };
            prop_assert_eq!(helicity(&s), Ok(expected));
            let l: Sl2c = sample::sl2c(&mut rng);
            prop_assert_eq!(helicity(&s.transform(&l)), Ok(expected));
        }

        #[test]
        fn spinor_kinematics_are_massless_and_aligned(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ch = if rng.random::<bool>() { Chirality::Right } else { Chirality::Left };
            let s = sample::spinor(&mut rng, ch);
            let k = ParticleKinematics::from_spinor(&s).unwrap();
            let w = pauli_lubanski(&k);
            let scale = k.energy.powi(4);
            prop_assert!(minkowski_dot(w, w).abs() < 1e-10 * (1.0 + scale));
            prop_assert!(norm3(cross3(k.spin, k.momentum)) < 1e-12 * (1.0 + k.energy * k.energy));
            prop_assert!((k.energy - norm3(k.momentum)).abs() < 1e-12);
        }
    }
}

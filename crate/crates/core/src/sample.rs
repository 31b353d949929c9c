//! Seeded random inputs for property checks and the suite runners.

use std::f64::consts::PI;

use rand::Rng;

use crate::algebra::{boost_exp, norm3, scale3, su2_exp, Complex, FourVector, Mat2c, Vec3};
use crate::lorentz::Sl2c;
use crate::spinor::{Chirality, Spinor};

/// Largest boost rapidity drawn by [`sl2c`].
pub const MAX_RAPIDITY: f64 = 2.0;

/// Uniform on the unit sphere (rejection from the cube).
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R) -> Vec3 {
    loop {
        let v: Vec3 = [
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ];
        let n = norm3(v);
        if n > 0.05 && n <= 1.0 {
            return scale3(v, 1.0 / n);
        }
    }
}

pub fn vec3<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> Vec3 {
    std::array::from_fn(|_| rng.random_range(-scale..scale))
}

pub fn four_vector<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> FourVector {
    FourVector::new(
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
    )
}

pub fn complex<R: Rng + ?Sized>(rng: &mut R) -> Complex {
    Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Two complex components, kept away from zero.
pub fn components<R: Rng + ?Sized>(rng: &mut R) -> [Complex; 2] {
    loop {
        let c = [complex(rng), complex(rng)];
        if c[0].norm_sqr() + c[1].norm_sqr() > 1e-2 {
            return c;
        }
    }
}

pub fn mat2<R: Rng + ?Sized>(rng: &mut R) -> Mat2c {
    Mat2c::new(complex(rng), complex(rng), complex(rng), complex(rng))
}

pub fn spinor<R: Rng + ?Sized>(rng: &mut R, chirality: Chirality) -> Spinor {
    let [a, b] = components(rng);
    Spinor::new(a, b, chirality)
}

/// Random SU(2) element with angle in `[0, 4π)`.
pub fn su2<R: Rng + ?Sized>(rng: &mut R) -> Sl2c {
    let n = unit_vector(rng);
    let theta = rng.random_range(0.0..4.0 * PI);
    Sl2c::new(su2_exp(n, theta).expect("unit axis")).expect("unimodular")
}

/// Random rotation followed by a boost with `|ρ| ≤ MAX_RAPIDITY`.
pub fn sl2c<R: Rng + ?Sized>(rng: &mut R) -> Sl2c {
    let u = su2(rng);
    let n = unit_vector(rng);
    let rho = rng.random_range(-MAX_RAPIDITY..MAX_RAPIDITY);
    let b = Sl2c::new(boost_exp(n, rho).expect("unit axis")).expect("unimodular");
    b * u
}

//! Seeded batch runners over the library's invariants.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    minkowski_dot, norm3, pauli, pauli_product_identity_residual, scale3, su2_exp, Complex,
    Mat2c,
};
use crate::dirac::{self, Basis, DiracSpinor};
use crate::liealg::{self, commutator, CMatrix, GeneratorSet};
use crate::lorentz::{induced_lorentz, Sl2c};
use crate::rotor::{so3_from_axis_angle, so3_from_su2};
use crate::sample;
use crate::spinor::{Chirality, Spinor};
use crate::weyl::{helicity, parity_demo, weyl_residual};

pub const DEFAULT_SEED: u64 = 42;
pub const CASES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteName {
    Algebra,
    Homomorphism,
    Weyl,
    Dirac,
    Liealg,
}

impl SuiteName {
    pub const ALL: [SuiteName; 5] = [
        SuiteName::Algebra,
        SuiteName::Homomorphism,
        SuiteName::Weyl,
        SuiteName::Dirac,
        SuiteName::Liealg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteName::Algebra => "algebra",
            SuiteName::Homomorphism => "homomorphism",
            SuiteName::Weyl => "weyl",
            SuiteName::Dirac => "dirac",
            SuiteName::Liealg => "liealg",
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// Whether the observed value must stay below or above the threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    AtMost,
    AtLeast,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    /// Worst case: the maximum for `AtMost`, the minimum for `AtLeast`.
    pub worst: f64,
    pub threshold: f64,
    pub bound: Bound,
    pub passed: bool,
}

impl Check {
    fn at_most(name: &str, values: impl IntoIterator<Item = f64>, threshold: f64) -> Check {
        let (cases, worst) = fold(values, 0.0, f64::max);
        Check::new(name, cases, worst, threshold, Bound::AtMost)
    }

    fn at_least(name: &str, values: impl IntoIterator<Item = f64>, threshold: f64) -> Check {
        let (cases, worst) = fold(values, f64::INFINITY, f64::min);
        Check::new(name, cases, worst, threshold, Bound::AtLeast)
    }

    fn new(name: &str, cases: usize, worst: f64, threshold: f64, bound: Bound) -> Check {
        let passed = match bound {
            Bound::AtMost => worst < threshold,
            Bound::AtLeast => worst > threshold,
        };
        Check {
            name: name.to_string(),
            cases,
            worst,
            threshold,
            bound,
            passed,
        }
    }
}

/// Folds the values; a NaN anywhere makes the worst value NaN so the check
/// fails.
fn fold(values: impl IntoIterator<Item = f64>, init: f64, f: fn(f64, f64) -> f64) -> (usize, f64) {
    values.into_iter().fold((0, init), |(n, w), v| {
        (n + 1, if v.is_nan() || w.is_nan() { f64::NAN } else { f(w, v) })
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: SuiteName,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} (seed {})", self.suite, self.seed)?;
        for c in &self.checks {
            let op = match c.bound {
                Bound::AtMost => "<",
                Bound::AtLeast => ">",
            };
            writeln!(
                f,
                "  {:<4} {:<40} cases {:>5}  worst {:.3e} {} {:.1e}",
                if c.passed { "ok" } else { "FAIL" },
                c.name,
                c.cases,
                c.worst,
                op,
                c.threshold
            )?;
        }
        write!(f, "{}", if self.passed { "PASS" } else { "FAIL" })
    }
}

pub fn run(suite: SuiteName, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let checks = match suite {
        SuiteName::Algebra => algebra(&mut rng),
        SuiteName::Homomorphism => homomorphism(&mut rng),
        SuiteName::Weyl => weyl(&mut rng),
        SuiteName::Dirac => dirac(&mut rng),
        SuiteName::Liealg => liealg(),
    };
    let passed = checks.iter().all(|c| c.passed);
    SuiteReport {
        suite,
        seed,
        checks,
        passed,
    }
}

fn random_chirality(rng: &mut ChaCha8Rng) -> Chirality {
    if rng.random::<bool>() {
        Chirality::Right
    } else {
        Chirality::Left
    }
}

fn algebra(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let paulis: Vec<Mat2c> = (1..4).map(|i| pauli(i).expect("index in range")).collect();
    let pauli_props = paulis.iter().map(|p| {
        let unitary = (*p * p.dagger()).max_abs_diff(&Mat2c::IDENTITY);
        p.hermiticity_defect()
            .max(p.trace().norm())
            .max(unitary)
            .max((p.det() + Complex::from(1.0)).norm())
    });
    let mut out = vec![Check::at_most("pauli matrices hermitian, unitary, traceless", pauli_props, 1e-15)];

    out.push(Check::at_most(
        "(σ·a)(σ·b) = a·b + iσ·(a×b)",
        (0..CASES).map(|_| {
            let (a, b) = (sample::vec3(rng, 2.0), sample::vec3(rng, 2.0));
            pauli_product_identity_residual(a, b).max_abs()
        }),
        1e-12,
    ));

    let mut null = Vec::with_capacity(CASES);
    let mut cov = Vec::with_capacity(CASES);
    for _ in 0..CASES {
        let ch = random_chirality(rng);
        let s = sample::spinor(rng, ch);
        let v = s.flagpole();
        null.push(minkowski_dot(v, v).abs() / (1.0 + v.t * v.t));
        let l = sample::sl2c(rng);
        // both chiralities: the flagpole moves with the induced Λ
        let w = s.transform(&l).flagpole();
        let expect = induced_lorentz(&l).apply(v);
        cov.push(w.max_abs_diff(expect) / (1.0 + expect.t.abs()));
    }
    out.push(Check::at_most("flagpole is null", null, 1e-12));
    out.push(Check::at_most("flagpole transforms covariantly", cov, 1e-9));

    out.push(Check::at_most(
        "flag parameters round-trip",
        (0..CASES).map(|_| {
            let s = sample::spinor(rng, Chirality::Right);
            let p = s.to_params().expect("nonzero spinor");
            Spinor::from_params(p).expect("valid params").max_abs_diff(&s)
        }),
        1e-12,
    ));

    out.push(Check::at_most(
        "ε-product antisymmetric and invariant",
        (0..CASES).map(|_| {
            let ch = random_chirality(rng);
            let (u, w) = (sample::spinor(rng, ch), sample::spinor(rng, ch));
            let l = sample::sl2c(rng);
            let p = u.epsilon_inner(&w).expect("same chirality");
            let q = w.epsilon_inner(&u).expect("same chirality");
            let pt = u.transform(&l).epsilon_inner(&w.transform(&l)).expect("same chirality");
            (p + q).norm().max((pt - p).norm() / (1.0 + p.norm()))
        }),
        1e-10,
    ));

    out.push(Check::at_most(
        "induced map is a Lorentz transformation",
        (0..CASES).map(|_| induced_lorentz(&sample::sl2c(rng)).lorentz_defect()),
        1e-10,
    ));
    out
}

fn homomorphism(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut hom = Vec::with_capacity(CASES);
    let mut kernel = Vec::with_capacity(CASES);
    let mut axis = Vec::with_capacity(CASES);
    for _ in 0..CASES {
        let (u1, u2) = (sample::su2(rng).matrix(), sample::su2(rng).matrix());
        let r1 = so3_from_su2(&u1).expect("unitary");
        let r2 = so3_from_su2(&u2).expect("unitary");
        let r12 = so3_from_su2(&(u1 * u2)).expect("unitary");
        hom.push(r12.max_abs_diff(&(r1 * r2)));
        kernel.push(so3_from_su2(&(-u1)).expect("unitary").max_abs_diff(&r1));

        let n = sample::unit_vector(rng);
        let th = rng.random_range(-2.0 * PI..2.0 * PI);
        let r = so3_from_su2(&su2_exp(n, th).expect("unit axis")).expect("unitary");
        axis.push(r.max_abs_diff(&so3_from_axis_angle(n, th).expect("unit axis")));
    }
    let mut turns = Vec::with_capacity(100);
    for _ in 0..100 {
        let n = sample::unit_vector(rng);
        let half = su2_exp(n, 2.0 * PI).expect("unit axis");
        let full = su2_exp(n, 4.0 * PI).expect("unit axis");
        turns.push(
            half.max_abs_diff(&-Mat2c::IDENTITY)
                .max(full.max_abs_diff(&Mat2c::IDENTITY)),
        );
    }
    vec![
        Check::at_most("so3(U₁U₂) = so3(U₁)so3(U₂)", hom, 1e-10),
        Check::at_most("so3(−U) = so3(U)", kernel, 1e-10),
        Check::at_most("so3(exp) matches axis-angle rotation", axis, 1e-10),
        Check::at_most("360° gives −I, 720° gives I", turns, 1e-12),
    ]
}

fn norm2(v: [Complex; 2]) -> f64 {
    (v[0].norm_sqr() + v[1].norm_sqr()).sqrt()
}

fn weyl(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut right = Vec::with_capacity(CASES);
    let mut left = Vec::with_capacity(CASES);
    let mut moved = Vec::with_capacity(CASES);
    let mut hel = Vec::with_capacity(CASES);
    let mut parity = Vec::with_capacity(CASES);
    for _ in 0..CASES {
        let s = sample::spinor(rng, Chirality::Right);
        right.push(norm2(weyl_residual(&s)));
        let t = s.transform(&sample::sl2c(rng));
        moved.push(norm2(weyl_residual(&t)) / (1.0 + t.norm_sqr()));
        let l = sample::spinor(rng, Chirality::Left);
        left.push(norm2(weyl_residual(&l)));
        let ok = helicity(&s) == Ok(1) && helicity(&l) == Ok(-1) && helicity(&t) == Ok(1);
        hel.push(if ok { 0.0 } else { 1.0 });

        let unit = s.scale(Complex::from(1.0 / s.norm_sqr().sqrt()));
        let rep = parity_demo(&unit).expect("right-handed");
        parity.push(rep.parity_flipped_norm);
    }
    vec![
        Check::at_most("right-handed residual", right, 1e-10),
        Check::at_most("left-handed residual", left, 1e-10),
        Check::at_most("residual after SL(2,C) transform", moved, 1e-10),
        Check::at_most("helicity follows chirality", hel, 0.5),
        Check::at_least("parity-flipped residual / |s|", parity, 0.1),
    ]
}

fn random_dirac(rng: &mut ChaCha8Rng) -> DiracSpinor {
    let phi = sample::spinor(rng, Chirality::Right);
    let chi = sample::spinor(rng, Chirality::Left);
    DiracSpinor::from_weyl(&phi, &chi).expect("chiralities")
}

fn dirac(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut residual = Vec::with_capacity(CASES);
    let mut closed = Vec::with_capacity(CASES);
    let mut scalar = Vec::with_capacity(CASES);
    let mut pseudo = Vec::with_capacity(CASES);
    let mut uw = Vec::with_capacity(CASES);
    for _ in 0..CASES {
        let n = sample::unit_vector(rng);
        let branch: i8 = if rng.random::<bool>() { 1 } else { -1 };
        let m = rng.random_range(0.5..3.0);
        let p = sample::vec3(rng, 3.0);
        let basis = if rng.random::<bool>() { Basis::Chiral } else { Basis::Standard };
        let rest = dirac::from_rest(n, branch).expect("unit axis").to_basis(basis);
        let psi = dirac::boost(&rest, p, m).expect("positive mass");
        let e = (norm3(p).powi(2) + m * m).sqrt();
        let r = dirac::dirac_residual(&psi, e, p, m * f64::from(branch)).expect("on shell");
        residual.push(r.iter().map(|c| c.norm()).fold(0.0, f64::max));

        let pn = norm3(p);
        if pn > 0.0 {
            let l = Sl2c::boost(scale3(p, -1.0 / pn), (pn / m).asinh()).expect("unit axis");
            let via = rest.transform(&l).to_basis(basis);
            closed.push(via.max_abs_diff(&psi));
        }

        let g = random_dirac(rng);
        let b0 = dirac::bilinears(&g);
        let moved = dirac::bilinears(&g.transform(&sample::sl2c(rng)));
        scalar.push((moved.scalar - b0.scalar).abs() / (1.0 + b0.scalar.abs()));
        let flipped = dirac::bilinears(&dirac::parity(&g)).pseudoscalar;
        pseudo.push((flipped + b0.pseudoscalar).norm());
        let u = b0.vector;
        let w = dirac::four_spin(&g, 1.0, 1.0);
        uw.push(minkowski_dot(u, w).abs());
    }
    vec![
        Check::at_most("boosted rest spinor solves Dirac equation", residual, 1e-9),
        Check::at_most("closed-form boost equals SL(2,C) boost", closed, 1e-12),
        Check::at_most("Ψ̄Ψ invariant under transforms", scalar, 1e-9),
        Check::at_most("Ψ̄γ⁵Ψ flips sign under parity", pseudo, 1e-12),
        Check::at_most("U·W = 0", uw, 1e-9),
    ]
}

fn comm(a: &CMatrix, b: &CMatrix) -> CMatrix {
    commutator(a, b).expect("equal dimensions")
}

fn liealg() -> Vec<Check> {
    let i = Complex::new(0.0, 1.0);
    let j3 = liealg::so3_generators();
    let g = GeneratorSet::lorentz();
    let (a, b) = liealg::ab_split(&g);
    let mut so3 = vec![];
    let mut lorentz = vec![];
    let mut split = vec![];
    for x in 0..3 {
        let (y, z) = ((x + 1) % 3, (x + 2) % 3);
        so3.push(comm(&j3[x], &j3[y]).max_abs_diff(&j3[z].scale(i)));
        lorentz.push(comm(&g.j[x], &g.j[y]).max_abs_diff(&g.j[z].scale(i)));
        lorentz.push(comm(&g.k[x], &g.k[y]).max_abs_diff(&g.j[z].scale(-i)));
        lorentz.push(comm(&g.j[x], &g.k[y]).max_abs_diff(&g.k[z].scale(i)));
        lorentz.push(comm(&g.j[x], &g.k[x]).max_abs());
        split.push(comm(&a[x], &a[y]).max_abs_diff(&a[z].scale(i)));
        split.push(comm(&b[x], &b[y]).max_abs_diff(&b[z].scale(i)));
        for bk in &b {
            split.push(comm(&a[x], bk).max_abs());
        }
    }
    let mut clifford = vec![];
    let mut s_bracket = vec![];
    let mut s_gamma = vec![];
    let mut s_product = vec![];
    for basis in [Basis::Chiral, Basis::Standard] {
        let gs = dirac::gammas(basis);
        clifford.push(liealg::clifford_residual(&gs));
        s_bracket.push(liealg::lorentz_bracket_defect(|m, n| liealg::smunu(m, n, &gs), 1.0));
        s_gamma.push(liealg::smunu_gamma_defect(&gs));
        s_product.push(liealg::smunu_product_defect(&gs));
    }
    let l_bracket = liealg::lorentz_bracket_defect(liealg::lmunu, 1.0);
    vec![
        Check::at_most("so(3) brackets", so3, 1e-15),
        Check::at_most("Lorentz J/K brackets", lorentz, 1e-15),
        Check::at_most("A/B split into commuting su(2)s", split, 1e-15),
        Check::at_most("Clifford relation", clifford, 1e-15),
        Check::at_most("S^{μν} bracket table", s_bracket, 1e-15),
        Check::at_most("[S^{μν}, γ^ρ]", s_gamma, 1e-15),
        Check::at_most("S^{μν} from γ products", s_product, 1e-15),
        Check::at_most("L^{μν} bracket table", [l_bracket], 1e-15),
    ]
}

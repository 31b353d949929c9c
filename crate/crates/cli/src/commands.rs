use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use spinor_core::algebra::{minkowski_dot, norm3, normalize3, scale3, FourVector, Mat2c, Mat4r, Vec3};
use spinor_core::dirac::{self, DiracSpinor};
use spinor_core::lorentz::{induced_lorentz, Sl2c};
use spinor_core::maxwell::{
    self, ClassicalResiduals, FieldGrid, GridShape, PlaneWave, SourceGrid,
};
use spinor_core::spinor::{Chirality, Spinor};
use spinor_core::suite;

use crate::args::{
    BoostArgs, BuildArgs, CheckArgs, Command, DiracCommand, FlagpoleArgs, InputArgs,
    MaxwellArgs, ResidualArgs, SpinorArgs, TransformArgs,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] spinor_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Core(spinor_core::Error::Parse { .. }) => 1,
            CliError::Core(spinor_core::Error::RecordCount { .. }) => 1,
            CliError::Invalid(_) | CliError::Core(_) => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Rendered JSON document and the exit code to finish with.
pub struct Outcome {
    pub document: String,
    pub code: u8,
}

fn emit<T: Serialize>(report: &T) -> Result<Outcome> {
    Ok(Outcome {
        document: serde_json::to_string_pretty(report).expect("reports serialize"),
        code: 0,
    })
}

pub fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Flagpole(a) => flagpole(a),
        Command::Transform(a) => transform(a),
        Command::Dirac(DiracCommand::Build(a)) => dirac_build(a),
        Command::Dirac(DiracCommand::Boost(a)) => dirac_boost(a),
        Command::Dirac(DiracCommand::Bilinears(a)) => dirac_bilinears(a),
        Command::Dirac(DiracCommand::Residual(a)) => dirac_residual(a),
        Command::Maxwell(a) => maxwell_cmd(a),
        Command::Check(a) => check(a),
    }
}

fn spinor_of(a: &SpinorArgs) -> Spinor {
    let ch = if a.left { Chirality::Left } else { Chirality::Right };
    Spinor::new(a.a, a.b, ch)
}

fn vec3(v: &[f64]) -> Vec3 {
    [v[0], v[1], v[2]]
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FlagpoleReport {
    pub spinor: Spinor,
    pub flagpole: FourVector,
    pub norm: f64,
}

fn flagpole(a: FlagpoleArgs) -> Result<Outcome> {
    let s = spinor_of(&a.spinor);
    let v = s.flagpole();
    emit(&FlagpoleReport {
        spinor: s,
        flagpole: v,
        norm: minkowski_dot(v, v),
    })
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TransformReport {
    pub input: Spinor,
    pub matrix: Mat2c,
    pub spinor: Spinor,
    pub flagpole: FourVector,
    pub induced: Mat4r,
}

fn transform(a: TransformArgs) -> Result<Outcome> {
    let s = spinor_of(&a.spinor);
    let mut l = match (&a.rotate, &a.boost) {
        (Some(r), None) => Sl2c::rotation(normalize3(vec3(r))?, r[3])?,
        (None, Some(b)) => Sl2c::boost(normalize3(vec3(b))?, b[3])?,
        _ => return Err(CliError::Usage("give exactly one of --rotate, --boost".into())),
    };
    if a.active {
        l = l.inverse();
    }
    let out = s.transform(&l);
    emit(&TransformReport {
        input: s,
        matrix: l.matrix(),
        spinor: out,
        flagpole: out.flagpole(),
        induced: induced_lorentz(&l),
    })
}

/// Bispinor plus the kinematics it was built for, where known.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiracReport {
    pub spinor: DiracSpinor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mass: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub momentum: Option<Vec3>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub energy: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<i8>,
}

fn check_branch(b: i8) -> Result<i8> {
    match b {
        1 | -1 => Ok(b),
        _ => Err(CliError::Usage(format!("branch must be 1 or -1, got {b}"))),
    }
}

fn check_mass(m: f64) -> Result<f64> {
    if m > 0.0 && m.is_finite() {
        Ok(m)
    } else {
        Err(spinor_core::Error::NonPositiveMass(m).into())
    }
}

/// `p = γ m v`.
fn momentum_from_velocity(v: Vec3, m: f64) -> Result<Vec3> {
    let speed = norm3(v);
    if speed >= 1.0 || speed.is_nan() {
        return Err(CliError::Invalid(format!(
            "speed must be below 1, got {speed}"
        )));
    }
    let gamma = 1.0 / (1.0 - speed * speed).sqrt();
    Ok(scale3(v, gamma * m))
}

fn energy(p: Vec3, m: f64) -> f64 {
    (norm3(p).powi(2) + m * m).sqrt()
}

fn dirac_build(a: BuildArgs) -> Result<Outcome> {
    let branch = check_branch(a.branch)?;
    let m = check_mass(a.mass)?;
    let n = normalize3(vec3(&a.rest))?;
    let rest = dirac::from_rest(n, branch)?.to_basis(a.basis.into());
    let p = match &a.boost {
        Some(v) => momentum_from_velocity(vec3(v), m)?,
        None => [0.0; 3],
    };
    let psi = dirac::boost(&rest, p, m)?;
    emit(&DiracReport {
        spinor: psi,
        mass: Some(m),
        momentum: Some(p),
        energy: Some(energy(p, m)),
        branch: Some(branch),
    })
}

fn read_input(path: &Path) -> Result<String> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io)
    }
}

/// Accepts a bare bispinor or any report carrying a `spinor` field.
fn load_dirac(a: &InputArgs) -> Result<DiracReport> {
    if let Some(c) = &a.components {
        let comps: [Complex64; 4] = [c[0], c[1], c[2], c[3]];
        return Ok(DiracReport {
            spinor: DiracSpinor::new(comps, a.basis.into()),
            mass: None,
            momentum: None,
            energy: None,
            branch: None,
        });
    }
    let Some(path) = &a.input else {
        return Err(CliError::Usage("give --input FILE or --components".into()));
    };
    let text = read_input(path)?;
    let bad = |e: serde_json::Error| CliError::Usage(format!("{}: {e}", path.display()));
    let value: serde_json::Value = serde_json::from_str(&text).map_err(bad)?;
    if value.get("spinor").is_some() {
        serde_json::from_value(value).map_err(bad)
    } else {
        let spinor: DiracSpinor = serde_json::from_value(value).map_err(bad)?;
        Ok(DiracReport {
            spinor,
            mass: None,
            momentum: None,
            energy: None,
            branch: None,
        })
    }
}

fn dirac_boost(a: BoostArgs) -> Result<Outcome> {
    let input = load_dirac(&a.input)?;
    let m = check_mass(a.mass)?;
    let p = momentum_from_velocity(vec3(&a.velocity), m)?;
    let psi = dirac::boost(&input.spinor, p, m)?;
    emit(&DiracReport {
        spinor: psi,
        mass: Some(m),
        momentum: Some(p),
        energy: Some(energy(p, m)),
        branch: input.branch,
    })
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BilinearsReport {
    pub spinor: DiracSpinor,
    /// Flagpole of the right-handed half.
    pub flagpole_right: FourVector,
    /// Flagpole of the left-handed half.
    pub flagpole_left: FourVector,
    /// `Ψ̄γ^μΨ`, the sum of the two flagpoles.
    pub four_velocity: FourVector,
    /// `Ψ̄γ^μγ⁵Ψ`, their difference.
    pub axial: FourVector,
    pub scalar: f64,
    pub pseudoscalar: Complex64,
    /// `√(−U·U)` when `U` is timelike.
    pub invariant_mass: Option<f64>,
    pub rest_frame_spin_direction: Option<Vec3>,
}

fn dirac_bilinears(a: InputArgs) -> Result<Outcome> {
    let psi = load_dirac(&a)?.spinor;
    let b = dirac::bilinears(&psi);
    let u = b.vector;
    let sq = minkowski_dot(u, u);
    let timelike = sq < 0.0 && u.t > 0.0;
    emit(&BilinearsReport {
        spinor: psi,
        flagpole_right: psi.phi_r().flagpole(),
        flagpole_left: psi.chi_l().flagpole(),
        four_velocity: u,
        axial: b.axial,
        scalar: b.scalar,
        pseudoscalar: b.pseudoscalar,
        invariant_mass: timelike.then(|| (-sq).sqrt()),
        rest_frame_spin_direction: if timelike {
            Some(dirac::rest_frame_spin_direction(&psi)?)
        } else {
            None
        },
    })
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ResidualReport {
    pub energy: f64,
    pub momentum: Vec3,
    pub mass: f64,
    pub branch: i8,
    pub residual: [Complex64; 4],
    pub max_abs: f64,
}

fn dirac_residual(a: ResidualArgs) -> Result<Outcome> {
    let input = load_dirac(&a.input)?;
    let p = match (&a.momentum, input.momentum) {
        (Some(p), _) => vec3(p),
        (None, Some(p)) => p,
        (None, None) => {
            return Err(CliError::Usage(
                "no momentum in the input; give --momentum".into(),
            ))
        }
    };
    let m = check_mass(a.mass.or(input.mass).unwrap_or(1.0))?;
    let branch = check_branch(a.branch.or(input.branch).unwrap_or(1))?;
    let e = a.energy.unwrap_or_else(|| energy(p, m));
    let r = dirac::dirac_residual(&input.spinor, e, p, m * f64::from(branch))?;
    emit(&ResidualReport {
        energy: e,
        momentum: p,
        mass: m,
        branch,
        residual: r,
        max_abs: r.iter().map(|c| c.norm()).fold(0.0, f64::max),
    })
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MaxwellRow {
    pub h: f64,
    pub ht: f64,
    pub nodes: usize,
    pub spinor_residual: f64,
    pub classical: ClassicalResiduals,
    /// Largest node-wise gap between the spinor residual and the
    /// combination of classical residuals it should equal.
    pub decomposition_mismatch: f64,
    pub ratio: Option<f64>,
    pub order: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MaxwellReport {
    pub source: String,
    pub rows: Vec<MaxwellRow>,
    pub order_estimate: Option<f64>,
}

fn maxwell_row(f: &FieldGrid, s: &SourceGrid, prev: Option<&MaxwellRow>) -> Result<MaxwellRow> {
    let r = maxwell::maxwell_residual(f, s)?;
    let ratio = prev.map(|p| p.spinor_residual / r);
    Ok(MaxwellRow {
        h: f.shape.h,
        ht: f.shape.ht,
        nodes: f.shape.len(),
        spinor_residual: r,
        classical: maxwell::classical_maxwell_residual(f, s)?,
        decomposition_mismatch: maxwell::decomposition_mismatch(f, s)?,
        ratio,
        order: ratio.map(f64::log2),
    })
}

struct Analytic {
    name: String,
    params: BTreeMap<String, f64>,
}

impl Analytic {
    fn parse(tokens: &[String]) -> Result<Analytic> {
        let (name, rest) = tokens
            .split_first()
            .ok_or_else(|| CliError::Usage("--analytic needs a generator name".into()))?;
        let mut params = BTreeMap::new();
        for t in rest {
            let (k, v) = t
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("expected key=value, got `{t}`")))?;
            let v: f64 = v
                .parse()
                .map_err(|_| CliError::Usage(format!("bad number in `{t}`")))?;
            params.insert(k.to_string(), v);
        }
        let allowed: &[&str] = match name.as_str() {
            "planewave" => &["k", "h"],
            "zero" => &["h"],
            "coulomb" => &["q", "h"],
            other => {
                return Err(CliError::Usage(format!(
                    "unknown generator `{other}` (planewave, zero, coulomb)"
                )))
            }
        };
        if let Some(k) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(CliError::Usage(format!("`{name}` has no parameter `{k}`")));
        }
        Ok(Analytic {
            name: name.clone(),
            params,
        })
    }

    fn get(&self, key: &str, default: f64) -> f64 {
        self.params.get(key).copied().unwrap_or(default)
    }

    fn grids(&self, h: f64) -> Result<(FieldGrid, SourceGrid)> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(spinor_core::Error::BadSpacing.into());
        }
        let fields = match self.name.as_str() {
            "planewave" => PlaneWave::new(self.get("k", 1.0), h).fields()?,
            "zero" => FieldGrid::zeros(GridShape::new([5; 4], h, h, FourVector::default())?),
            _ => {
                // point charge at the origin, grid in the positive octant
                let n = ((0.4 / h).round() as usize + 1).max(maxwell::MIN_NODES);
                let origin = FourVector::new(0.0, 1.0, 1.0, 1.0);
                let shape = GridShape::new([maxwell::MIN_NODES, n, n, n], h, h, origin)?;
                maxwell::coulomb(shape, self.get("q", 1.0), [0.0; 3])
            }
        };
        let sources = SourceGrid::zeros(fields.shape);
        Ok((fields, sources))
    }
}

fn maxwell_cmd(a: MaxwellArgs) -> Result<Outcome> {
    let mut rows: Vec<MaxwellRow> = vec![];
    let source = if let Some(tokens) = &a.analytic {
        let gen = Analytic::parse(tokens)?;
        let h0 = gen.get("h", 0.1);
        for level in 0..=a.refine {
            let h = h0 / f64::from(1u32 << level.min(20));
            let (f, s) = gen.grids(h)?;
            let row = maxwell_row(&f, &s, rows.last())?;
            rows.push(row);
        }
        tokens.join(" ")
    } else {
        let fpath = a.fields.as_ref().expect("clap group");
        let spath = a.sources.as_ref().expect("clap requires");
        let f = FieldGrid::parse(&read_input(fpath)?).map_err(|e| located(fpath, e))?;
        let s = SourceGrid::parse(&read_input(spath)?).map_err(|e| located(spath, e))?;
        rows.push(maxwell_row(&f, &s, None)?);
        format!("{} {}", fpath.display(), spath.display())
    };
    let order_estimate = rows.last().and_then(|r| r.order);
    emit(&MaxwellReport {
        source,
        rows,
        order_estimate,
    })
}

/// Prefixes grid-file errors with the file name, keeping the exit code.
fn located(path: &Path, e: spinor_core::Error) -> CliError {
    match e {
        spinor_core::Error::Parse { line, message } => CliError::Core(spinor_core::Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        }),
        other => other.into(),
    }
}

fn check(a: CheckArgs) -> Result<Outcome> {
    let report = suite::run(a.suite, a.seed);
    eprintln!("{report}");
    let mut out = emit(&report)?;
    if !report.passed {
        out.code = 3;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn velocity_to_momentum() {
        let p = momentum_from_velocity([0.8, 0.0, 0.0], 1.0).unwrap();
        assert!((p[0] - 4.0 / 3.0).abs() < 1e-15);
        assert!(momentum_from_velocity([1.0, 0.0, 0.0], 1.0).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 1);
        assert_eq!(
            CliError::Core(spinor_core::Error::Parse { line: 3, message: "m".into() }).exit_code(),
            1
        );
        assert_eq!(CliError::Core(spinor_core::Error::ZeroMomentum).exit_code(), 2);
    }

    #[test]
    fn analytic_parameters() {
        let t = |s: &str| s.split(' ').map(String::from).collect::<Vec<_>>();
        let a = Analytic::parse(&t("planewave k=2 h=0.05")).unwrap();
        assert_eq!(a.get("k", 1.0), 2.0);
        assert!(Analytic::parse(&t("planewave q=1")).is_err());
        assert!(Analytic::parse(&t("bogus")).is_err());
        assert!(Analytic::parse(&t("zero h")).is_err());
    }
}

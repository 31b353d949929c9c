use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use spinor_core::dirac::Basis;
use spinor_core::suite::{SuiteName, DEFAULT_SEED};

/// Relativistic spinor calculations. Every command prints one JSON document.
#[derive(Debug, Parser)]
#[command(name = "spinors", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Null 4-vector of a two-component spinor.
    Flagpole(FlagpoleArgs),
    /// Apply a rotation or boost to a spinor.
    Transform(TransformArgs),
    /// Dirac bispinors.
    #[command(subcommand)]
    Dirac(DiracCommand),
    /// Maxwell residuals on a sampled grid.
    Maxwell(MaxwellArgs),
    /// Run a seeded property suite.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct SpinorArgs {
    /// First component, `re` or `re+imi`.
    #[arg(allow_hyphen_values = true, value_parser = parse_complex)]
    pub a: Complex64,
    /// Second component.
    #[arg(allow_hyphen_values = true, value_parser = parse_complex)]
    pub b: Complex64,
    /// Treat the spinor as left-handed.
    #[arg(long)]
    pub left: bool,
}

#[derive(Debug, Args)]
pub struct FlagpoleArgs {
    #[command(flatten)]
    pub spinor: SpinorArgs,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("op").required(true).args(["rotate", "boost"]))]
pub struct TransformArgs {
    #[command(flatten)]
    pub spinor: SpinorArgs,
    /// Rotation: axis x y z and angle.
    #[arg(long, num_args = 4, allow_hyphen_values = true, value_names = ["AX", "AY", "AZ", "ANGLE"])]
    pub rotate: Option<Vec<f64>>,
    /// Boost: direction x y z and rapidity.
    #[arg(long, num_args = 4, allow_hyphen_values = true, value_names = ["DX", "DY", "DZ", "RAPIDITY"])]
    pub boost: Option<Vec<f64>>,
    /// Move the object instead of the frame (applies the inverse).
    #[arg(long)]
    pub active: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BasisArg {
    Chiral,
    Standard,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Basis {
        match b {
            BasisArg::Chiral => Basis::Chiral,
            BasisArg::Standard => Basis::Standard,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum DiracCommand {
    /// Rest-frame bispinor, optionally boosted to a velocity.
    Build(BuildArgs),
    /// Boost a bispinor to momentum `γmv`.
    Boost(BoostArgs),
    /// Flagpoles of both halves, 4-velocity, 4-spin and rest-frame spin.
    Bilinears(InputArgs),
    /// Dirac-equation residual.
    Residual(ResidualArgs),
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// Rest-frame spin direction (normalized).
    #[arg(long, num_args = 3, required = true, allow_hyphen_values = true, value_names = ["X", "Y", "Z"])]
    pub rest: Vec<f64>,
    /// Rest-frame branch, `+1` (χ_L = φ_R) or `-1` (χ_L = −φ_R).
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub branch: i8,
    /// Velocity to boost to.
    #[arg(long, num_args = 3, allow_hyphen_values = true, value_names = ["VX", "VY", "VZ"])]
    pub boost: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    #[arg(long, value_enum, default_value = "chiral")]
    pub basis: BasisArg,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// JSON file holding a bispinor or a previous report; `-` reads stdin.
    #[arg(long, conflicts_with = "components")]
    pub input: Option<PathBuf>,
    /// Four components in the chosen basis.
    #[arg(long, num_args = 4, allow_hyphen_values = true, value_parser = parse_complex)]
    pub components: Option<Vec<Complex64>>,
    /// Basis of `--components`.
    #[arg(long, value_enum, default_value = "chiral")]
    pub basis: BasisArg,
}

#[derive(Debug, Args)]
pub struct BoostArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Velocity to boost to.
    #[arg(long, num_args = 3, required = true, allow_hyphen_values = true, value_names = ["VX", "VY", "VZ"])]
    pub velocity: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
}

#[derive(Debug, Args)]
pub struct ResidualArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Momentum; defaults to the value recorded in the input report.
    #[arg(long, num_args = 3, allow_hyphen_values = true, value_names = ["PX", "PY", "PZ"])]
    pub momentum: Option<Vec<f64>>,
    /// Mass; defaults to the input report's, else 1.
    #[arg(long)]
    pub mass: Option<f64>,
    /// Energy; defaults to the on-shell value.
    #[arg(long)]
    pub energy: Option<f64>,
    /// Rest-frame branch; defaults to the input report's, else +1.
    #[arg(long, allow_hyphen_values = true)]
    pub branch: Option<i8>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["fields", "analytic"]))]
pub struct MaxwellArgs {
    /// Field grid file.
    #[arg(long, requires = "sources")]
    pub fields: Option<PathBuf>,
    /// Source grid file.
    #[arg(long)]
    pub sources: Option<PathBuf>,
    /// Generator name followed by `key=value` parameters, e.g.
    /// `planewave k=1 h=0.1`, `zero h=0.1`, `coulomb q=1 h=0.1`.
    #[arg(long, num_args = 1.., value_names = ["NAME", "KEY=VALUE"])]
    pub analytic: Option<Vec<String>>,
    /// Number of extra halvings of the spacing (analytic grids only).
    #[arg(long, default_value_t = 0, requires = "analytic")]
    pub refine: usize,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, value_parser = parse_suite)]
    pub suite: SuiteName,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

fn parse_suite(s: &str) -> Result<SuiteName, String> {
    s.parse()
}

/// Parses `re`, `re+imi`, `re-imi`, `imi` or `i`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let bad = || format!("invalid complex number `{s}` (expected `re` or `re+imi`)");
    let t = s.trim();
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not leading and not an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        x => x,
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = im.trim_start_matches('+').parse().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

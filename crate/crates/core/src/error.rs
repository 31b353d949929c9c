use num_complex::Complex64;
use thiserror::Error;

/// Domain errors raised by the spinor library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index {0} is out of range 0..=3")]
    IndexOutOfRange(usize),

    #[error("expected a unit vector, got norm {norm}")]
    NonUnitVector { norm: f64 },

    #[error("flagpole length must be non-negative, got {0}")]
    NegativeLength(f64),

    #[error("polar angle must lie in [0, π], got {0}")]
    PolarAngleOutOfRange(f64),

    #[error("the zero spinor has no flag parameters")]
    ZeroSpinor,

    #[error("operation needs spinors of the same chirality")]
    MixedChirality,

    #[error("operation needs a {expected} spinor")]
    WrongChirality { expected: &'static str },

    #[error("determinant {0} differs from 1")]
    NotUnimodular(Complex64),

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not in SU(2) (deviation {0:e})")]
    NotSpecialUnitary(f64),

    #[error("raising or lowering cannot change whether an index is dotted")]
    DottednessChange,

    #[error("illegal contraction: {0}")]
    IllegalContraction(&'static str),

    #[error("momentum is zero, helicity undefined")]
    ZeroMomentum,

    #[error("mass must be positive, got {0}")]
    NonPositiveMass(f64),

    #[error("off-shell: E² − p² − m² = {defect:e}")]
    OffShell { defect: f64 },

    #[error("4-vector is not timelike (Minkowski square {0:e})")]
    NotTimelike(f64),

    #[error("node {0:?} is not interior on every axis")]
    BoundaryNode([usize; 4]),

    #[error("grid shapes differ")]
    ShapeMismatch,

    #[error("grid needs at least {min} nodes on every axis, got {dims:?}")]
    GridTooSmall { min: usize, dims: [usize; 4] },

    #[error("grid spacing must be positive and finite")]
    BadSpacing,

    #[error("grid has {expected} nodes but {got} records")]
    RecordCount { expected: usize, got: usize },

    #[error("matrix dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("parameter matrix is not antisymmetric")]
    NotAntisymmetric,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

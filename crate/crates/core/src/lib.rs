//! Relativistic spinor algebra.
//!
//! Rank-1 (Weyl) spinors and their null flagpole 4-vectors, the SU(2) → SO(3)
//! double cover, SL(2,C) acting on Hermitian 2×2 matrices as the restricted
//! Lorentz group, rank-2 spinors with index variance, the Weyl equations,
//! Dirac bispinors with the classical Dirac equation, Maxwell's equations in
//! spinor form on sampled grids, and the Lie-algebra tables behind all of it.
//!
//! Conventions used everywhere:
//!
//! * natural units, `c = 1` (and `μ₀ = ε₀ = 1` in [`maxwell`]);
//! * Minkowski signature `(−1, 1, 1, 1)`;
//! * passive (frame) rotations: `su2_exp(ẑ, θ)` maps to `R_z(θ)`
//!   with `+sin θ` in the first row;
//! * spinor metric `ε = [[0, 1], [−1, 0]]`.
//!
//! Every identity in the library is also exposed as a residual so it can be
//! checked numerically; see [`suite`] for the batch runners.

// Tensor-index loops read better with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod dirac;
mod error;
pub mod liealg;
pub mod lorentz;
pub mod maxwell;
pub mod rotor;
pub mod sample;
pub mod spinor;
pub mod suite;
pub mod weyl;

pub use error::{Error, Result};

/// Absolute tolerance used for identity residuals and group-membership checks
/// unless a caller supplies its own.
pub const DEFAULT_TOL: f64 = 1e-10;

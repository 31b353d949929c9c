//! Maxwell's equations in spinor form on sampled grids (`c = μ₀ = ε₀ = 1`).
//!
//! The field spinor is `F = E − iB` arranged as `F·σ`; the derivative spinor
//! `∂ = −∂_t I + σ_x∂_x + σ_y∂_y + σ_z∂_z` acts on it by matrix product, and
//! Maxwell's equations read `∂F = J`. Derivatives are second-order central
//! differences, so only interior nodes are evaluated.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::ops::{Mul, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{sigma_dot_complex, Complex, FourVector, Mat2c, Vec3, SIGMA};
use crate::lorentz::{herm_from_fourvec, Rank2Spinor, Variance};
use crate::{Error, Result};

/// Minimum number of nodes on every axis.
pub const MIN_NODES: usize = 5;

const MAGIC: &str = "spinor-grid";
const VERSION: &str = "1";

/// Uniform grid over `(t, z, y, x)`, stored t-major then z, y, x.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridShape {
    /// `[nt, nz, ny, nx]`
    pub dims: [usize; 4],
    pub ht: f64,
    pub h: f64,
    /// Position of node `[0, 0, 0, 0]`.
    pub origin: FourVector,
}

/// Storage axis of each physical direction `t, x, y, z`.
const AXIS: [usize; 4] = [0, 3, 2, 1];

impl GridShape {
    pub fn new(dims: [usize; 4], ht: f64, h: f64, origin: FourVector) -> Result<Self> {
        if dims.iter().any(|&n| n < MIN_NODES) {
            return Err(Error::GridTooSmall {
                min: MIN_NODES,
                dims,
            });
        }
        if !(ht > 0.0 && h > 0.0 && ht.is_finite() && h.is_finite()) {
            return Err(Error::BadSpacing);
        }
        Ok(GridShape {
            dims,
            ht,
            h,
            origin,
        })
    }

    pub fn len(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `((it·nz + iz)·ny + iy)·nx + ix`.
    pub fn index(&self, node: [usize; 4]) -> usize {
        let [_, nz, ny, nx] = self.dims;
        ((node[0] * nz + node[1]) * ny + node[2]) * nx + node[3]
    }

    pub fn node(&self, mut index: usize) -> [usize; 4] {
        let mut out = [0; 4];
        for axis in (0..4).rev() {
            out[axis] = index % self.dims[axis];
            index /= self.dims[axis];
        }
        out
    }

    /// `(t, x, y, z)` of a node.
    pub fn position(&self, node: [usize; 4]) -> FourVector {
        FourVector::new(
            self.origin.t + node[0] as f64 * self.ht,
            self.origin.x + node[3] as f64 * self.h,
            self.origin.y + node[2] as f64 * self.h,
            self.origin.z + node[1] as f64 * self.h,
        )
    }

    /// True if the node is at least `margin` nodes from every face.
    pub fn is_interior(&self, node: [usize; 4], margin: usize) -> bool {
        (0..4).all(|a| node[a] >= margin && node[a] + margin < self.dims[a])
    }

    fn stride(&self, axis: usize) -> usize {
        self.dims[axis + 1..].iter().product()
    }

    fn spacing(&self, lambda: usize) -> f64 {
        if lambda == 0 {
            self.ht
        } else {
            self.h
        }
    }

    fn interior_nodes(&self, margin: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.is_interior(self.node(i), margin))
            .collect()
    }

    fn same_as(&self, other: &GridShape) -> bool {
        self == other
    }
}

/// Central difference `(f(i + s) − f(i − s)) / 2h` along physical direction
/// `lambda` (0 = t, 1 = x, 2 = y, 3 = z).
fn central<T, F>(shape: &GridShape, index: usize, lambda: usize, f: &F) -> T
where
    T: Sub<Output = T> + Mul<f64, Output = T>,
    F: Fn(usize) -> T,
{
    let s = shape.stride(AXIS[lambda]);
    (f(index + s) - f(index - s)) * (0.5 / shape.spacing(lambda))
}

/// Electric and magnetic field samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldGrid {
    pub shape: GridShape,
    pub e: Vec<Vec3>,
    pub b: Vec<Vec3>,
}

/// Charge and current density samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SourceGrid {
    pub shape: GridShape,
    pub rho: Vec<f64>,
    pub j: Vec<Vec3>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarGrid {
    pub shape: GridShape,
    pub values: Vec<f64>,
}

impl FieldGrid {
    pub fn from_fn(shape: GridShape, f: impl Fn(FourVector) -> (Vec3, Vec3)) -> Self {
        let (e, b) = (0..shape.len())
            .map(|i| f(shape.position(shape.node(i))))
            .unzip();
        FieldGrid { shape, e, b }
    }

    pub fn zeros(shape: GridShape) -> Self {
        FieldGrid::from_fn(shape, |_| ([0.0; 3], [0.0; 3]))
    }

    fn spinor(&self, i: usize) -> Mat2c {
        field_spinor(self.e[i], self.b[i]).m
    }
}

impl SourceGrid {
    pub fn from_fn(shape: GridShape, f: impl Fn(FourVector) -> (f64, Vec3)) -> Self {
        let (rho, j) = (0..shape.len())
            .map(|i| f(shape.position(shape.node(i))))
            .unzip();
        SourceGrid { shape, rho, j }
    }

    pub fn zeros(shape: GridShape) -> Self {
        SourceGrid::from_fn(shape, |_| (0.0, [0.0; 3]))
    }

    fn spinor(&self, i: usize) -> Mat2c {
        current_spinor(self.rho[i], self.j[i]).m
    }
}

impl ScalarGrid {
    pub fn from_fn(shape: GridShape, f: impl Fn(FourVector) -> f64) -> Self {
        let values = (0..shape.len())
            .map(|i| f(shape.position(shape.node(i))))
            .collect();
        ScalarGrid { shape, values }
    }
}

/// `F = E − iB` as `[[F_z, F_x − iF_y], [F_x + iF_y, −F_z]]`, indices
/// (lower dotted, upper dotted).
pub fn field_spinor(e: Vec3, b: Vec3) -> Rank2Spinor {
    let f: [Complex; 3] = std::array::from_fn(|k| Complex::new(e[k], -b[k]));
    Rank2Spinor::new(
        sigma_dot_complex(f),
        Variance::LowerDotted,
        Variance::UpperDotted,
    )
}

/// `[[ρ + j_z, j_x − ij_y], [j_x + ij_y, ρ − j_z]]`, both indices upper.
pub fn current_spinor(rho: f64, j: Vec3) -> Rank2Spinor {
    herm_from_fourvec(FourVector::from_parts(rho, j)).to_rank2()
}

fn check_node(shape: &GridShape, node: [usize; 4], margin: usize) -> Result<usize> {
    if !(0..4).all(|a| node[a] < shape.dims[a]) || !shape.is_interior(node, margin) {
        return Err(Error::BoundaryNode(node));
    }
    Ok(shape.index(node))
}

/// Central-difference partials `∂_t F, ∂_x F, ∂_y F, ∂_z F` of the field
/// spinor at an interior node.
pub fn field_partials(grid: &FieldGrid, node: [usize; 4]) -> Result<[Mat2c; 4]> {
    let i = check_node(&grid.shape, node, 1)?;
    Ok(partials_at(grid, i))
}

fn partials_at(grid: &FieldGrid, i: usize) -> [Mat2c; 4] {
    let f = |k: usize| grid.spinor(k);
    std::array::from_fn(|lambda| central(&grid.shape, i, lambda, &f))
}

fn apply_derivative(d: &[Mat2c; 4]) -> Mat2c {
    // ∂^0 = −∂_t
    -d[0] + SIGMA[1] * d[1] + SIGMA[2] * d[2] + SIGMA[3] * d[3]
}

/// `∂^{μᾱ}F_ᾱ^{ν̄}` at an interior node, indices (upper undotted, upper dotted).
pub fn derivative_spinor_apply(grid: &FieldGrid, node: [usize; 4]) -> Result<Rank2Spinor> {
    let d = field_partials(grid, node)?;
    Ok(Rank2Spinor::new(
        apply_derivative(&d),
        Variance::UpperUndotted,
        Variance::UpperDotted,
    ))
}

fn check_shapes(a: &GridShape, b: &GridShape) -> Result<()> {
    if a.same_as(b) {
        Ok(())
    } else {
        Err(Error::ShapeMismatch)
    }
}

/// `∂F − J` at one node.
fn spinor_residual_at(fields: &FieldGrid, sources: &SourceGrid, i: usize) -> Mat2c {
    apply_derivative(&partials_at(fields, i)) - sources.spinor(i)
}

/// The four classical Maxwell residuals at one node.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ClassicalNode {
    /// `div E − ρ`
    pub gauss_e: f64,
    /// `div B`
    pub gauss_b: f64,
    /// `curl E + ∂B/∂t`
    pub faraday: Vec3,
    /// `curl B − j − ∂E/∂t`
    pub ampere: Vec3,
}

impl ClassicalNode {
    /// The spinor residual predicted from the classical residuals:
    /// `(g − ih) I + (c + ia)·σ`.
    pub fn spinor_combination(&self) -> Mat2c {
        let w: [Complex; 3] =
            std::array::from_fn(|k| Complex::new(self.ampere[k], self.faraday[k]));
        Mat2c::IDENTITY * Complex::new(self.gauss_e, -self.gauss_b) + sigma_dot_complex(w)
    }
}

fn classical_at(fields: &FieldGrid, sources: &SourceGrid, i: usize) -> ClassicalNode {
    let sh = &fields.shape;
    let comp = |v: &Vec<Vec3>, k: usize, lambda: usize| {
        central(sh, i, lambda, &|n: usize| v[n][k])
    };
    let div = |v: &Vec<Vec3>| comp(v, 0, 1) + comp(v, 1, 2) + comp(v, 2, 3);
    let curl = |v: &Vec<Vec3>| -> Vec3 {
        [
            comp(v, 2, 2) - comp(v, 1, 3),
            comp(v, 0, 3) - comp(v, 2, 1),
            comp(v, 1, 1) - comp(v, 0, 2),
        ]
    };
    let ce = curl(&fields.e);
    let cb = curl(&fields.b);
    let j = sources.j[i];
    ClassicalNode {
        gauss_e: div(&fields.e) - sources.rho[i],
        gauss_b: div(&fields.b),
        faraday: std::array::from_fn(|k| ce[k] + comp(&fields.b, k, 0)),
        ampere: std::array::from_fn(|k| cb[k] - j[k] - comp(&fields.e, k, 0)),
    }
}

/// Maximum over interior nodes of the largest entry of `∂F − J`.
pub fn maxwell_residual(fields: &FieldGrid, sources: &SourceGrid) -> Result<f64> {
    check_shapes(&fields.shape, &sources.shape)?;
    Ok(fields
        .shape
        .interior_nodes(1)
        .par_iter()
        .map(|&i| spinor_residual_at(fields, sources, i).max_abs())
        .reduce(|| 0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ClassicalResiduals {
    pub gauss_e: f64,
    pub gauss_b: f64,
    pub faraday: f64,
    pub ampere: f64,
}

impl ClassicalResiduals {
    fn merge(self, o: ClassicalResiduals) -> ClassicalResiduals {
        ClassicalResiduals {
            gauss_e: self.gauss_e.max(o.gauss_e),
            gauss_b: self.gauss_b.max(o.gauss_b),
            faraday: self.faraday.max(o.faraday),
            ampere: self.ampere.max(o.ampere),
        }
    }

    pub fn max(&self) -> f64 {
        self.gauss_e
            .max(self.gauss_b)
            .max(self.faraday)
            .max(self.ampere)
    }
}

fn inf_norm(v: Vec3) -> f64 {
    v.iter().map(|x| x.abs()).fold(0.0, f64::max)
}

/// Maxima over interior nodes of the four classical residuals.
pub fn classical_maxwell_residual(
    fields: &FieldGrid,
    sources: &SourceGrid,
) -> Result<ClassicalResiduals> {
    check_shapes(&fields.shape, &sources.shape)?;
    Ok(fields
        .shape
        .interior_nodes(1)
        .par_iter()
        .map(|&i| {
            let c = classical_at(fields, sources, i);
            ClassicalResiduals {
                gauss_e: c.gauss_e.abs(),
                gauss_b: c.gauss_b.abs(),
                faraday: inf_norm(c.faraday),
                ampere: inf_norm(c.ampere),
            }
        })
        .reduce(ClassicalResiduals::default, ClassicalResiduals::merge))
}

/// Largest node-wise difference between the spinor residual and its
/// prediction from the classical residuals.
pub fn decomposition_mismatch(fields: &FieldGrid, sources: &SourceGrid) -> Result<f64> {
    check_shapes(&fields.shape, &sources.shape)?;
    Ok(fields
        .shape
        .interior_nodes(1)
        .par_iter()
        .map(|&i| {
            let s = spinor_residual_at(fields, sources, i);
            let c = classical_at(fields, sources, i).spinor_combination();
            s.max_abs_diff(&c)
        })
        .reduce(|| 0.0, f64::max))
}

/// Per-node values for inspection: spinor residual and classical residuals.
pub fn residual_at(
    fields: &FieldGrid,
    sources: &SourceGrid,
    node: [usize; 4],
) -> Result<(Mat2c, ClassicalNode)> {
    check_shapes(&fields.shape, &sources.shape)?;
    let i = check_node(&fields.shape, node, 1)?;
    Ok((
        spinor_residual_at(fields, sources, i),
        classical_at(fields, sources, i),
    ))
}

/// `∂^{αβ̄}J_{αβ̄} / (−2)` at a node, which equals `∂ρ/∂t + div j`.
fn continuity_spinor_at(sources: &SourceGrid, i: usize) -> f64 {
    let eps = crate::algebra::EPSILON;
    let low = |n: usize| eps * sources.spinor(n) * eps.transpose();
    let mut total = Complex::new(0.0, 0.0);
    for lambda in 0..4 {
        let d = central(&sources.shape, i, lambda, &low);
        let sign = if lambda == 0 { -1.0 } else { 1.0 };
        total += SIGMA[lambda].entrywise_dot(&d) * sign;
    }
    total.re / -2.0
}

fn continuity_direct_at(sources: &SourceGrid, i: usize) -> f64 {
    let sh = &sources.shape;
    let drho = central(sh, i, 0, &|n: usize| sources.rho[n]);
    let div: f64 = (0..3)
        .map(|k| central(sh, i, k + 1, &|n: usize| sources.j[n][k]))
        .sum();
    drho + div
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContinuityReport {
    /// Max `|∂ρ/∂t + div j|` computed through the spinor contraction.
    pub residual: f64,
    /// Max difference from the direct vector-calculus evaluation.
    pub direct_mismatch: f64,
}

pub fn continuity_residual(sources: &SourceGrid) -> ContinuityReport {
    let (residual, direct_mismatch) = sources
        .shape
        .interior_nodes(1)
        .par_iter()
        .map(|&i| {
            let s = continuity_spinor_at(sources, i);
            (s.abs(), (s - continuity_direct_at(sources, i)).abs())
        })
        .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)));
    ContinuityReport {
        residual,
        direct_mismatch,
    }
}

/// `−½ ∂^{αβ̄}∂_{αβ̄} f`, with each product of first derivatives evaluated
/// as two composed central differences. Needs two nodes of margin.
pub fn dalembertian_at(grid: &ScalarGrid, node: [usize; 4]) -> Result<f64> {
    let i = check_node(&grid.shape, node, 2)?;
    let eps = crate::algebra::EPSILON;
    let sh = &grid.shape;
    let f = |n: usize| grid.values[n];
    let mut total = Complex::new(0.0, 0.0);
    for lambda in 0..4 {
        for kappa in 0..4 {
            let sl = if lambda == 0 { -1.0 } else { 1.0 };
            let sk = if kappa == 0 { -1.0 } else { 1.0 };
            let lowered = eps * SIGMA[kappa] * eps.transpose();
            let coeff = SIGMA[lambda].entrywise_dot(&lowered) * (sl * sk);
            if coeff.norm() == 0.0 {
                continue;
            }
            let inner = |n: usize| central(sh, n, kappa, &f);
            total += coeff * central(sh, i, lambda, &inner);
        }
    }
    Ok(-0.5 * total.re)
}

/// `−δ_tδ_t f + δ_xδ_x f + δ_yδ_y f + δ_zδ_z f` with the same composed
/// stencil.
pub fn wave_operator_at(grid: &ScalarGrid, node: [usize; 4]) -> Result<f64> {
    let i = check_node(&grid.shape, node, 2)?;
    let sh = &grid.shape;
    let f = |n: usize| grid.values[n];
    Ok((0..4)
        .map(|lambda| {
            let inner = |n: usize| central(sh, n, lambda, &f);
            let second = central(sh, i, lambda, &inner);
            if lambda == 0 {
                -second
            } else {
                second
            }
        })
        .sum())
}

/// Parameters of the sampled vacuum plane wave `E = x̂ cos k(z−t)`,
/// `B = ŷ cos k(z−t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneWave {
    pub k: f64,
    pub h: f64,
    /// `h_t / h`. Must differ from 1: at 1 the t and z truncation errors
    /// cancel exactly for this wave.
    pub ht_ratio: f64,
    pub z_span: f64,
    pub t_span: f64,
}

impl PlaneWave {
    pub fn new(k: f64, h: f64) -> Self {
        PlaneWave {
            k,
            h,
            ht_ratio: 0.5,
            z_span: 2.0,
            t_span: 0.5,
        }
    }

    pub fn shape(&self) -> Result<GridShape> {
        let ht = self.h * self.ht_ratio;
        let nz = (self.z_span / self.h).round() as usize + 1;
        let nt = (self.t_span / ht).round() as usize + 1;
        GridShape::new(
            [nt.max(MIN_NODES), nz.max(MIN_NODES), MIN_NODES, MIN_NODES],
            ht,
            self.h,
            FourVector::default(),
        )
    }

    pub fn fields(&self) -> Result<FieldGrid> {
        let k = self.k;
        Ok(FieldGrid::from_fn(self.shape()?, |p| {
            let c = (k * (p.z - p.t)).cos();
            ([c, 0.0, 0.0], [0.0, c, 0.0])
        }))
    }
}

/// Static uniform field with no sources.
pub fn uniform_static(shape: GridShape, e: Vec3, b: Vec3) -> FieldGrid {
    FieldGrid::from_fn(shape, |_| (e, b))
}

/// Field of a point charge `q` at `center`, `E = q r̂ / 4πr²`, `B = 0`.
pub fn coulomb(shape: GridShape, q: f64, center: Vec3) -> FieldGrid {
    FieldGrid::from_fn(shape, |p| {
        let r = [p.x - center[0], p.y - center[1], p.z - center[2]];
        let d = crate::algebra::norm3(r);
        let k = q / (4.0 * PI * d * d * d);
        ([r[0] * k, r[1] * k, r[2] * k], [0.0; 3])
    })
}

/// Smooth fields and sources built from random low-order trigonometric
/// modes. They satisfy nothing in particular.
pub fn smooth_trial(shape: GridShape, seed: u64) -> (FieldGrid, SourceGrid) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // amplitude, wave 4-vector, phase for each of 10 scalar channels
    let modes: Vec<(f64, [f64; 4], f64)> = (0..10)
        .map(|_| {
            (
                rng.random_range(-1.0..1.0),
                std::array::from_fn(|_| rng.random_range(-2.0..2.0)),
                rng.random_range(0.0..2.0 * PI),
            )
        })
        .collect();
    let eval = |c: usize, p: FourVector| {
        let (a, w, ph) = modes[c];
        a * (w[0] * p.t + w[1] * p.x + w[2] * p.y + w[3] * p.z + ph).sin()
    };
    let fields = FieldGrid::from_fn(shape, |p| {
        (
            [eval(0, p), eval(1, p), eval(2, p)],
            [eval(3, p), eval(4, p), eval(5, p)],
        )
    });
    let sources = SourceGrid::from_fn(shape, |p| (eval(6, p), [eval(7, p), eval(8, p), eval(9, p)]));
    (fields, sources)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub h: f64,
    pub spinor_residual: f64,
    pub classical: ClassicalResiduals,
    /// `residual(previous h) / residual(h)`; absent on the first row.
    pub ratio: Option<f64>,
    /// `log2` of the ratio.
    pub order: Option<f64>,
}

/// Plane-wave residuals for each spacing in turn.
pub fn planewave_convergence(k: f64, hs: &[f64]) -> Result<Vec<ConvergenceRow>> {
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(hs.len());
    for &h in hs {
        let wave = PlaneWave::new(k, h);
        let fields = wave.fields()?;
        let sources = SourceGrid::zeros(fields.shape);
        let r = maxwell_residual(&fields, &sources)?;
        let classical = classical_maxwell_residual(&fields, &sources)?;
        let ratio = rows.last().map(|prev| prev.spinor_residual / r);
        rows.push(ConvergenceRow {
            h,
            spinor_residual: r,
            classical,
            ratio,
            order: ratio.map(f64::log2),
        });
    }
    Ok(rows)
}

// ---- text grid format ----

const FIELD_NAMES: [&str; 6] = ["ex", "ey", "ez", "bx", "by", "bz"];
const SOURCE_NAMES: [&str; 4] = ["rho", "jx", "jy", "jz"];

fn write_header(out: &mut String, shape: &GridShape, names: &[&str]) {
    let [nt, nz, ny, nx] = shape.dims;
    let o = shape.origin;
    writeln!(out, "{MAGIC} {VERSION}").unwrap();
    writeln!(out, "dims {nt} {nz} {ny} {nx}").unwrap();
    writeln!(out, "spacing {} {}", shape.ht, shape.h).unwrap();
    writeln!(out, "origin {} {} {} {}", o.t, o.x, o.y, o.z).unwrap();
    writeln!(out, "names {}", names.join(" ")).unwrap();
}

fn write_records<'a>(out: &mut String, rows: impl Iterator<Item = &'a [f64]>) {
    for row in rows {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
}

impl FieldGrid {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        write_header(&mut out, &self.shape, &FIELD_NAMES);
        let rows: Vec<[f64; 6]> = self
            .e
            .iter()
            .zip(&self.b)
            .map(|(e, b)| [e[0], e[1], e[2], b[0], b[1], b[2]])
            .collect();
        write_records(&mut out, rows.iter().map(|r| r.as_slice()));
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (shape, rows) = parse_grid(text, &FIELD_NAMES)?;
        let e = rows.iter().map(|r| [r[0], r[1], r[2]]).collect();
        let b = rows.iter().map(|r| [r[3], r[4], r[5]]).collect();
        Ok(FieldGrid { shape, e, b })
    }
}

impl SourceGrid {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        write_header(&mut out, &self.shape, &SOURCE_NAMES);
        let rows: Vec<[f64; 4]> = self
            .rho
            .iter()
            .zip(&self.j)
            .map(|(r, j)| [*r, j[0], j[1], j[2]])
            .collect();
        write_records(&mut out, rows.iter().map(|r| r.as_slice()));
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (shape, rows) = parse_grid(text, &SOURCE_NAMES)?;
        let rho = rows.iter().map(|r| r[0]).collect();
        let j = rows.iter().map(|r| [r[1], r[2], r[3]]).collect();
        Ok(SourceGrid { shape, rho, j })
    }
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_numbers<T: std::str::FromStr>(line: usize, tokens: &[&str], n: usize) -> Result<Vec<T>> {
    if tokens.len() != n {
        return Err(perr(line, format!("expected {n} values, found {}", tokens.len())));
    }
    tokens
        .iter()
        .map(|t| {
            t.parse::<T>()
                .map_err(|_| perr(line, format!("cannot parse `{t}` as a number")))
        })
        .collect()
}

/// Parses the header and the records; lines are numbered from 1, blank
/// lines and `#` comments are skipped.
fn parse_grid(text: &str, names: &[&str]) -> Result<(GridShape, Vec<Vec<f64>>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let mut next = |what: &str| {
        lines
            .next()
            .ok_or_else(|| perr(0, format!("unexpected end of file, expected {what}")))
    };

    let (ln, l) = next("header")?;
    let tok: Vec<&str> = l.split_whitespace().collect();
    if tok.first() != Some(&MAGIC) {
        return Err(perr(ln, format!("expected `{MAGIC} {VERSION}`")));
    }
    if tok.get(1) != Some(&VERSION) || tok.len() != 2 {
        return Err(perr(ln, "unsupported format version"));
    }

    let mut keyed = |key: &str| -> Result<(usize, Vec<&str>)> {
        let (ln, l) = next(key)?;
        let mut tok = l.split_whitespace();
        if tok.next() != Some(key) {
            return Err(perr(ln, format!("expected `{key}` line")));
        }
        Ok((ln, tok.collect()))
    };

    let (ln, t) = keyed("dims")?;
    let d: Vec<usize> = parse_numbers(ln, &t, 4)?;
    let dims = [d[0], d[1], d[2], d[3]];
    let (ln_sp, t) = keyed("spacing")?;
    let sp: Vec<f64> = parse_numbers(ln_sp, &t, 2)?;
    let (ln, t) = keyed("origin")?;
    let o: Vec<f64> = parse_numbers(ln, &t, 4)?;
    let (ln_names, t) = keyed("names")?;
    if t != names {
        return Err(perr(
            ln_names,
            format!("expected names `{}`", names.join(" ")),
        ));
    }
    let shape = GridShape::new(dims, sp[0], sp[1], FourVector::new(o[0], o[1], o[2], o[3]))?;

    let expected = shape.len();
    let mut rows = Vec::with_capacity(expected);
    for (ln, l) in lines {
        if rows.len() == expected {
            return Err(perr(ln, format!("extra record beyond the {expected} nodes")));
        }
        let tok: Vec<&str> = l.split_whitespace().collect();
        let row: Vec<f64> = parse_numbers(ln, &tok, names.len())?;
        if row.iter().any(|v| !v.is_finite()) {
            return Err(perr(ln, "non-finite value"));
        }
        rows.push(row);
    }
    if rows.len() != expected {
        return Err(Error::RecordCount {
            expected,
            got: rows.len(),
        });
    }
    Ok((shape, rows))
}

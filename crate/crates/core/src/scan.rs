//! Configuration sweeps and GTE-distance thresholds.
//!
//! A separation `kfr = 0` in any sweep selects the exact zero-distance limit
//! of the configuration's shape. Rows are independent and evaluated through
//! [`Exec`]; output order is the lexicographic grid order regardless.

use serde::{Deserialize, Serialize};

use crate::couplings::{couplings_from_config, couplings_zero_limit, Couplings};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::format::Table;
use crate::geometry::{self, TriangleConfig};
use crate::roots::{bisect, first_change};
use crate::specfun::Dimensionality;
use crate::witnesses::{best_witness_value, er_lower_bound, guhne_threshold};

/// Pre-scan window and step for [`find_rmin`].
pub const RMIN_SCAN: (f64, f64, f64) = (0.1, 4.0, 0.05);
/// Pre-scan resolution on `q/r` for the polar boundary.
pub const POLAR_SCAN_STEPS: usize = 200;
pub const POLAR_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub dim: Dimensionality,
    pub kfr: f64,
    /// Geometry parameter of the sweep (`x/r`, `y/r`); absent for distance sweeps.
    pub param: Option<f64>,
    pub er: f64,
    /// `3 (p_ij + p_jk)` for the best permutation.
    pub witness: f64,
    pub couplings: Couplings,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub param_name: Option<&'static str>,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn to_table(&self) -> Table {
        let mut cols = vec!["dim", "kfr"];
        cols.extend(self.param_name);
        cols.extend(["er_lower_bound", "witness", "p12", "p13", "p23"]);
        let mut t = Table::new(&cols);
        for r in &self.rows {
            let mut row = vec![dim_number(r.dim), r.kfr];
            row.extend(r.param);
            row.extend([r.er, r.witness, r.couplings.p12, r.couplings.p13, r.couplings.p23]);
            t.push(row);
        }
        t
    }
}

fn dim_number(dim: Dimensionality) -> f64 {
    match dim {
        Dimensionality::TwoD => 2.0,
        Dimensionality::ThreeD => 3.0,
    }
}

/// Couplings at separation `kfr` for a shape given at unit separation;
/// `kfr = 0` gives the zero-distance limit.
fn couplings_at(kfr: f64, shape: TriangleConfig) -> Result<Couplings> {
    if kfr == 0.0 {
        couplings_zero_limit(shape.d12, shape.d13, shape.d23)
    } else {
        couplings_from_config(&shape.scaled(kfr)?)
    }
}

fn check_kfr(kfr: f64) -> Result<()> {
    if !(kfr >= 0.0) || !kfr.is_finite() {
        return Err(Error::domain(format!("k_F r = {kfr} must be >= 0")));
    }
    Ok(())
}

fn make_row(dim: Dimensionality, kfr: f64, param: Option<f64>, c: Couplings) -> SweepRow {
    SweepRow { dim, kfr, param, er: er_lower_bound(&c), witness: best_witness_value(&c).1, couplings: c }
}

pub fn collinear_row(dim: Dimensionality, kfr: f64, x_over_r: f64) -> Result<SweepRow> {
    check_kfr(kfr)?;
    let c = couplings_at(kfr, geometry::collinear(1.0, x_over_r, dim)?)?;
    Ok(make_row(dim, kfr, Some(x_over_r), c))
}

pub fn isosceles_row(dim: Dimensionality, kfr: f64, y_over_r: f64) -> Result<SweepRow> {
    check_kfr(kfr)?;
    let c = couplings_at(kfr, geometry::isosceles(1.0, y_over_r, dim)?)?;
    Ok(make_row(dim, kfr, Some(y_over_r), c))
}

pub fn polar_er(dim: Dimensionality, kfr: f64, theta: f64, q_over_r: f64) -> Result<f64> {
    check_kfr(kfr)?;
    Ok(er_lower_bound(&couplings_at(kfr, geometry::polar(1.0, theta, q_over_r, dim)?)?))
}

fn grid_product(outer: &[f64], inner: &[f64]) -> Result<Vec<(f64, f64)>> {
    if outer.is_empty() || inner.is_empty() {
        return Err(Error::domain("sweep grids must be nonempty"));
    }
    Ok(outer.iter().flat_map(|a| inner.iter().map(move |b| (*a, *b))).collect())
}

pub fn sweep_collinear(dim: Dimensionality, kfr_values: &[f64], x_over_r_grid: &[f64]) -> Result<SweepTable> {
    sweep_collinear_with(Exec::default(), dim, kfr_values, x_over_r_grid)
}

pub fn sweep_collinear_with(
    exec: Exec,
    dim: Dimensionality,
    kfr_values: &[f64],
    x_over_r_grid: &[f64],
) -> Result<SweepTable> {
    let nodes = grid_product(kfr_values, x_over_r_grid)?;
    let rows = exec.try_map(&nodes, |&(kfr, x)| collinear_row(dim, kfr, x))?;
    Ok(SweepTable { param_name: Some("x_over_r"), rows })
}

pub fn sweep_isosceles(dim: Dimensionality, kfr_values: &[f64], y_over_r_grid: &[f64]) -> Result<SweepTable> {
    sweep_isosceles_with(Exec::default(), dim, kfr_values, y_over_r_grid)
}

pub fn sweep_isosceles_with(
    exec: Exec,
    dim: Dimensionality,
    kfr_values: &[f64],
    y_over_r_grid: &[f64],
) -> Result<SweepTable> {
    let nodes = grid_product(kfr_values, y_over_r_grid)?;
    let rows = exec.try_map(&nodes, |&(kfr, y)| isosceles_row(dim, kfr, y))?;
    Ok(SweepTable { param_name: Some("y_over_r"), rows })
}

/// Symmetric collinear family (fermion 2 at the midpoint) against `kfr`.
pub fn sweep_distance(dims: &[Dimensionality], kfr_grid: &[f64]) -> Result<SweepTable> {
    sweep_distance_with(Exec::default(), dims, kfr_grid)
}

pub fn sweep_distance_with(exec: Exec, dims: &[Dimensionality], kfr_grid: &[f64]) -> Result<SweepTable> {
    if dims.is_empty() || kfr_grid.is_empty() {
        return Err(Error::domain("sweep grids must be nonempty"));
    }
    let nodes: Vec<(Dimensionality, f64)> = dims.iter().flat_map(|d| kfr_grid.iter().map(move |k| (*d, *k))).collect();
    let rows = exec.try_map(&nodes, |&(dim, kfr)| {
        let mut row = collinear_row(dim, kfr, 0.5)?;
        row.param = None;
        Ok(row)
    })?;
    Ok(SweepTable { param_name: None, rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryRow {
    pub dim: Dimensionality,
    pub kfr: f64,
    pub theta: f64,
    /// Radius `q/r` where witnessed GTE first disappears along the ray;
    /// 1/2 if it never does, 0 if there is none at the midpoint.
    pub q_star: f64,
}

/// First radius along the ray at angle `theta` where `E_R > 0` stops holding.
pub fn polar_boundary(dim: Dimensionality, kfr: f64, theta: f64) -> Result<f64> {
    let gte = |q: f64| Ok(polar_er(dim, kfr, theta, q)? > 0.0);
    if !gte(0.0)? {
        return Ok(0.0);
    }
    match first_change(gte, 0.0, 0.5, 0.5 / POLAR_SCAN_STEPS as f64)? {
        None => Ok(0.5),
        Some((a, b)) => bisect(gte, a, b, POLAR_TOLERANCE),
    }
}

pub fn sweep_polar_boundary(dim: Dimensionality, kfr_values: &[f64], theta_grid: &[f64]) -> Result<Vec<BoundaryRow>> {
    sweep_polar_boundary_with(Exec::default(), dim, kfr_values, theta_grid)
}

pub fn sweep_polar_boundary_with(
    exec: Exec,
    dim: Dimensionality,
    kfr_values: &[f64],
    theta_grid: &[f64],
) -> Result<Vec<BoundaryRow>> {
    let nodes = grid_product(kfr_values, theta_grid)?;
    exec.try_map(&nodes, |&(kfr, theta)| Ok(BoundaryRow { dim, kfr, theta, q_star: polar_boundary(dim, kfr, theta)? }))
}

pub fn boundary_table(rows: &[BoundaryRow]) -> Table {
    let mut t = Table::new(&["dim", "kfr", "theta", "q_star"]);
    for r in rows {
        t.push(vec![dim_number(r.dim), r.kfr, r.theta, r.q_star]);
    }
    t
}

/// Witness condition `3 (p12 + p23) > 1 + √5` on the symmetric collinear family.
fn symmetric_gte(dim: Dimensionality, kfr: f64) -> Result<bool> {
    let c = couplings_at(kfr, geometry::collinear(1.0, 0.5, dim)?)?;
    Ok(3.0 * (c.p12 + c.p23) > guhne_threshold())
}

/// Lower bound on the GTE distance: the first separation at which the
/// witness stops detecting the symmetric collinear configuration.
pub fn find_rmin(dim: Dimensionality, tol: f64) -> Result<f64> {
    let (lo, hi, step) = RMIN_SCAN;
    let (a, b) = first_change(|r| symmetric_gte(dim, r), lo, hi, step)?.ok_or(Error::BracketError { lo, hi })?;
    bisect(|r| symmetric_gte(dim, r), a, b, tol)
}

/// Couplings of the symmetric collinear configuration at separation `kfr`.
pub fn symmetric_couplings(dim: Dimensionality, kfr: f64) -> Result<Couplings> {
    couplings_from_config(&geometry::collinear(kfr, 0.5, dim)?)
}

/// First `x/r` (from the midpoint toward fermion 1) where `E_R > 0` is lost
/// on the collinear family at fixed `kfr`.
pub fn collinear_threshold(dim: Dimensionality, kfr: f64, tol: f64) -> Result<f64> {
    // walk from the midpoint (x/r = 1/2) toward x/r = 0 via u = 1/2 - x/r
    let gte = |u: f64| Ok(collinear_row(dim, kfr, 0.5 - u)?.er > 0.0);
    let (a, b) = first_change(gte, 0.0, 0.5, 0.005)?.ok_or(Error::BracketError { lo: 0.0, hi: 0.5 })?;
    Ok(0.5 - bisect(gte, a, b, tol)?)
}

/// First `y/r` where `E_R > 0` is lost on the isosceles family at fixed `kfr`.
pub fn isosceles_threshold(dim: Dimensionality, kfr: f64, tol: f64) -> Result<f64> {
    let gte = |y: f64| Ok(isosceles_row(dim, kfr, y)?.er > 0.0);
    let (a, b) = first_change(gte, 0.0, 0.8, 0.005)?.ok_or(Error::BracketError { lo: 0.0, hi: 0.8 })?;
    bisect(gte, a, b, tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitThresholds {
    pub x_over_r: f64,
    pub y_over_r: f64,
}

/// Zero-distance thresholds `x/r = (1 - √(3(√5-2)))/2` and `y/r = √(3(√5-2))/2`.
pub fn analytic_limit_thresholds() -> LimitThresholds {
    let root = (3.0 * (5f64.sqrt() - 2.0)).sqrt();
    LimitThresholds { x_over_r: 0.5 * (1.0 - root), y_over_r: 0.5 * root }
}

/// `n` evenly spaced points on `[lo, hi]`, both ends included.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * (i as f64 / (n - 1) as f64)).collect(),
    }
}

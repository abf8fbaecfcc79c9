//! Three-fermion configurations stored as dimensionless pairwise distances.
//!
//! Every constructor places fermions 1 and 3 a distance `kfr` apart and
//! positions fermion 2 relative to them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::Dimensionality;

/// Relative slack for the triangle inequality.
pub const TRIANGLE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleConfig {
    pub d12: f64,
    pub d13: f64,
    pub d23: f64,
    pub dim: Dimensionality,
}

impl TriangleConfig {
    /// Validated triple `k_F r_ij`. At most one distance may vanish and the
    /// three must be realizable by points (degenerate triangles allowed).
    pub fn new(d12: f64, d13: f64, d23: f64, dim: Dimensionality) -> Result<Self> {
        let d = [d12, d13, d23];
        if d.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::domain(format!("distances must be finite and nonnegative, got ({d12}, {d13}, {d23})")));
        }
        if d.iter().filter(|x| **x == 0.0).count() > 1 {
            return Err(Error::domain("at most one pairwise distance may be zero"));
        }
        let longest = d.iter().cloned().fold(0.0, f64::max);
        let slack = TRIANGLE_TOLERANCE * longest.max(1.0);
        let sum: f64 = d.iter().sum();
        if longest > sum - longest + slack {
            return Err(Error::domain(format!("distances ({d12}, {d13}, {d23}) violate the triangle inequality")));
        }
        Ok(TriangleConfig { d12, d13, d23, dim })
    }

    pub fn distances(&self) -> [f64; 3] {
        [self.d12, self.d13, self.d23]
    }

    /// Multiplies every distance by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0) {
            return Err(Error::domain(format!("scale factor {factor} must be positive")));
        }
        TriangleConfig::new(self.d12 * factor, self.d13 * factor, self.d23 * factor, self.dim)
    }

    /// Relabels particles: new particle `a` is old particle `perm[a]`.
    pub fn relabeled(&self, perm: [usize; 3]) -> Self {
        let old = |a: usize, b: usize| pair_distance(self, perm[a], perm[b]);
        TriangleConfig { d12: old(0, 1), d13: old(0, 2), d23: old(1, 2), dim: self.dim }
    }

    pub fn max_distance(&self) -> f64 {
        self.d12.max(self.d13).max(self.d23)
    }
}

fn pair_distance(cfg: &TriangleConfig, a: usize, b: usize) -> f64 {
    match (a.min(b), a.max(b)) {
        (0, 1) => cfg.d12,
        (0, 2) => cfg.d13,
        (1, 2) => cfg.d23,
        _ => 0.0,
    }
}

fn check_kfr(kfr: f64) -> Result<()> {
    if !(kfr > 0.0) || !kfr.is_finite() {
        return Err(Error::domain(format!("k_F r = {kfr} must be positive")));
    }
    Ok(())
}

/// Fermion 2 on the segment 1-3, a fraction `x_over_r` of the way from 1.
pub fn collinear(kfr: f64, x_over_r: f64, dim: Dimensionality) -> Result<TriangleConfig> {
    check_kfr(kfr)?;
    if !(0.0..=1.0).contains(&x_over_r) {
        return Err(Error::domain(format!("x/r = {x_over_r} outside [0, 1]")));
    }
    TriangleConfig::new(kfr * x_over_r, kfr, kfr * (1.0 - x_over_r), dim)
}

/// Fermion 2 on the perpendicular bisector of 1-3 at height `y_over_r`.
pub fn isosceles(kfr: f64, y_over_r: f64, dim: Dimensionality) -> Result<TriangleConfig> {
    check_kfr(kfr)?;
    if !(y_over_r >= 0.0) || !y_over_r.is_finite() {
        return Err(Error::domain(format!("y/r = {y_over_r} must be >= 0")));
    }
    let leg = kfr * (0.25 + y_over_r * y_over_r).sqrt();
    TriangleConfig::new(leg, kfr, leg, dim)
}

/// Fermion 2 at polar coordinates `(q_over_r, theta)` about the midpoint of 1-3,
/// with 1 at `(-1/2, 0)` and 3 at `(1/2, 0)` in units of `r`.
pub fn polar(kfr: f64, theta: f64, q_over_r: f64, dim: Dimensionality) -> Result<TriangleConfig> {
    check_kfr(kfr)?;
    if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&theta) {
        return Err(Error::domain(format!("theta = {theta} outside [0, pi/2]")));
    }
    if !(0.0..=0.5).contains(&q_over_r) {
        return Err(Error::domain(format!("q/r = {q_over_r} outside [0, 1/2]")));
    }
    Ok(polar_unchecked(kfr, theta, q_over_r, dim))
}

/// [`polar`] without the quarter-disk range restriction on `theta`.
pub(crate) fn polar_unchecked(kfr: f64, theta: f64, q_over_r: f64, dim: Dimensionality) -> TriangleConfig {
    let (s, c) = theta.sin_cos();
    let (px, py) = (q_over_r * c, q_over_r * s);
    TriangleConfig { d12: kfr * (px + 0.5).hypot(py), d13: kfr, d23: kfr * (px - 0.5).hypot(py), dim }
}

pub fn equilateral(kfr: f64, dim: Dimensionality) -> Result<TriangleConfig> {
    check_kfr(kfr)?;
    TriangleConfig::new(kfr, kfr, kfr, dim)
}

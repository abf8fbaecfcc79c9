//! Singlet weights `p_ij` of the three-spin state as functions of geometry.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::TriangleConfig;
use crate::specfun::f_factor;

/// All distances below this switch to the analytic zero-distance limit.
pub const LIMIT_MODE_THRESHOLD: f64 = 1e-3;
/// Smallest admissible `|D|` for the direct formula.
pub const DENOMINATOR_FLOOR: f64 = 1e-12;
/// Slack on the `|p| <= 1`, `|p_ij| <= 1` bounds.
pub const BOUND_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Couplings {
    pub p12: f64,
    pub p13: f64,
    pub p23: f64,
    /// `p12 + p13 + p23`
    pub p: f64,
}

impl Couplings {
    pub fn new(p12: f64, p13: f64, p23: f64) -> Self {
        Couplings { p12, p13, p23, p: p12 + p13 + p23 }
    }

    pub fn zero() -> Self {
        Couplings::new(0.0, 0.0, 0.0)
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.p12, self.p13, self.p23]
    }

    /// Weight of the singlet on particles `a` and `b` (0-based, `a != b`).
    pub fn pair(&self, a: usize, b: usize) -> f64 {
        match (a.min(b), a.max(b)) {
            (0, 1) => self.p12,
            (0, 2) => self.p13,
            (1, 2) => self.p23,
            _ => panic!("invalid pair ({a}, {b})"),
        }
    }

    /// Relabels particles: new particle `a` is old particle `perm[a]`.
    pub fn relabeled(&self, perm: [usize; 3]) -> Self {
        Couplings::new(self.pair(perm[0], perm[1]), self.pair(perm[0], perm[2]), self.pair(perm[1], perm[2]))
    }

    pub fn validate(&self) -> Vec<BoundViolation> {
        validate(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundViolation {
    P12,
    P13,
    P23,
    Total,
}

impl std::fmt::Display for BoundViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            BoundViolation::P12 => "p12",
            BoundViolation::P13 => "p13",
            BoundViolation::P23 => "p23",
            BoundViolation::Total => "p",
        };
        write!(f, "|{name}| ≤ 1 violated")
    }
}

/// Checks `|p_ij| <= 1` for every pair and `|p| <= 1`, each with
/// [`BOUND_TOLERANCE`] slack. Empty when all bounds hold.
pub fn validate(c: &Couplings) -> Vec<BoundViolation> {
    validate_with_slack(c, BOUND_TOLERANCE)
}

pub(crate) fn validate_with_slack(c: &Couplings, slack: f64) -> Vec<BoundViolation> {
    let limit = 1.0 + slack;
    let mut out = Vec::new();
    for (value, tag) in [
        (c.p12, BoundViolation::P12),
        (c.p13, BoundViolation::P13),
        (c.p23, BoundViolation::P23),
        (c.p, BoundViolation::Total),
    ] {
        if !(value.abs() <= limit) {
            out.push(tag);
        }
    }
    out
}

/// `p_ij` of the configuration. When every distance is below
/// [`LIMIT_MODE_THRESHOLD`] the exact zero-distance limit of the shape is
/// returned instead of the cancellation-prone direct formula.
pub fn couplings_from_config(cfg: &TriangleConfig) -> Result<Couplings> {
    if cfg.max_distance() < LIMIT_MODE_THRESHOLD {
        return couplings_zero_limit(cfg.d12, cfg.d13, cfg.d23);
    }
    couplings_direct(cfg)
}

/// Direct evaluation with the common denominator
/// `D = -2 + f12^2 + f13^2 + f23^2 - f12 f13 f23`, no limit fallback.
pub fn couplings_direct(cfg: &TriangleConfig) -> Result<Couplings> {
    let f12 = f_factor(cfg.dim, cfg.d12)?;
    let f13 = f_factor(cfg.dim, cfg.d13)?;
    let f23 = f_factor(cfg.dim, cfg.d23)?;
    let triple = f12 * f13 * f23;
    let denominator = -2.0 + f12 * f12 + f13 * f13 + f23 * f23 - triple;
    if !(denominator.abs() > DENOMINATOR_FLOOR) {
        return Err(Error::DegenerateDenominator(denominator));
    }
    Ok(Couplings::new(
        (triple - f12 * f12) / denominator,
        (triple - f13 * f13) / denominator,
        (triple - f23 * f23) / denominator,
    ))
}

/// Limit of the couplings as the configuration shrinks to a point with fixed
/// shape: `p_ij = (d_ik^2 + d_jk^2 - d_ij^2) / (d12^2 + d13^2 + d23^2)`.
///
/// Only ratios matter, and the result is the same for both gases. One zero
/// distance is allowed (two coincident fermions give `p_ij = 1`). The
/// equilateral shape is rejected since the direct formula is doubly singular
/// there.
pub fn couplings_zero_limit(d12: f64, d13: f64, d23: f64) -> Result<Couplings> {
    let d = [d12, d13, d23];
    if d.iter().any(|x| !x.is_finite() || *x < 0.0) {
        return Err(Error::domain(format!(
            "limit distances must be finite and nonnegative, got ({d12}, {d13}, {d23})"
        )));
    }
    if d.iter().filter(|x| **x == 0.0).count() > 1 {
        return Err(Error::domain("limit shape needs at least two positive distances"));
    }
    let longest = d.iter().cloned().fold(0.0, f64::max);
    let shortest = d.iter().cloned().fold(f64::INFINITY, f64::min);
    if longest > d.iter().sum::<f64>() - longest + 1e-12 * longest {
        return Err(Error::domain(format!("limit distances ({d12}, {d13}, {d23}) violate the triangle inequality")));
    }
    if longest - shortest <= 1e-12 * longest {
        return Err(Error::DegenerateDenominator(0.0));
    }
    let (s12, s13, s23) = (d12 * d12, d13 * d13, d23 * d23);
    let total = s12 + s13 + s23;
    Ok(Couplings::new((s13 + s23 - s12) / total, (s12 + s23 - s13) / total, (s12 + s13 - s23) / total))
}

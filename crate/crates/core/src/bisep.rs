//! Biseparable sections of the three-qubit Werner family in the `(r1, r2)`
//! plane and the upper bound on the GTE distance they imply.
//!
//! At fixed `(r+, r3)` a state is biseparable across `1|23` when
//!
//! ```text
//! -1 < r1 - 2 r+ < 0
//! 3 r2^2 + 3 r3^2 + (1 - 3 r+)^2 <= (r1 - 2 r+)^2
//! ```
//!
//! The `12|3` and `13|2` regions are rotations of this one by `±2π/3`. Every
//! point of the convex hull of the three regions is biseparable, so a state
//! inside the hull has no genuine tripartite entanglement.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::couplings::couplings_from_config;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::format::format_csv_number;
use crate::geometry;
use crate::roots::bisect;
use crate::specfun::Dimensionality;
use crate::tristate::werner_coords;

pub const DEFAULT_SAMPLES: usize = 2048;
pub const MIN_SAMPLES: usize = 64;
pub const MEMBERSHIP_TOLERANCE: f64 = 1e-9;
pub const CONVEXITY_TOLERANCE: f64 = 1e-12;
pub const PRESCAN_POINTS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectionSpec {
    pub r_plus: f64,
    pub r3: f64,
}

impl SectionSpec {
    /// Section at `(r_plus, r3)`; the biseparable regions are nonempty only
    /// when `3 r3^2 + (1 - 3 r_plus)^2 < 1`.
    pub fn new(r_plus: f64, r3: f64) -> Result<Self> {
        let sec = SectionSpec { r_plus, r3 };
        if !(sec.offset() < 1.0) || !r_plus.is_finite() || !r3.is_finite() {
            return Err(Error::EmptyRegion(r_plus));
        }
        Ok(sec)
    }

    /// `3 r3^2 + (1 - 3 r+)^2`
    fn offset(&self) -> f64 {
        3.0 * self.r3 * self.r3 + (1.0 - 3.0 * self.r_plus).powi(2)
    }

    /// Half-height of the `1|23` region.
    pub fn r2_extent(&self) -> f64 {
        ((1.0 - self.offset()) / 3.0).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Partition {
    #[serde(rename = "1|23")]
    A1_23,
    #[serde(rename = "12|3")]
    A12_3,
    #[serde(rename = "13|2")]
    A13_2,
}

impl Partition {
    pub const ALL: [Partition; 3] = [Partition::A1_23, Partition::A12_3, Partition::A13_2];

    /// Rotation taking the `1|23` region onto this partition's region.
    /// A singlet on pair 12 sits at angle `-π/3`, on pair 13 at `+π/3`.
    pub fn angle(self) -> f64 {
        match self {
            Partition::A1_23 => 0.0,
            Partition::A12_3 => 2.0 * PI / 3.0,
            Partition::A13_2 => -2.0 * PI / 3.0,
        }
    }
}

fn rotate((x, y): (f64, f64), angle: f64) -> (f64, f64) {
    let (s, c) = angle.sin_cos();
    (c * x - s * y, s * x + c * y)
}

/// Both inequalities of the `1|23` region, strictly as stated.
pub fn in_region_1_23(sec: &SectionSpec, r1: f64, r2: f64) -> bool {
    let shift = r1 - 2.0 * sec.r_plus;
    -1.0 < shift && shift < 0.0 && 3.0 * r2 * r2 + sec.offset() <= shift * shift
}

/// [`in_region_1_23`] with every inequality relaxed by `tol`.
pub fn in_region_1_23_tol(sec: &SectionSpec, r1: f64, r2: f64, tol: f64) -> bool {
    let shift = r1 - 2.0 * sec.r_plus;
    -1.0 - tol <= shift && shift <= tol && 3.0 * r2 * r2 + sec.offset() <= shift * shift + tol
}

pub fn in_region(sec: &SectionSpec, partition: Partition, r1: f64, r2: f64, tol: f64) -> bool {
    let (x, y) = rotate((r1, r2), -partition.angle());
    in_region_1_23_tol(sec, x, y, tol)
}

/// Closed boundary of a partition's region in boundary order: `n_samples`
/// points on the curve `r1 = 2 r+ - sqrt(3 r2^2 + offset)`, uniform in `r2`
/// over `[-r2_max, r2_max]`. The last-to-first edge is the flat segment
/// `r1 = 2 r+ - 1`.
pub fn region_boundary(sec: &SectionSpec, partition: Partition, n_samples: usize) -> Result<Vec<(f64, f64)>> {
    let sec = SectionSpec::new(sec.r_plus, sec.r3)?;
    if n_samples < MIN_SAMPLES {
        return Err(Error::domain(format!("n_samples = {n_samples} below {MIN_SAMPLES}")));
    }
    let extent = sec.r2_extent();
    let offset = sec.offset();
    let angle = partition.angle();
    Ok((0..n_samples)
        .map(|i| {
            let r2 = -extent + 2.0 * extent * (i as f64 / (n_samples - 1) as f64);
            let r1 = 2.0 * sec.r_plus - (3.0 * r2 * r2 + offset).sqrt();
            if angle == 0.0 {
                (r1, r2)
            } else {
                rotate((r1, r2), angle)
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexRegion {
    vertices: Vec<(f64, f64)>,
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

impl ConvexRegion {
    /// Counterclockwise convex polygon with at least three vertices.
    pub fn new(vertices: Vec<(f64, f64)>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::domain(format!("polygon needs 3 vertices, got {n}")));
        }
        for i in 0..n {
            let (a, b, c) = (vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
            if cross(a, b, c) < -CONVEXITY_TOLERANCE {
                return Err(Error::domain(format!("polygon not convex at vertex {}", (i + 1) % n)));
            }
        }
        Ok(ConvexRegion { vertices })
    }

    pub fn vertices(&self) -> &[(f64, f64)] {
        &self.vertices
    }

    pub fn contains(&self, r1: f64, r2: f64, tol: f64) -> bool {
        point_in_hull(self, r1, r2, tol)
    }

    /// CSV with header `r1,r2`, vertices counterclockwise.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r1,r2\n");
        for (x, y) in &self.vertices {
            out.push_str(&format_csv_number(*x));
            out.push(',');
            out.push_str(&format_csv_number(*y));
            out.push('\n');
        }
        out
    }
}

/// Andrew's monotone chain; counterclockwise, collinear points dropped.
pub fn convex_hull(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = points.to_vec();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Convex hull of the three partitions' boundary samples.
pub fn bisep_hull(sec: &SectionSpec, n_samples: usize) -> Result<ConvexRegion> {
    let mut points = Vec::with_capacity(3 * n_samples);
    for partition in Partition::ALL {
        points.extend(region_boundary(sec, partition, n_samples)?);
    }
    ConvexRegion::new(convex_hull(&points))
}

/// Inside or within `tol` of the boundary, by signed distance to every edge.
pub fn point_in_hull(region: &ConvexRegion, r1: f64, r2: f64, tol: f64) -> bool {
    let v = &region.vertices;
    let n = v.len();
    (0..n).all(|i| {
        let (a, b) = (v[i], v[(i + 1) % n]);
        let len = (b.0 - a.0).hypot(b.1 - a.1);
        len == 0.0 || cross(a, b, (r1, r2)) / len >= -tol
    })
}

/// Werner point of the symmetric collinear configuration at separation `kfr`
/// and whether it lies inside the biseparable hull of its own section.
pub fn symmetric_point_inside(dim: Dimensionality, kfr: f64, n_samples: usize) -> Result<bool> {
    let cfg = geometry::collinear(kfr, 0.5, dim)?;
    let w = werner_coords(&couplings_from_config(&cfg)?);
    let hull = bisep_hull(&SectionSpec::new(w.r_plus, 0.0)?, n_samples)?;
    Ok(point_in_hull(&hull, w.r1, 3f64.sqrt() * w.r1, MEMBERSHIP_TOLERANCE))
}

/// Smallest separation of the symmetric collinear configuration whose
/// Werner point enters the biseparable hull; an upper bound on the GTE
/// distance. The section `r+` is recomputed at every step.
///
/// The solve is repeated with `2 n_samples` boundary samples; a shift larger
/// than `10 tol` is reported as a convergence failure.
pub fn r_max_solver(dim: Dimensionality, bracket: (f64, f64), tol: f64, n_samples: usize) -> Result<f64> {
    let r = r_max_single(dim, bracket, tol, n_samples)?;
    let refined = r_max_single(dim, bracket, tol, 2 * n_samples)?;
    if (refined - r).abs() > 10.0 * tol {
        return Err(Error::ConvergenceFailure { what: "hull sampling", iterations: 2 * n_samples });
    }
    Ok(r)
}

/// One bracketed solve of [`r_max_solver`] at a fixed sample count.
pub fn r_max_single(dim: Dimensionality, bracket: (f64, f64), tol: f64, n_samples: usize) -> Result<f64> {
    let (lo, hi) = bracket;
    if !(hi > lo) || !(lo > 0.0) {
        return Err(Error::domain(format!("bad bracket [{lo}, {hi}]")));
    }
    let grid: Vec<f64> = (0..PRESCAN_POINTS).map(|i| lo + (hi - lo) * i as f64 / (PRESCAN_POINTS - 1) as f64).collect();
    let inside = Exec::default().try_map(&grid, |&r| symmetric_point_inside(dim, r, n_samples))?;
    let changes: Vec<usize> = (1..inside.len()).filter(|&i| inside[i] != inside[i - 1]).collect();
    if changes.len() != 1 {
        return Err(Error::BracketError { lo, hi });
    }
    let i = changes[0];
    bisect(|r| symmetric_point_inside(dim, r, n_samples), grid[i - 1], grid[i], tol)
}

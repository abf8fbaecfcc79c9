//! Bessel-derived exchange kernels of the ideal Fermi gas.
//!
//! The kernel `f(x)` with `x = k_F r` is `2 J1(x) / x` in two dimensions and
//! `3 j1(x) / x` in three. Both tend to 1 at `x = 0` and decay with
//! oscillation for large `x`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper end of the validated argument range for `J1`.
pub const MAX_ARGUMENT: f64 = 50.0;

/// Ascending series is used up to here; Miller recurrence beyond.
const SERIES_CUTOFF_J1: f64 = 8.0;
const SERIES_TERMS_J1: usize = 30;

/// Below this the spherical kernel is evaluated from its Taylor series.
const SERIES_CUTOFF_SPHERICAL: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dimensionality {
    #[serde(rename = "2d")]
    TwoD,
    #[serde(rename = "3d")]
    ThreeD,
}

impl Dimensionality {
    pub const ALL: [Dimensionality; 2] = [Dimensionality::TwoD, Dimensionality::ThreeD];

    pub fn label(self) -> &'static str {
        match self {
            Dimensionality::TwoD => "2d",
            Dimensionality::ThreeD => "3d",
        }
    }

    /// Coefficient `c` in the small-argument expansion `f(x) = 1 - x^2 / c`.
    pub fn small_x_denominator(self) -> f64 {
        match self {
            Dimensionality::TwoD => 8.0,
            Dimensionality::ThreeD => 10.0,
        }
    }
}

impl std::fmt::Display for Dimensionality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for Dimensionality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "2d" | "2" => Ok(Dimensionality::TwoD),
            "3d" | "3" => Ok(Dimensionality::ThreeD),
            other => Err(Error::domain(format!("unknown dimensionality `{other}`"))),
        }
    }
}

fn check_argument(x: f64, max: f64, name: &str) -> Result<()> {
    if !(0.0..=max).contains(&x) {
        return Err(Error::domain(format!("{name} argument {x} outside [0, {max}]")));
    }
    Ok(())
}

/// Neumaier-compensated sum of a sequence of terms.
fn compensated_sum(terms: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0_f64;
    let mut carry = 0.0_f64;
    for t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            carry += (sum - s) + t;
        } else {
            carry += (t - s) + sum;
        }
        sum = s;
    }
    sum + carry
}

/// `sum_m (-x^2/4)^m / (m! (m+1)!)`, i.e. `2 J1(x) / x`.
fn j1_ratio_series(x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    compensated_sum((0..SERIES_TERMS_J1).map(|m| {
        let t = term;
        term *= q / ((m + 1) as f64 * (m + 2) as f64);
        t
    }))
}

/// `J1(x)` by Miller's backward recurrence normalized with
/// `J0 + 2 (J2 + J4 + ...) = 1`. Accurate to a few ulps of 1 for `x > 0`.
fn j1_miller(x: f64) -> f64 {
    let start = 2 * ((x + 30.0 + 12.0 * x.cbrt()) as usize / 2);
    let mut upper = 0.0_f64; // J_{k+1}
    let mut current = 1e-30_f64; // J_k
    let mut norm = 0.0_f64;
    let mut j1 = 0.0_f64;
    for k in (1..=start).rev() {
        let lower = 2.0 * k as f64 / x * current - upper;
        upper = current;
        current = lower;
        let order = k - 1;
        if order == 1 {
            j1 = current;
        }
        if order > 0 && order % 2 == 0 {
            norm += 2.0 * current;
        }
        if current.abs() > 1e250 {
            current *= 1e-250;
            upper *= 1e-250;
            norm *= 1e-250;
            j1 *= 1e-250;
        }
    }
    norm += current;
    j1 / norm
}

/// Bessel function of the first kind of order one on `[0, 50]`.
pub fn bessel_j1(x: f64) -> Result<f64> {
    check_argument(x, MAX_ARGUMENT, "J1")?;
    Ok(if x <= SERIES_CUTOFF_J1 { 0.5 * x * j1_ratio_series(x) } else { j1_miller(x) })
}

/// `x * sum_k (-x^2/2)^k / (k! (2k+3)!!)`, divided by `x`.
fn spherical_j1_ratio_series(x: f64) -> f64 {
    let q = -0.5 * x * x;
    let mut term = 1.0 / 3.0;
    compensated_sum((0..16).map(|k| {
        let t = term;
        term *= q / ((k + 1) as f64 * (2 * k + 5) as f64);
        t
    }))
}

/// Spherical Bessel function `j1(x) = sin x / x^2 - cos x / x`.
pub fn spherical_j1(x: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("j1 argument {x} must be finite and >= 0")));
    }
    Ok(if x < SERIES_CUTOFF_SPHERICAL {
        x * spherical_j1_ratio_series(x)
    } else {
        let (s, c) = x.sin_cos();
        (s / x - c) / x
    })
}

/// Exchange kernel `f(x)`: `2 J1(x)/x` (2D) or `3 j1(x)/x` (3D), with `f(0) = 1`.
///
/// The 2D kernel inherits the `[0, 50]` range of [`bessel_j1`].
pub fn f_factor(dim: Dimensionality, x: f64) -> Result<f64> {
    match dim {
        Dimensionality::TwoD => {
            check_argument(x, MAX_ARGUMENT, "f(2D)")?;
            Ok(if x <= SERIES_CUTOFF_J1 { j1_ratio_series(x) } else { 2.0 * j1_miller(x) / x })
        }
        Dimensionality::ThreeD => {
            if !(x >= 0.0) || !x.is_finite() {
                return Err(Error::domain(format!("f(3D) argument {x} must be finite and >= 0")));
            }
            Ok(if x < SERIES_CUTOFF_SPHERICAL {
                3.0 * spherical_j1_ratio_series(x)
            } else {
                3.0 * spherical_j1(x)? / x
            })
        }
    }
}

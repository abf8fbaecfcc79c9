//! Genuine tripartite entanglement (GTE) among the spins of three localized
//! fermions in the non-interacting degenerate Fermi gas.
//!
//! The pipeline runs from geometry to thresholds:
//!
//! - [`geometry`] builds dimensionless pairwise distances `k_F r_ij`,
//! - [`couplings`] turns them into the singlet weights `p_ij`,
//! - [`tristate`] assembles the 8x8 three-spin state and its Werner coordinates,
//! - [`witnesses`] evaluates the GHZ/W and energy-type witnesses and the
//!   generalized-robustness lower bound,
//! - [`bisep`] builds the biseparable polygon in the `(r1, r2)` section,
//! - [`scan`] sweeps configurations and solves for the GTE distance.
//!
//! All lengths are dimensionless (`k_F = 1`).

// `!(x > y)` is used on purpose so that NaN inputs fail validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bisep;
pub mod couplings;
pub mod error;
pub mod exec;
pub mod format;
pub mod geometry;
pub mod linalg;
pub mod roots;
pub mod scan;
pub mod specfun;
pub mod tristate;
pub mod witnesses;

pub use couplings::{couplings_from_config, couplings_zero_limit, Couplings};
pub use error::{Error, Result};
pub use exec::Exec;
pub use geometry::TriangleConfig;
pub use specfun::Dimensionality;
pub use tristate::{DensityMatrix, WernerCoords};

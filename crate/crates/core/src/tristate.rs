//! The three-spin reduced density matrix and its Werner-state coordinates.
//!
//! `rho3 = (1 - p) I/8 + Σ_ij p_ij |Ψ⁻_ij><Ψ⁻_ij| ⊗ I/2`, the singlet on pair
//! `ij` and the normalized identity on the remaining spin.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::couplings::{validate_with_slack, Couplings};
use crate::error::{Error, Result};
use crate::format::format_general;
use crate::linalg::{qubit_bit, Matrix8, C64, DIM};

/// Couplings may exceed the physical bounds by this much before `rho3` refuses them.
pub const HARD_BOUND_SLACK: f64 = 1e-6;
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;
pub const TRACE_TOLERANCE: f64 = 1e-12;
/// Minimum eigenvalue accepted as positive semidefinite.
pub const PSD_TOLERANCE: f64 = -1e-10;
/// Hermiticity slack for inputs to [`expectation`].
pub const OBSERVABLE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(Matrix8);

impl DensityMatrix {
    /// Wraps a matrix after checking Hermiticity and unit trace.
    pub fn new(m: Matrix8) -> Result<Self> {
        let dev = m.hermiticity_deviation();
        if dev > HERMITIAN_TOLERANCE {
            return Err(Error::NonHermitianInput(dev));
        }
        let tr = m.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > TRACE_TOLERANCE {
            return Err(Error::domain(format!("trace {tr} differs from 1")));
        }
        Ok(DensityMatrix(m))
    }

    pub fn matrix(&self) -> &Matrix8 {
        &self.0
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        min_eigenvalue(self)
    }

    /// Row-major text dump, one row per line, entries `re+imi` with 17
    /// significant digits separated by single spaces.
    pub fn to_dump(&self) -> String {
        dump_matrix(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WernerCoords {
    pub r_plus: f64,
    pub r0: f64,
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
}

/// `|Ψ⁻><Ψ⁻|` on qubits `a`, `b` (0-based) tensored with `I/2` on the third.
pub fn singlet_projector(a: usize, b: usize) -> Matrix8 {
    let spectator = 3 - a - b;
    let amp = |idx: usize| match (qubit_bit(idx, a), qubit_bit(idx, b)) {
        (0, 1) => std::f64::consts::FRAC_1_SQRT_2,
        (1, 0) => -std::f64::consts::FRAC_1_SQRT_2,
        _ => 0.0,
    };
    Matrix8::from_fn(|r, c| {
        if qubit_bit(r, spectator) != qubit_bit(c, spectator) {
            return C64::new(0.0, 0.0);
        }
        C64::new(0.5 * amp(r) * amp(c), 0.0)
    })
}

/// The state for physical couplings. Couplings beyond the `|p_ij| <= 1`,
/// `|p| <= 1` bounds by more than [`HARD_BOUND_SLACK`] are refused.
pub fn rho3(c: &Couplings) -> Result<DensityMatrix> {
    let violations = validate_with_slack(c, HARD_BOUND_SLACK);
    if !violations.is_empty() {
        let names: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(Error::InvalidCouplings(names.join(", ")));
    }
    Ok(DensityMatrix(rho3_formal(c)))
}

/// The same affine matrix for arbitrary couplings; Hermitian with unit trace
/// but not necessarily positive.
pub fn rho3_formal(c: &Couplings) -> Matrix8 {
    Matrix8::identity().scale((1.0 - c.p) / DIM as f64)
        + singlet_projector(0, 1).scale(c.p12)
        + singlet_projector(0, 2).scale(c.p13)
        + singlet_projector(1, 2).scale(c.p23)
}

pub fn werner_coords(c: &Couplings) -> WernerCoords {
    WernerCoords {
        r_plus: (1.0 - c.p) / 2.0,
        r0: (1.0 + c.p) / 2.0,
        r1: (c.p12 + c.p13 - 2.0 * c.p23) / 2.0,
        r2: 3.0 / (2.0 * 3f64.sqrt()) * (c.p13 - c.p12),
        r3: 0.0,
    }
}

/// `Re Tr(rho · obs)`.
pub fn expectation(rho: &DensityMatrix, obs: &Matrix8) -> Result<f64> {
    expectation_matrix(&rho.0, obs)
}

pub(crate) fn expectation_matrix(rho: &Matrix8, obs: &Matrix8) -> Result<f64> {
    for m in [rho, obs] {
        let dev = m.hermiticity_deviation();
        if dev > OBSERVABLE_TOLERANCE {
            return Err(Error::NonHermitianInput(dev));
        }
    }
    let t = rho.trace_product(obs);
    debug_assert!(t.im.abs() <= OBSERVABLE_TOLERANCE, "imaginary trace {}", t.im);
    Ok(t.re)
}

pub fn min_eigenvalue(rho: &DensityMatrix) -> Result<f64> {
    Ok(rho.0.hermitian_eigenvalues()?[0])
}

pub fn dump_matrix(m: &Matrix8) -> String {
    let mut out = String::new();
    for r in 0..DIM {
        for c in 0..DIM {
            if c > 0 {
                out.push(' ');
            }
            let z = m[(r, c)];
            let im = if z.im == 0.0 { 0.0 } else { z.im };
            let sign = if im.is_sign_negative() { '-' } else { '+' };
            let _ = write!(out, "{}{}{}i", format_general(z.re, 17), sign, format_general(im.abs(), 17));
        }
        out.push('\n');
    }
    out
}

/// Parses the output of [`dump_matrix`].
pub fn parse_dump(text: &str) -> Result<Matrix8> {
    let rows: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    if rows.len() != DIM {
        return Err(Error::domain(format!("expected {DIM} rows, found {}", rows.len())));
    }
    let mut m = Matrix8::zeros();
    for (r, line) in rows.iter().enumerate() {
        let entries: Vec<&str> = line.split_whitespace().collect();
        if entries.len() != DIM {
            return Err(Error::domain(format!("row {r}: expected {DIM} entries")));
        }
        for (c, entry) in entries.iter().enumerate() {
            m[(r, c)] = parse_complex(entry).ok_or_else(|| Error::domain(format!("row {r}: bad entry `{entry}`")))?;
        }
    }
    Ok(m)
}

fn parse_complex(s: &str) -> Option<C64> {
    let body = s.strip_suffix('i')?;
    // split at the sign that is not the leading one and not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'))?;
    let re: f64 = body[..split].parse().ok()?;
    let im: f64 = body[split..].parse().ok()?;
    Some(C64::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Op2, PAULI_X, PAULI_Y, PAULI_Z};

    fn limit_couplings() -> Couplings {
        Couplings::new(2.0 / 3.0, -1.0 / 3.0, 2.0 / 3.0)
    }

    /// Spectrum from the total-spin decomposition: the quartet sits at
    /// (1-p)/8, the two doublets at (1-p)/8 + λ/2 with λ the eigenvalues of
    /// the 2x2 matrix with trace p and determinant (3/4) Σ p_ij p_kl.
    fn block_spectrum(c: &Couplings) -> [f64; 8] {
        let base = (1.0 - c.p) / 8.0;
        let pairs = c.p12 * c.p13 + c.p12 * c.p23 + c.p13 * c.p23;
        let disc = (c.p * c.p / 4.0 - 0.75 * pairs).max(0.0).sqrt();
        let (lo, hi) = (c.p / 2.0 - disc, c.p / 2.0 + disc);
        let mut ev = [base, base, base, base, base + lo / 2.0, base + lo / 2.0, base + hi / 2.0, base + hi / 2.0];
        ev.sort_by(f64::total_cmp);
        ev
    }

    #[test]
    fn rho3_examples() {
        let m = rho3(&Couplings::zero()).unwrap();
        assert!(m.matrix().max_abs_diff(&Matrix8::identity().scale(0.125)) <= 1e-16);

        let m = rho3(&limit_couplings()).unwrap();
        assert!(m.matrix()[(0, 0)].norm() <= 1e-16);
        assert!(m.matrix()[(0, 7)].norm() <= 1e-16);

        let m = rho3(&Couplings::new(1.0, 0.0, 0.0)).unwrap();
        assert!((m.matrix()[(2, 2)] - C64::new(0.25, 0.0)).norm() <= 1e-16);
        assert!((m.matrix()[(2, 4)] - C64::new(-0.25, 0.0)).norm() <= 1e-16);
    }

    #[test]
    fn rho3_refuses_far_out_of_bounds() {
        assert!(matches!(rho3(&Couplings::new(1.0, 1.0, 1.0)), Err(Error::InvalidCouplings(_))));
        assert!(rho3(&Couplings::new(1.0 + 1e-7, 0.0, 0.0)).is_ok());
        assert!(rho3(&Couplings::new(1.0 + 1e-5, 0.0, 0.0)).is_err());
    }

    #[test]
    fn rho3_is_hermitian_unit_trace() {
        let m = rho3_formal(&Couplings::new(0.3, -0.7, 0.9));
        assert!(m.hermiticity_deviation() <= 1e-15);
        assert!((m.trace() - C64::new(1.0, 0.0)).norm() <= 1e-15);
    }

    #[test]
    fn werner_examples() {
        let w = werner_coords(&limit_couplings());
        let s3 = 3f64.sqrt();
        for (a, b) in [(w.r_plus, 0.0), (w.r0, 1.0), (w.r1, -0.5), (w.r2, -s3 / 2.0), (w.r3, 0.0)] {
            assert!((a - b).abs() <= 1e-15);
        }
        let w = werner_coords(&Couplings::new(0.539345, -0.160702, 0.539345));
        assert!((w.r_plus - 0.041).abs() <= 5e-4);
        assert!((w.r1 + 0.350).abs() <= 5e-4);
        assert!((w.r2 - s3 * w.r1).abs() <= 1e-15);
        assert_eq!(werner_coords(&Couplings::zero()), WernerCoords { r_plus: 0.5, r0: 0.5, r1: 0.0, r2: 0.0, r3: 0.0 });
    }

    #[test]
    fn werner_coords_are_traces_against_permutation_structure() {
        // r+ + r0 = 1 for arbitrary couplings
        for c in [Couplings::new(0.2, -0.4, 0.9), Couplings::new(-1.0, 0.5, 0.1)] {
            let w = werner_coords(&c);
            assert!((w.r_plus + w.r0 - 1.0).abs() <= 1e-15);
            assert_eq!(w.r3, 0.0);
        }
    }

    #[test]
    fn expectation_examples() {
        let mixed = rho3(&Couplings::zero()).unwrap();
        assert!((expectation(&mixed, &Matrix8::identity()).unwrap() - 1.0).abs() <= 1e-15);
        assert!(expectation(&mixed, &Matrix8::spin_dot(0, 1)).unwrap().abs() <= 1e-15);
        let mut bad = Matrix8::zeros();
        bad[(0, 1)] = C64::new(1.0, 0.0);
        assert!(matches!(expectation(&mixed, &bad), Err(Error::NonHermitianInput(_))));
    }

    #[test]
    fn pair_correlators_are_minus_three_p() {
        let c = Couplings::new(0.31, -0.12, 0.55);
        let rho = rho3(&c).unwrap();
        for (a, b, p) in [(0, 1, c.p12), (0, 2, c.p13), (1, 2, c.p23)] {
            let v = expectation(&rho, &Matrix8::spin_dot(a, b)).unwrap();
            assert!((v + 3.0 * p).abs() <= 1e-14);
        }
    }

    #[test]
    fn min_eigenvalue_examples() {
        let mixed = rho3(&Couplings::zero()).unwrap();
        assert!((min_eigenvalue(&mixed).unwrap() - 0.125).abs() <= 1e-14);
        let lim = rho3(&limit_couplings()).unwrap();
        assert!(min_eigenvalue(&lim).unwrap() >= -1e-10);
        let mut d = [0.0; 8];
        d[0] = 1.0;
        let pure = DensityMatrix::new(Matrix8::from_real_diagonal(d)).unwrap();
        assert!(min_eigenvalue(&pure).unwrap().abs() <= 1e-14);
    }

    #[test]
    fn spectrum_matches_spin_blocks() {
        for c in [
            limit_couplings(),
            Couplings::new(0.539345, -0.160702, 0.539345),
            Couplings::new(0.1, 0.2, -0.3),
            Couplings::new(-0.5, 0.9, 0.4),
            Couplings::new(1.0, 1.0, 1.0),
        ] {
            let ev = rho3_formal(&c).hermitian_eigenvalues().unwrap();
            let want = block_spectrum(&c);
            for (a, b) in ev.iter().zip(want) {
                assert!((a - b).abs() <= 1e-12, "{c:?}: {ev:?} vs {want:?}");
            }
        }
    }

    #[test]
    fn collective_rotation_invariance() {
        let c = Couplings::new(0.4, -0.2, 0.6);
        let rho = rho3_formal(&c);
        let (a, b, g) = (0.7_f64, 1.9_f64, -0.4_f64);
        // U = exp(-i a σz/2) exp(-i b σy/2) exp(-i g σx/2)
        let rot = |p: &Op2, t: f64| -> Op2 {
            let (s, co) = (t / 2.0).sin_cos();
            let mut m = [[C64::new(0.0, 0.0); 2]; 2];
            for r in 0..2 {
                for k in 0..2 {
                    let id = if r == k { co } else { 0.0 };
                    m[r][k] = C64::new(id, 0.0) - C64::new(0.0, s) * p[r][k];
                }
            }
            m
        };
        let mul = |x: Op2, y: Op2| -> Op2 {
            let mut m = [[C64::new(0.0, 0.0); 2]; 2];
            for r in 0..2 {
                for k in 0..2 {
                    m[r][k] = x[r][0] * y[0][k] + x[r][1] * y[1][k];
                }
            }
            m
        };
        let u2 = mul(mul(rot(&PAULI_Z, a), rot(&PAULI_Y, b)), rot(&PAULI_X, g));
        let u = Matrix8::kron3(&u2, &u2, &u2);
        let rotated = u * rho * u.adjoint();
        assert!(rotated.max_abs_diff(&rho) <= 1e-14);
    }

    #[test]
    fn dump_roundtrip() {
        let rho = rho3(&Couplings::new(0.539345, -0.160702, 0.539345)).unwrap();
        let text = rho.to_dump();
        assert_eq!(text.lines().count(), 8);
        let back = parse_dump(&text).unwrap();
        assert_eq!(back, *rho.matrix());
        let c = Couplings::new(0.539345, -0.160702, 0.539345);
        let corner = format!("{}+0i", format_general((1.0 - c.p) / 8.0, 17));
        assert!(text.lines().next().unwrap().starts_with(&corner));
        let mut m = Matrix8::zeros();
        m[(1, 2)] = C64::new(-1.5e-20, -0.25);
        let back = parse_dump(&dump_matrix(&m)).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn parse_dump_rejects_garbage() {
        assert!(parse_dump("1+0i").is_err());
        let row = ["x"; 8].join(" ");
        let text = [row.as_str(); 8].join("\n");
        assert!(parse_dump(&text).is_err());
    }
}

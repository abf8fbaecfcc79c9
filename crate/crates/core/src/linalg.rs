//! Fixed-size complex linear algebra for three qubits.
//!
//! Basis index `b = 4 b1 + 2 b2 + b3`, with bit 0 = spin up and bit 1 = spin
//! down; qubit 1 is the most significant bit.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type Op2 = [[C64; 2]; 2];
pub type StateVector = [C64; DIM];

pub const DIM: usize = 8;

/// Off-diagonal threshold for the Jacobi eigensolver.
pub const JACOBI_THRESHOLD: f64 = 1e-14;
pub const JACOBI_MAX_SWEEPS: usize = 100;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

pub const PAULI_X: Op2 = [[ZERO, ONE], [ONE, ZERO]];
pub const PAULI_Y: Op2 = [[ZERO, C64::new(0.0, -1.0)], [I, ZERO]];
pub const PAULI_Z: Op2 = [[ONE, ZERO], [ZERO, C64::new(-1.0, 0.0)]];
pub const IDENTITY_2: Op2 = [[ONE, ZERO], [ZERO, ONE]];

/// Bit of qubit `q` (0-based) in basis index `b`.
#[inline]
pub fn qubit_bit(b: usize, q: usize) -> usize {
    (b >> (2 - q)) & 1
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix8(pub [[C64; DIM]; DIM]);

impl Matrix8 {
    pub fn zeros() -> Self {
        Matrix8([[ZERO; DIM]; DIM])
    }

    pub fn identity() -> Self {
        Matrix8::from_fn(|r, c| if r == c { ONE } else { ZERO })
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Matrix8::zeros();
        for r in 0..DIM {
            for c in 0..DIM {
                m.0[r][c] = f(r, c);
            }
        }
        m
    }

    pub fn from_real_diagonal(d: [f64; DIM]) -> Self {
        Matrix8::from_fn(|r, c| if r == c { C64::new(d[r], 0.0) } else { ZERO })
    }

    /// `|v><v|`
    pub fn outer(v: &StateVector) -> Self {
        Matrix8::from_fn(|r, c| v[r] * v[c].conj())
    }

    /// `a ⊗ b ⊗ c` in the qubit order (1, 2, 3).
    pub fn kron3(a: &Op2, b: &Op2, c: &Op2) -> Self {
        Matrix8::from_fn(|r, col| {
            a[qubit_bit(r, 0)][qubit_bit(col, 0)]
                * b[qubit_bit(r, 1)][qubit_bit(col, 1)]
                * c[qubit_bit(r, 2)][qubit_bit(col, 2)]
        })
    }

    /// `op` acting on qubit `q` (0-based), identity elsewhere.
    pub fn single_qubit(op: &Op2, q: usize) -> Self {
        let mut ops = [IDENTITY_2; 3];
        ops[q] = *op;
        Matrix8::kron3(&ops[0], &ops[1], &ops[2])
    }

    /// `σ^a · σ^b = Σ_k σ_k^a σ_k^b` on qubits `a != b` (0-based).
    pub fn spin_dot(a: usize, b: usize) -> Self {
        [PAULI_X, PAULI_Y, PAULI_Z]
            .iter()
            .map(|p| Matrix8::single_qubit(p, a) * Matrix8::single_qubit(p, b))
            .fold(Matrix8::zeros(), |acc, m| acc + m)
    }

    pub fn scale(&self, s: f64) -> Self {
        Matrix8::from_fn(|r, c| self.0[r][c] * s)
    }

    pub fn adjoint(&self) -> Self {
        Matrix8::from_fn(|r, c| self.0[c][r].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..DIM).map(|i| self.0[i][i]).sum()
    }

    /// `Tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &Matrix8) -> C64 {
        let mut acc = ZERO;
        for r in 0..DIM {
            for c in 0..DIM {
                acc += self.0[r][c] * other.0[c][r];
            }
        }
        acc
    }

    pub fn max_abs_diff(&self, other: &Matrix8) -> f64 {
        let mut worst = 0.0_f64;
        for r in 0..DIM {
            for c in 0..DIM {
                worst = worst.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        worst
    }

    /// `max |M - M†|`
    pub fn hermiticity_deviation(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// `<u| M |v>`
    pub fn sandwich(&self, u: &StateVector, v: &StateVector) -> C64 {
        self.0.iter().zip(u).map(|(row, ur)| ur.conj() * row.iter().zip(v).map(|(m, x)| m * x).sum::<C64>()).sum()
    }

    /// Eigenvalues in ascending order; input must be Hermitian.
    pub fn hermitian_eigenvalues(&self) -> Result<[f64; DIM]> {
        hermitian_eigenvalues(self)
    }
}

impl Index<(usize, usize)> for Matrix8 {
    type Output = C64;

    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.0[r][c]
    }
}

impl IndexMut<(usize, usize)> for Matrix8 {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.0[r][c]
    }
}

impl Add for Matrix8 {
    type Output = Matrix8;

    fn add(self, rhs: Matrix8) -> Matrix8 {
        Matrix8::from_fn(|r, c| self.0[r][c] + rhs.0[r][c])
    }
}

impl Sub for Matrix8 {
    type Output = Matrix8;

    fn sub(self, rhs: Matrix8) -> Matrix8 {
        Matrix8::from_fn(|r, c| self.0[r][c] - rhs.0[r][c])
    }
}

impl Mul for Matrix8 {
    type Output = Matrix8;

    fn mul(self, rhs: Matrix8) -> Matrix8 {
        Matrix8::from_fn(|r, c| (0..DIM).map(|k| self.0[r][k] * rhs.0[k][c]).sum())
    }
}

/// `a ⊗ b ⊗ c` for single-qubit states.
pub fn product_state(a: &[C64; 2], b: &[C64; 2], c: &[C64; 2]) -> StateVector {
    let mut v = [ZERO; DIM];
    for (idx, slot) in v.iter_mut().enumerate() {
        *slot = a[qubit_bit(idx, 0)] * b[qubit_bit(idx, 1)] * c[qubit_bit(idx, 2)];
    }
    v
}

pub fn norm(v: &StateVector) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Eigenvalues of a Hermitian 8x8 matrix, ascending.
///
/// The matrix `H = A + iB` is embedded as the real symmetric
/// `[[A, -B], [B, A]]`, whose spectrum is that of `H` with every eigenvalue
/// doubled; cyclic Jacobi is run on the embedding.
pub fn hermitian_eigenvalues(m: &Matrix8) -> Result<[f64; DIM]> {
    let n = 2 * DIM;
    let mut a = vec![vec![0.0; n]; n];
    for r in 0..DIM {
        for c in 0..DIM {
            let z = m.0[r][c];
            a[r][c] = z.re;
            a[r + DIM][c + DIM] = z.re;
            a[r][c + DIM] = -z.im;
            a[r + DIM][c] = z.im;
        }
    }
    let mut doubled = symmetric_eigenvalues(&mut a)?;
    doubled.sort_by(f64::total_cmp);
    let mut out = [0.0; DIM];
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
    }
    Ok(out)
}

/// Cyclic Jacobi on a real symmetric matrix (overwritten). Unsorted.
#[allow(clippy::needless_range_loop)]
pub fn symmetric_eigenvalues(a: &mut [Vec<f64>]) -> Result<Vec<f64>> {
    let n = a.len();
    let frob: f64 = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    let target = JACOBI_THRESHOLD * frob.max(1.0);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| (p, q)))
            .map(|(p, q)| a[p][q] * a[p][q])
            .sum::<f64>()
            .sqrt();
        if off <= target {
            return Ok((0..n).map(|i| a[i][i]).collect());
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (kp, kq) = (row[p], row[q]);
                    row[p] = c * kp - s * kq;
                    row[q] = s * kp + c * kq;
                }
                for k in 0..n {
                    let (pk, qk) = (a[p][k], a[q][k]);
                    a[p][k] = c * pk - s * qk;
                    a[q][k] = s * pk + c * qk;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
            }
        }
    }
    Err(Error::ConvergenceFailure { what: "Jacobi eigensolver", iterations: JACOBI_MAX_SWEEPS })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_convention() {
        // |↓↑↑> = index 4
        let down = [ZERO, ONE];
        let up = [ONE, ZERO];
        let v = product_state(&down, &up, &up);
        assert_eq!(v[4], ONE);
        assert_eq!(norm(&v), 1.0);
        assert_eq!(qubit_bit(5, 0), 1);
        assert_eq!(qubit_bit(5, 1), 0);
        assert_eq!(qubit_bit(5, 2), 1);
    }

    #[test]
    fn spin_dot_spectrum() {
        // σ·σ on two qubits: triplet +1, singlet -3; tensored with a spectator
        let ev = Matrix8::spin_dot(0, 2).hermitian_eigenvalues().unwrap();
        let want = [-3.0, -3.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0];
        for (a, b) in ev.iter().zip(want) {
            assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn eigenvalues_of_complex_hermitian() {
        // block diag of [[2, i],[-i, 2]] (eigs 1, 3) and a diagonal
        let mut m = Matrix8::from_real_diagonal([0.0, 0.0, 5.0, -1.0, 0.5, 0.25, 7.0, -2.0]);
        m[(0, 0)] = C64::new(2.0, 0.0);
        m[(1, 1)] = C64::new(2.0, 0.0);
        m[(0, 1)] = I;
        m[(1, 0)] = -I;
        let ev = m.hermitian_eigenvalues().unwrap();
        let want = [-2.0, -1.0, 0.25, 0.5, 1.0, 3.0, 5.0, 7.0];
        for (a, b) in ev.iter().zip(want) {
            assert!((a - b).abs() <= 1e-12, "{ev:?}");
        }
    }

    #[test]
    fn eigenvalues_survive_unitary_conjugation() {
        let d = [-1.5, -0.25, 0.0, 0.125, 0.3, 1.0, 2.0, 4.0];
        // a Hadamard-like rotation on every qubit plus phases
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let u2: Op2 = [[C64::new(h, 0.0), C64::new(0.0, h)], [C64::new(0.0, h), C64::new(h, 0.0)]];
        let u = Matrix8::kron3(&u2, &u2, &u2);
        let m = u * Matrix8::from_real_diagonal(d) * u.adjoint();
        assert!(m.hermiticity_deviation() <= 1e-15);
        let ev = m.hermitian_eigenvalues().unwrap();
        for (a, b) in ev.iter().zip(d) {
            assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn trace_product_matches_full_product() {
        let a = Matrix8::spin_dot(0, 1) + Matrix8::single_qubit(&PAULI_Y, 2);
        let b = Matrix8::spin_dot(1, 2).scale(0.3) + Matrix8::identity();
        assert!((a.trace_product(&b) - (a * b).trace()).norm() <= 1e-13);
    }
}

//! Entanglement witnesses for the three-spin state and the lower bound on the
//! generalized robustness they induce.
//!
//! Two families are provided. The projective GHZ/W witnesses
//! `Λ I - |ψ><ψ|` never detect the three-spin state (checked exhaustively by
//! [`grid_scan_ghz_w`]). The energy-type observable
//! `W_ijk = σ^i·σ^j + σ^j·σ^k` does: `|<W_ijk>| > 1 + √5` certifies genuine
//! tripartite entanglement, and its normalized versions `W̃_ijk <= I` give a
//! dual-feasible lower bound on the robustness.

use serde::{Deserialize, Serialize};

use crate::couplings::Couplings;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linalg::{norm, product_state, Matrix8, StateVector, C64};
use crate::tristate::{expectation_matrix, rho3, rho3_formal};

pub const GHZ_LAMBDA: f64 = 0.5;
pub const W_LAMBDA: f64 = 2.0 / 3.0;
pub const NORM_TOLERANCE: f64 = 1e-12;

/// `1 + √5`, the biseparable bound on `|<W_ijk>|`.
pub fn guhne_threshold() -> f64 {
    1.0 + 5f64.sqrt()
}

/// `5 + √5`, the normalization making `W̃_ijk <= I`.
pub fn tilde_normalization() -> f64 {
    5.0 + 5f64.sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalBasis {
    pub theta: f64,
    pub phi: f64,
}

impl LocalBasis {
    pub const Z: LocalBasis = LocalBasis { theta: 0.0, phi: 0.0 };

    pub fn new(theta: f64, phi: f64) -> Self {
        LocalBasis { theta, phi }
    }

    /// `|n> = cos(θ/2)|↑> + e^{iφ} sin(θ/2)|↓>`
    pub fn up(&self) -> [C64; 2] {
        let (s, c) = (self.theta / 2.0).sin_cos();
        [C64::new(c, 0.0), C64::from_polar(s, self.phi)]
    }

    /// `|-n> = -sin(θ/2)|↑> + e^{iφ} cos(θ/2)|↓>`, so that `|-z> = |↓>`.
    pub fn down(&self) -> [C64; 2] {
        let (s, c) = (self.theta / 2.0).sin_cos();
        [C64::new(-s, 0.0), C64::from_polar(c, self.phi)]
    }
}

fn add_scaled(acc: &mut StateVector, v: &StateVector, w: C64) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += w * b;
    }
}

/// `(|n1 n2 n3> + e^{iα} |-n1 -n2 -n3>) / √2`
pub fn ghz_state(alpha: f64, bases: &[LocalBasis; 3]) -> StateVector {
    let [a, b, c] = bases;
    let mut v = [C64::new(0.0, 0.0); 8];
    let w = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    add_scaled(&mut v, &product_state(&a.up(), &b.up(), &c.up()), w);
    add_scaled(&mut v, &product_state(&a.down(), &b.down(), &c.down()), w * C64::from_polar(1.0, alpha));
    v
}

/// `(|n1 n2 -n3> + e^{iβ} |n1 -n2 n3> + e^{iγ} |-n1 n2 n3>) / √3`
pub fn w_state(beta: f64, gamma: f64, bases: &[LocalBasis; 3]) -> StateVector {
    let [a, b, c] = bases;
    let mut v = [C64::new(0.0, 0.0); 8];
    let w = C64::new(1.0 / 3f64.sqrt(), 0.0);
    add_scaled(&mut v, &product_state(&a.up(), &b.up(), &c.down()), w);
    add_scaled(&mut v, &product_state(&a.up(), &b.down(), &c.up()), w * C64::from_polar(1.0, beta));
    add_scaled(&mut v, &product_state(&a.down(), &b.up(), &c.up()), w * C64::from_polar(1.0, gamma));
    v
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessOperator {
    pub matrix: Matrix8,
    /// Certified upper bound on the largest eigenvalue.
    pub lambda_max_bound: f64,
    /// False when a projective witness was built with a `Λ` other than the
    /// known GHZ (1/2) or W (2/3) values, so it is not a certified witness.
    pub certified: bool,
}

impl WitnessOperator {
    pub fn expectation_formal(&self, rho: &Matrix8) -> Result<f64> {
        expectation_matrix(rho, &self.matrix)
    }
}

/// `Λ I - |ψ><ψ|`.
pub fn projective_witness(psi: &StateVector, lambda: f64) -> Result<WitnessOperator> {
    let n = norm(psi);
    if (n - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::NotNormalized(n));
    }
    let certified = (lambda - GHZ_LAMBDA).abs() <= 1e-15 || (lambda - W_LAMBDA).abs() <= 1e-15;
    Ok(WitnessOperator {
        matrix: Matrix8::identity().scale(lambda) - Matrix8::outer(psi),
        lambda_max_bound: lambda,
        certified,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Ghz,
    W,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanAngles {
    pub theta1: f64,
    pub phi1: f64,
    pub theta2: f64,
    pub phi2: f64,
    pub theta3: f64,
    pub phi3: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanNode {
    pub family: Family,
    /// `[p12, p13, p23]`
    pub p: [f64; 3],
    pub angles: ScanAngles,
    /// `[α]` for GHZ, `[β, γ]` for W.
    pub phases: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySummary {
    pub family: Family,
    pub min_value: f64,
    pub nodes_evaluated: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub min_value: f64,
    pub argmin: ScanNode,
    pub nodes_evaluated: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub families: Option<Vec<FamilySummary>>,
}

/// Angle grid of the extremal scan; `2π` is identified with 0.
pub const SCAN_GRID: [f64; 4] =
    [0.0, std::f64::consts::FRAC_PI_2, std::f64::consts::PI, 3.0 * std::f64::consts::FRAC_PI_2];

pub const GHZ_SCAN_NODES: usize = 8 * 4 * 4 * 4 * 4;
pub const W_SCAN_NODES: usize = 8 * 4 * 4 * 4 * 4 * 4;

#[derive(Clone, Copy)]
struct Best {
    value: f64,
    index: usize,
}

impl Best {
    const NONE: Best = Best { value: f64::INFINITY, index: usize::MAX };

    fn offer(&mut self, value: f64, index: usize) {
        if value < self.value || (value == self.value && index < self.index) {
            *self = Best { value, index };
        }
    }

    fn merge(self, other: Best) -> Best {
        let mut b = self;
        b.offer(other.value, other.index);
        b
    }
}

/// Decoded position of a node index in the enumeration order
/// (p vertex, θ2, θ3, φ3, then GHZ α or W (β, γ)).
fn decode_node(index: usize) -> ScanNode {
    let per_unit = 4 + 16;
    let unit = index / per_unit;
    let inner = index % per_unit;
    let (vertex, basis) = (unit / 64, unit % 64);
    let p = p_vertex(vertex);
    let angles = ScanAngles {
        theta1: 0.0,
        phi1: 0.0,
        theta2: SCAN_GRID[basis / 16],
        phi2: 0.0,
        theta3: SCAN_GRID[(basis / 4) % 4],
        phi3: SCAN_GRID[basis % 4],
    };
    if inner < 4 {
        ScanNode { family: Family::Ghz, p, angles, phases: vec![SCAN_GRID[inner]] }
    } else {
        let k = inner - 4;
        ScanNode { family: Family::W, p, angles, phases: vec![SCAN_GRID[k / 4], SCAN_GRID[k % 4]] }
    }
}

fn p_vertex(vertex: usize) -> [f64; 3] {
    let s = |bit: usize| if (vertex >> bit) & 1 == 1 { 1.0 } else { -1.0 };
    [s(2), s(1), s(0)]
}

/// Minimum of `Tr(rho3 Π)` over the extreme points of the parameter box:
/// `p_ij = ±1`, `θ1 = φ1 = φ2 = 0`, `θ2, θ3, φ3` and the witness phases on
/// `{0, π/2, π, 3π/2}`, for both `W_GHZ(α)` and `W_W(β,γ)`. The state is the
/// formal affine matrix (not positive at most vertices).
pub fn grid_scan_ghz_w(detail: bool) -> Result<ScanReport> {
    grid_scan_ghz_w_with(Exec::default(), detail)
}

pub fn grid_scan_ghz_w_with(exec: Exec, detail: bool) -> Result<ScanReport> {
    let units: Vec<usize> = (0..8 * 64).collect();
    let per_unit = 4 + 16;
    let partial = exec.try_map(&units, |&unit| -> Result<(Best, Best)> {
        let first = decode_node(unit * per_unit);
        let p = first.p;
        let rho = rho3_formal(&Couplings::new(p[0], p[1], p[2]));
        let a = first.angles;
        let bases =
            [LocalBasis::new(a.theta1, a.phi1), LocalBasis::new(a.theta2, a.phi2), LocalBasis::new(a.theta3, a.phi3)];
        let (mut ghz, mut w) = (Best::NONE, Best::NONE);
        for (k, alpha) in SCAN_GRID.iter().enumerate() {
            let wit = projective_witness(&ghz_state(*alpha, &bases), GHZ_LAMBDA)?;
            ghz.offer(wit.expectation_formal(&rho)?, unit * per_unit + k);
        }
        for (k, (beta, gamma)) in SCAN_GRID.iter().flat_map(|b| SCAN_GRID.iter().map(move |g| (*b, *g))).enumerate() {
            let wit = projective_witness(&w_state(beta, gamma, &bases), W_LAMBDA)?;
            w.offer(wit.expectation_formal(&rho)?, unit * per_unit + 4 + k);
        }
        Ok((ghz, w))
    })?;
    let (ghz, w) = partial.into_iter().fold((Best::NONE, Best::NONE), |(g, w), (pg, pw)| (g.merge(pg), w.merge(pw)));
    let best = ghz.merge(w);
    Ok(ScanReport {
        min_value: best.value,
        argmin: decode_node(best.index),
        nodes_evaluated: GHZ_SCAN_NODES + W_SCAN_NODES,
        families: detail.then(|| {
            vec![
                FamilySummary { family: Family::Ghz, min_value: ghz.value, nodes_evaluated: GHZ_SCAN_NODES },
                FamilySummary { family: Family::W, min_value: w.value, nodes_evaluated: W_SCAN_NODES },
            ]
        }),
    })
}

/// Ordered particle triple `ijk` (0-based internally) labelling `W_ijk`.
/// The observable depends only on the middle particle `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Perm {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl Perm {
    pub const P123: Perm = Perm { i: 0, j: 1, k: 2 };
    pub const P231: Perm = Perm { i: 1, j: 2, k: 0 };
    pub const P312: Perm = Perm { i: 2, j: 0, k: 1 };
    pub const P132: Perm = Perm { i: 0, j: 2, k: 1 };

    /// One representative per middle particle; the witness bound maximizes
    /// over these.
    pub const DISTINCT: [Perm; 3] = [Perm::P123, Perm::P231, Perm::P312];

    /// `p_ij + p_jk`
    pub fn pair_sum(&self, c: &Couplings) -> f64 {
        c.pair(self.i, self.j) + c.pair(self.j, self.k)
    }
}

impl std::fmt::Display for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}{}", self.i + 1, self.j + 1, self.k + 1)
    }
}

impl std::str::FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits: Vec<usize> = s
            .chars()
            .map(|ch| ch.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::domain(format!("bad permutation `{s}`")))?;
        let mut sorted = digits.clone();
        sorted.sort_unstable();
        if sorted != [1, 2, 3] {
            return Err(Error::domain(format!("`{s}` is not a permutation of 123")));
        }
        Ok(Perm { i: digits[0] - 1, j: digits[1] - 1, k: digits[2] - 1 })
    }
}

/// `σ^i·σ^j + σ^j·σ^k`; spectrum `{2, 0, -4}`.
pub fn guhne_observable(perm: Perm) -> Matrix8 {
    Matrix8::spin_dot(perm.i, perm.j) + Matrix8::spin_dot(perm.j, perm.k)
}

/// `3 |p_ij + p_jk| > 1 + √5`.
pub fn guhne_gte_test(c: &Couplings, perm: Perm) -> bool {
    3.0 * perm.pair_sum(c).abs() > guhne_threshold()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// `((1 + √5) I ± W_ijk) / (5 + √5)`. Both signs are nonnegative on
/// biseparable states and bounded above by the identity.
pub fn tilde_witness(perm: Perm, sign: Sign) -> WitnessOperator {
    let norm = tilde_normalization();
    let matrix =
        (Matrix8::identity().scale(guhne_threshold()) + guhne_observable(perm).scale(sign.factor())).scale(1.0 / norm);
    let top = match sign {
        Sign::Plus => guhne_threshold() + 2.0,
        Sign::Minus => guhne_threshold() + 4.0,
    };
    WitnessOperator { matrix, lambda_max_bound: top / norm, certified: true }
}

/// Largest `3 (p_ij + p_jk)` over the distinct middle particles, with its permutation.
pub fn best_witness_value(c: &Couplings) -> (Perm, f64) {
    Perm::DISTINCT
        .iter()
        .map(|perm| (*perm, 3.0 * perm.pair_sum(c)))
        .fold((Perm::P123, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best })
}

/// `max_ijk max{0, (3 (p_ij + p_jk) - 1 - √5) / (5 + √5)}`.
pub fn er_lower_bound(c: &Couplings) -> f64 {
    let (_, value) = best_witness_value(c);
    ((value - guhne_threshold()) / tilde_normalization()).max(0.0)
}

/// The same bound from operators: `max{0, -min Tr(rho3 W̃)}` over the
/// distinct permutations and both signs.
pub fn er_lower_bound_matrix(c: &Couplings) -> Result<f64> {
    let rho = rho3(c)?;
    let mut worst = 0.0_f64;
    for perm in Perm::DISTINCT {
        for sign in Sign::BOTH {
            let v = tilde_witness(perm, sign).expectation_formal(rho.matrix())?;
            worst = worst.max(-v);
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tristate::{expectation, rho3};

    fn basis_state(idx: &[(usize, f64)]) -> StateVector {
        let mut v = [C64::new(0.0, 0.0); 8];
        for (i, a) in idx {
            v[*i] = C64::new(*a, 0.0);
        }
        v
    }

    fn max_diff(a: &StateVector, b: &StateVector) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    fn limit() -> Couplings {
        Couplings::new(2.0 / 3.0, -1.0 / 3.0, 2.0 / 3.0)
    }

    const Z3: [LocalBasis; 3] = [LocalBasis::Z; 3];

    #[test]
    fn local_basis_is_orthonormal() {
        for (t, p) in [(0.3, 1.1), (2.0, 4.0), (std::f64::consts::PI, 0.0)] {
            let b = LocalBasis::new(t, p);
            let (u, d) = (b.up(), b.down());
            let nu = u[0].norm_sqr() + u[1].norm_sqr();
            let overlap = u[0].conj() * d[0] + u[1].conj() * d[1];
            assert!((nu - 1.0).abs() <= 1e-14 && overlap.norm() <= 1e-15);
        }
    }

    #[test]
    fn ghz_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(max_diff(&ghz_state(0.0, &Z3), &basis_state(&[(0, h), (7, h)])) <= 1e-15);
        assert!(max_diff(&ghz_state(std::f64::consts::PI, &Z3), &basis_state(&[(0, h), (7, -h)])) <= 1e-15);
        let b = [LocalBasis::new(0.4, 1.0), LocalBasis::new(2.2, 5.0), LocalBasis::new(1.0, 0.1)];
        assert!((norm(&ghz_state(0.77, &b)) - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn w_examples() {
        let t = 1.0 / 3f64.sqrt();
        // |↑↑↓> = 1, |↑↓↑> = 2, |↓↑↑> = 4
        assert!(max_diff(&w_state(0.0, 0.0, &Z3), &basis_state(&[(1, t), (2, t), (4, t)])) <= 1e-15);
        assert!(max_diff(&w_state(std::f64::consts::PI, 0.0, &Z3), &basis_state(&[(1, t), (2, -t), (4, t)])) <= 1e-15);
        let b = [LocalBasis::new(0.4, 1.0), LocalBasis::new(2.2, 5.0), LocalBasis::new(1.0, 0.1)];
        assert!((norm(&w_state(1.3, -0.2, &b)) - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn projective_witness_examples() {
        let ghz = ghz_state(0.0, &Z3);
        let wit = projective_witness(&ghz, GHZ_LAMBDA).unwrap();
        assert!(wit.certified);
        let v = wit.expectation_formal(&Matrix8::outer(&ghz)).unwrap();
        assert!((v + 0.5).abs() <= 1e-15);

        let w = w_state(0.0, 0.0, &Z3);
        let wit = projective_witness(&w, W_LAMBDA).unwrap();
        let mixed = Matrix8::identity().scale(0.125);
        assert!((wit.expectation_formal(&mixed).unwrap() - 13.0 / 24.0).abs() <= 1e-15);
        for c in [limit(), Couplings::new(0.2, -0.1, 0.5), Couplings::new(-0.4, 0.3, 0.3)] {
            let v = expectation(&rho3(&c).unwrap(), &wit.matrix).unwrap();
            assert!((v - (2.0 / 3.0 - (1.0 - c.p) / 8.0)).abs() <= 1e-15);
        }
    }

    #[test]
    fn projective_witness_flags_and_rejects() {
        let ghz = ghz_state(0.0, &Z3);
        assert!(!projective_witness(&ghz, 0.6).unwrap().certified);
        let mut bad = ghz;
        bad[0] *= 2.0;
        assert!(matches!(projective_witness(&bad, 0.5), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn ghz_at_limit_state() {
        let wit = projective_witness(&ghz_state(0.0, &Z3), GHZ_LAMBDA).unwrap();
        let v = expectation(&rho3(&limit()).unwrap(), &wit.matrix).unwrap();
        assert!((v - 0.5).abs() <= 1e-15);
    }

    #[test]
    fn grid_scan_is_nonnegative() {
        let report = grid_scan_ghz_w(true).unwrap();
        assert!(report.min_value >= -1e-12, "{report:?}");
        assert_eq!(report.nodes_evaluated, 8 * 4 * 4 * 4 * 4 * 4 + 8 * 4 * 4 * 4 * 4);
        let fams = report.families.unwrap();
        assert_eq!(fams[1].nodes_evaluated, 8 * 4 * 4 * 4 * 4 * 4);
        assert_eq!(report.min_value, fams[0].min_value.min(fams[1].min_value));
    }

    #[test]
    fn grid_scan_is_partition_independent() {
        let a = grid_scan_ghz_w_with(Exec::Sequential, false).unwrap();
        let b = grid_scan_ghz_w_with(Exec::Parallel, false).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn node_decoding_round_trips() {
        let n = decode_node(0);
        assert_eq!(n.family, Family::Ghz);
        assert_eq!(n.p, [-1.0, -1.0, -1.0]);
        let n = decode_node(20 * 64 * 8 - 1);
        assert_eq!(n.family, Family::W);
        assert_eq!(n.p, [1.0, 1.0, 1.0]);
        assert_eq!(n.phases, vec![SCAN_GRID[3], SCAN_GRID[3]]);
        assert_eq!(n.angles.theta2, SCAN_GRID[3]);
    }

    #[test]
    fn guhne_spectrum_and_trace() {
        for perm in [Perm::P123, Perm::P231, Perm::P132, Perm::P312] {
            let w = guhne_observable(perm);
            assert!(w.trace().norm() <= 1e-14);
            let ev = w.hermitian_eigenvalues().unwrap();
            assert!((ev[0] + 4.0).abs() <= 1e-12 && (ev[7] - 2.0).abs() <= 1e-12);
            for e in ev {
                assert!([2.0, 0.0, -4.0].iter().any(|s| (e - s).abs() <= 1e-12));
            }
        }
    }

    #[test]
    fn guhne_value_at_limit() {
        let v = expectation(&rho3(&limit()).unwrap(), &guhne_observable(Perm::P123)).unwrap();
        assert!((v.abs() - 4.0).abs() <= 1e-12);
        assert!(guhne_gte_test(&limit(), Perm::P123));
        assert!(!guhne_gte_test(&Couplings::zero(), Perm::P123));
        for p in [-1.0 / 3.0, -0.2, 0.0, 0.1, 1.0 / 3.0] {
            let c = Couplings::new(p, p, p);
            for perm in [Perm::P123, Perm::P231, Perm::P132, Perm::P312] {
                assert!(!guhne_gte_test(&c, perm));
            }
        }
    }

    #[test]
    fn tilde_witness_spectra() {
        for perm in Perm::DISTINCT {
            let minus = tilde_witness(perm, Sign::Minus);
            let plus = tilde_witness(perm, Sign::Plus);
            let top_m = minus.matrix.hermitian_eigenvalues().unwrap()[7];
            let top_p = plus.matrix.hermitian_eigenvalues().unwrap()[7];
            assert!((top_m - 1.0).abs() <= 1e-12);
            let s5 = 5f64.sqrt();
            assert!((top_p - (3.0 + s5) / (5.0 + s5)).abs() <= 1e-12);
            assert!((minus.lambda_max_bound - top_m).abs() <= 1e-12);
            assert!((plus.lambda_max_bound - top_p).abs() <= 1e-12);
        }
        let rho = rho3(&limit()).unwrap();
        let smaller = Sign::BOTH
            .iter()
            .map(|s| expectation(&rho, &tilde_witness(Perm::P123, *s).matrix).unwrap())
            .fold(f64::INFINITY, f64::min);
        let s5 = 5f64.sqrt();
        assert!((smaller - (1.0 + s5 - 4.0) / (5.0 + s5)).abs() <= 1e-12);
    }

    #[test]
    fn er_examples() {
        let s5 = 5f64.sqrt();
        let v = er_lower_bound(&limit());
        assert!((v - (3.0 - s5) / (5.0 + s5)).abs() <= 1e-15);
        assert!((v - 0.1055728090).abs() <= 1e-9);
        for p in [-1.0 / 3.0, 0.0, 0.2, 1.0 / 3.0] {
            assert_eq!(er_lower_bound(&Couplings::new(p, p, p)), 0.0);
        }
        assert!(er_lower_bound(&Couplings::new(0.539345, -0.160702, 0.539345)) <= 1e-4);
    }

    #[test]
    fn er_paths_agree() {
        for c in [limit(), Couplings::new(0.539345, -0.160702, 0.539345), Couplings::new(0.1, 0.3, 0.6)] {
            let a = er_lower_bound(&c);
            let b = er_lower_bound_matrix(&c).unwrap();
            assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn er_mirror_invariance() {
        let c = Couplings::new(0.7, -0.25, 0.45);
        let mirrored = c.relabeled([2, 1, 0]);
        assert_eq!(er_lower_bound(&c), er_lower_bound(&mirrored));
        let c = Couplings::new(0.65, 0.55, -0.2);
        assert_eq!(er_lower_bound(&c), er_lower_bound(&c.relabeled([2, 1, 0])));
    }

    #[test]
    fn perm_parsing() {
        assert_eq!("132".parse::<Perm>().unwrap(), Perm::P132);
        assert_eq!(Perm::P231.to_string(), "231");
        assert!("112".parse::<Perm>().is_err());
        assert!("12".parse::<Perm>().is_err());
        // W_231 and W_132 share the middle particle
        assert_eq!(guhne_observable(Perm::P231), guhne_observable(Perm::P132));
    }
}

//! Quantum channels acting on the probability representation.
//!
//! A channel rho -> sum_k V_k rho V_k^dag with sum_k V_k^dag V_k = 1 acts on
//! the probability triple as an affine map p -> M p + Delta with a real 3x3
//! matrix M and a real shift Delta. The affine form here is *defined* by
//! probe extraction: the channel is applied to the maximally mixed state and
//! to the three pure axis states, and (M, Delta) is solved from the four
//! images. Since the channel is exactly affine in p, the solve is exact up
//! to rounding.
//!
//! A closed-form expression for (M, Delta) in the complex basis
//! (p3, p, p*) with p = p1 + i p2 is kept alongside as a cross-check; see
//! [`affine_from_kraus_formula`] for the caveat on its shift term when the
//! set has more than one operator.
//!
//! Unitaries make the affine maps invertible, and the 4x4 homogeneous form
//! [[M, Delta], [0, 1]] represents composition as matrix multiplication:
//! the map of u1 u2 is the product of the maps of u1 and u2. General Kraus
//! sets compose the same way without inverses (a semigroup).

use thiserror::Error;

use crate::math::{c64, Mat2, Mat3, Mat4, C64, SIGMA_0};
use crate::qubit::{DensityMatrix, ProbabilityTriple, StateError, EPS_HERM};
use crate::triangle::{malevich_area_sum, triangle_area};

/// Completeness slack for Kraus sets: max |(sum V^dag V - 1)_ij|.
pub const EPS_KRAUS: f64 = 1e-10;
/// Unitarity slack: max |(u u^dag - 1)_ij|.
pub const EPS_UNITARY: f64 = 1e-10;

/// gamma = (1 + i)/2, the constant offset between matrix entries and
/// probability coordinates.
const GAMMA: C64 = C64::new(0.5, 0.5);

/// Channel-level validation failures.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChannelError {
    #[error("Kraus set is empty")]
    EmptyKrausSet,

    #[error("Kraus set is not trace-preserving (completeness residual {residual:.3e})")]
    IncompleteKraus { residual: f64 },

    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("Hamiltonian is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },
}

/// Max-abs residual of sum_k V_k^dag V_k against the identity.
pub fn completeness_residual(operators: &[Mat2]) -> f64 {
    let mut sum = Mat2::zero();
    for v in operators {
        sum = sum.add(&v.adjoint().mul(v));
    }
    sum.max_abs_diff(&SIGMA_0)
}

/// A complete set of Kraus operators defining a trace-preserving completely
/// positive map.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    operators: Vec<Mat2>,
}

impl KrausSet {
    pub fn new(operators: Vec<Mat2>) -> Result<Self, ChannelError> {
        Self::with_eps(operators, EPS_KRAUS)
    }

    pub fn with_eps(operators: Vec<Mat2>, eps: f64) -> Result<Self, ChannelError> {
        if operators.is_empty() {
            return Err(ChannelError::EmptyKrausSet);
        }
        let residual = completeness_residual(&operators);
        if residual > eps {
            return Err(ChannelError::IncompleteKraus { residual });
        }
        Ok(Self { operators })
    }

    /// The identity channel {1}.
    pub fn identity() -> Self {
        Self {
            operators: vec![SIGMA_0],
        }
    }

    /// A single-operator set from a unitary.
    pub fn from_unitary(u: Mat2) -> Result<Self, ChannelError> {
        let residual = u.unitarity_residual();
        if residual > EPS_UNITARY {
            return Err(ChannelError::NotUnitary { residual });
        }
        Ok(Self { operators: vec![u] })
    }

    pub fn operators(&self) -> &[Mat2] {
        &self.operators
    }

    pub fn completeness_residual(&self) -> f64 {
        completeness_residual(&self.operators)
    }

    /// Applies the channel: rho -> sum_k V_k rho V_k^dag.
    ///
    /// The output is re-Hermitized ((A + A^dag)/2) to suppress rounding
    /// drift; trace preservation holds to the completeness residual.
    pub fn apply(&self, rho: &DensityMatrix) -> DensityMatrix {
        let mut out = Mat2::zero();
        for v in &self.operators {
            out = out.add(&v.mul(rho.matrix()).mul(&v.adjoint()));
        }
        let herm = out.add(&out.adjoint()).scale(c64(0.5, 0.0));
        DensityMatrix::from_parts_unchecked(herm)
    }

    /// Image of a probability triple under the channel.
    pub fn apply_to_probabilities(&self, p: &ProbabilityTriple) -> ProbabilityTriple {
        self.apply(&p.to_density_matrix()).probabilities()
    }
}

/// Affine action p -> M p + Delta on probability triples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineProbabilityMap {
    pub matrix: Mat3,
    pub shift: [f64; 3],
}

impl AffineProbabilityMap {
    pub fn identity() -> Self {
        Self {
            matrix: Mat3::identity(),
            shift: [0.0; 3],
        }
    }

    /// Raw affine action without box validation.
    pub fn apply_raw(&self, p: [f64; 3]) -> [f64; 3] {
        let mp = self.matrix.mul_vec(&p);
        [
            mp[0] + self.shift[0],
            mp[1] + self.shift[1],
            mp[2] + self.shift[2],
        ]
    }

    /// Affine action with box validation of the image. Images of admissible
    /// triples under trace-preserving CP maps always pass; non-admissible
    /// inputs can be carried outside the box and are rejected.
    pub fn apply(&self, p: &ProbabilityTriple) -> Result<ProbabilityTriple, StateError> {
        let [q1, q2, q3] = self.apply_raw(p.as_array());
        ProbabilityTriple::new(q1, q2, q3)
    }

    /// Composition: (self o inner)(p) = self(inner(p)).
    pub fn compose(&self, inner: &Self) -> Self {
        let matrix = self.matrix.mul(&inner.matrix);
        let shifted = self.apply_raw(inner.shift);
        Self {
            matrix,
            shift: shifted,
        }
    }

    /// Largest entrywise difference over matrix and shift.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let m = self.matrix.max_abs_diff(&other.matrix);
        let s = (0..3)
            .map(|i| (self.shift[i] - other.shift[i]).abs())
            .fold(0.0f64, f64::max);
        m.max(s)
    }
}

/// Homogeneous 4x4 form [[M, Delta], [0, 1]] of an affine map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogeneousMap4 {
    pub matrix: Mat4,
}

impl HomogeneousMap4 {
    pub fn identity() -> Self {
        Self {
            matrix: Mat4::identity(),
        }
    }

    pub fn compose(&self, inner: &Self) -> Self {
        Self {
            matrix: self.matrix.mul(&inner.matrix),
        }
    }

    /// Extracts the affine part back out of the block form.
    pub fn to_affine(&self) -> AffineProbabilityMap {
        let mut m = Mat3::zero();
        let mut shift = [0.0; 3];
        for i in 0..3 {
            m.e[i].copy_from_slice(&self.matrix.e[i][..3]);
            shift[i] = self.matrix.e[i][3];
        }
        AffineProbabilityMap { matrix: m, shift }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.matrix.max_abs_diff(&other.matrix)
    }
}

/// Embeds an affine map in its homogeneous 4x4 form.
pub fn homogeneous4(map: &AffineProbabilityMap) -> HomogeneousMap4 {
    let mut e = [[0.0; 4]; 4];
    for i in 0..3 {
        e[i][..3].copy_from_slice(&map.matrix.e[i]);
        e[i][3] = map.shift[i];
    }
    e[3][3] = 1.0;
    HomogeneousMap4 { matrix: Mat4 { e } }
}

/// Probe states for affine extraction: the ball center and the three pure
/// axis states obtained by moving half a unit along each axis.
fn probe_states() -> [ProbabilityTriple; 4] {
    let mk = |p1, p2, p3| ProbabilityTriple::new(p1, p2, p3).expect("probe state is in the box");
    [
        ProbabilityTriple::MAXIMALLY_MIXED,
        mk(1.0, 0.5, 0.5),
        mk(0.5, 1.0, 0.5),
        mk(0.5, 0.5, 1.0),
    ]
}

/// Extracts the affine probability map of a channel by probing.
///
/// The channel image of the center state fixes the shift once the matrix is
/// known; each matrix column is twice the difference between the image of
/// the corresponding axis state and the image of the center. The map is
/// exactly affine, so the solve has no truncation error.
pub fn affine_from_kraus(kraus: &KrausSet) -> AffineProbabilityMap {
    let [center, px, py, pz] = probe_states();
    let qc = kraus.apply_to_probabilities(&center).as_array();
    let images = [
        kraus.apply_to_probabilities(&px).as_array(),
        kraus.apply_to_probabilities(&py).as_array(),
        kraus.apply_to_probabilities(&pz).as_array(),
    ];
    let mut matrix = Mat3::zero();
    for (col, img) in images.iter().enumerate() {
        for row in 0..3 {
            matrix.e[row][col] = 2.0 * (img[row] - qc[row]);
        }
    }
    let mc = matrix.mul_vec(&center.as_array());
    AffineProbabilityMap {
        matrix,
        shift: [qc[0] - mc[0], qc[1] - mc[1], qc[2] - mc[2]],
    }
}

/// Affine map of a unitary conjugation rho -> u rho u^dag, extracted by the
/// same probes. The matrix acts on the Bloch ball as a rotation.
pub fn affine_from_unitary(u: &Mat2) -> Result<AffineProbabilityMap, ChannelError> {
    Ok(affine_from_kraus(&KrausSet::from_unitary(*u)?))
}

/// Result of evaluating the closed-form affine expressions in the complex
/// basis and conjugating them back to real coordinates.
#[derive(Debug, Clone, Copy)]
pub struct FormulaAffine {
    pub map: AffineProbabilityMap,
    /// Largest imaginary part discarded by the change of basis. Nonzero
    /// values beyond rounding indicate an inconsistent input set.
    pub imaginary_residue: f64,
}

/// Closed-form affine map of a Kraus set in the complex basis (p3, p, p*),
/// conjugated to real (p1, p2, p3) coordinates.
///
/// The matrix part sums over operators and is exact for any complete set.
/// The shift term is evaluated exactly as printed in the source expression,
/// with the constant gamma *inside* the per-operator sum; for sets with K
/// operators this over-counts the constant (K - 1) times, so the shift
/// disagrees with the probe-extracted one unless K = 1. The probe map is
/// authoritative; this form exists as a cross-check and for reporting.
pub fn affine_from_kraus_formula(kraus: &KrausSet) -> FormulaAffine {
    complex_basis_to_real(complex_basis_formula(kraus.operators(), true))
}

/// Same closed form with the constant gamma added once, outside the
/// operator sum. Matches the probe extraction for every complete set.
pub fn affine_from_kraus_formula_corrected(kraus: &KrausSet) -> FormulaAffine {
    complex_basis_to_real(complex_basis_formula(kraus.operators(), false))
}

/// Max-abs difference between the probe-extracted map and the as-printed
/// closed form. Zero (to rounding) for single-operator sets.
pub fn formula_cross_check_residual(kraus: &KrausSet) -> f64 {
    affine_from_kraus(kraus).max_abs_diff(&affine_from_kraus_formula(kraus).map)
}

/// (M_c, Delta_c) acting on the column (p3, p, p*).
fn complex_basis_formula(operators: &[Mat2], gamma_in_sum: bool) -> ([[C64; 3]; 3], [C64; 3]) {
    let zero = c64(0.0, 0.0);
    let mut m = [[zero; 3]; 3];
    let mut delta3 = zero;
    let mut delta = zero;
    for v in operators {
        let v11 = v.e[0][0];
        let v12 = v.e[0][1];
        let v21 = v.e[1][0];
        let v22 = v.e[1][1];
        m[0][0] += v11.norm_sqr() - v12.norm_sqr();
        m[0][1] += v11.conj() * v12;
        m[0][2] += v12.conj() * v11;
        m[1][0] += v11.conj() * v21 - v12.conj() * v22;
        m[1][1] += v11.conj() * v22;
        m[1][2] += v12.conj() * v21;
        m[2][0] += v21.conj() * v11 - v22.conj() * v12;
        m[2][1] += v21.conj() * v12;
        m[2][2] += v22.conj() * v11;
        delta3 += v12.norm_sqr() - GAMMA * v11.conj() * v12 - GAMMA.conj() * v12.conj() * v11;
        delta += v12.conj() * v22 - GAMMA * v11.conj() * v22 - GAMMA.conj() * v12.conj() * v21;
        if gamma_in_sum {
            delta += GAMMA;
        }
    }
    if !gamma_in_sum {
        delta += GAMMA;
    }
    (m, [delta3, delta, delta.conj()])
}

/// Conjugates ((M_c, Delta_c), basis (p3, p, p*)) into real (p1, p2, p3)
/// coordinates: M_r = C^-1 M_c C, Delta_r = C^-1 Delta_c with
/// C = [[0,0,1],[1,i,0],[1,-i,0]].
fn complex_basis_to_real(parts: ([[C64; 3]; 3], [C64; 3])) -> FormulaAffine {
    let (mc, dc) = parts;
    let zero = c64(0.0, 0.0);
    let i = c64(0.0, 1.0);
    let half = c64(0.5, 0.0);
    let c: [[C64; 3]; 3] = [
        [zero, zero, c64(1.0, 0.0)],
        [c64(1.0, 0.0), i, zero],
        [c64(1.0, 0.0), -i, zero],
    ];
    let c_inv: [[C64; 3]; 3] = [
        [zero, half, half],
        [zero, -i * half, i * half],
        [c64(1.0, 0.0), zero, zero],
    ];

    let mul = |a: &[[C64; 3]; 3], b: &[[C64; 3]; 3]| {
        let mut out = [[zero; 3]; 3];
        for r in 0..3 {
            for cc in 0..3 {
                let mut s = zero;
                for (k, b_row) in b.iter().enumerate() {
                    s += a[r][k] * b_row[cc];
                }
                out[r][cc] = s;
            }
        }
        out
    };

    let m_real = mul(&c_inv, &mul(&mc, &c));
    let mut shift_c = [zero; 3];
    for (r, row) in c_inv.iter().enumerate() {
        shift_c[r] = row[0] * dc[0] + row[1] * dc[1] + row[2] * dc[2];
    }

    let mut residue = 0.0f64;
    let mut matrix = Mat3::zero();
    let mut shift = [0.0; 3];
    for r in 0..3 {
        for cc in 0..3 {
            matrix.e[r][cc] = m_real[r][cc].re;
            residue = residue.max(m_real[r][cc].im.abs());
        }
        shift[r] = shift_c[r].re;
        residue = residue.max(shift_c[r].im.abs());
    }
    FormulaAffine {
        map: AffineProbabilityMap { matrix, shift },
        imaginary_residue: residue,
    }
}

/// A 2x2 Hermitian Hamiltonian (hbar = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hamiltonian2 {
    m: Mat2,
}

impl Hamiltonian2 {
    pub fn new(m: Mat2) -> Result<Self, ChannelError> {
        let residual = m.hermiticity_residual();
        if residual > EPS_HERM {
            return Err(ChannelError::NotHermitian { residual });
        }
        Ok(Self { m })
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.m
    }

    /// Decomposition H = c0 1 + c . sigma with real c0 and c.
    pub fn pauli_components(&self) -> (f64, [f64; 3]) {
        let h11 = self.m.e[0][0].re;
        let h22 = self.m.e[1][1].re;
        let h12 = self.m.e[0][1];
        let h21 = self.m.e[1][0];
        let c0 = 0.5 * (h11 + h22);
        let c1 = 0.5 * (h12.re + h21.re);
        // i (H12 - H21) / 2 is real for Hermitian H.
        let c2 = -0.5 * (h12.im - h21.im);
        let c3 = 0.5 * (h11 - h22);
        (c0, [c1, c2, c3])
    }

    /// Closed-form propagator u(t) = exp(-i t H):
    ///
    /// ```text
    /// u(t) = [cos(t h) 1 - i sin(t h) (n . sigma)] exp(-i t (H11 + H22)/2),
    /// ```
    ///
    /// with h = |c| the Pauli-component magnitude and n = c / h the unit
    /// axis (all three components normalized by h). A degenerate
    /// Hamiltonian proportional to the identity (h = 0) returns the phase
    /// factor times the identity.
    pub fn propagator(&self, t: f64) -> Mat2 {
        let (c0, [c1, c2, c3]) = self.pauli_components();
        let phase = (-c64(0.0, 1.0) * c64(t * c0, 0.0)).exp();
        let h = (c1 * c1 + c2 * c2 + c3 * c3).sqrt();
        if h == 0.0 {
            return SIGMA_0.scale(phase);
        }
        let (n1, n2, n3) = (c1 / h, c2 / h, c3 / h);
        let (cos, sin) = ((t * h).cos(), (t * h).sin());
        let msin = c64(0.0, -sin);
        Mat2::new(
            c64(cos, 0.0) + msin * c64(n3, 0.0),
            msin * c64(n1, -n2),
            msin * c64(n1, n2),
            c64(cos, 0.0) - msin * c64(n3, 0.0),
        )
        .scale(phase)
    }
}

/// Transposition rho -> rho^T on probability triples: (p1, p2, p3) ->
/// (p1, 1 - p2, p3). An involution that preserves both the box and the
/// quantum ball, but is positive without being completely positive.
pub fn transposition_map(p: &ProbabilityTriple) -> ProbabilityTriple {
    ProbabilityTriple::new(p.p1(), 1.0 - p.p2(), p.p3()).expect("transposition preserves the box")
}

/// The transposition as an affine map: M = diag(1, -1, 1), Delta = (0, 1, 0).
/// Its matrix determinant is -1, the opposite orientation to every unitary
/// map (rotations have determinant +1).
pub fn transposition_affine() -> AffineProbabilityMap {
    let mut matrix = Mat3::identity();
    matrix.e[1][1] = -1.0;
    AffineProbabilityMap {
        matrix,
        shift: [0.0, 1.0, 0.0],
    }
}

/// Generic positive map: the convex combination
///
/// ```text
/// p -> cos^2(mu) . K(p) + sin^2(mu) . K2(transpose(p))
/// ```
///
/// of a CP image of p and a CP image of the transposed triple. The result
/// stays in the box for admissible input; it need not be quantum-admissible
/// for arbitrary constructions, since positive-but-not-CP maps exist.
pub fn generic_positive_map(
    p: &ProbabilityTriple,
    kraus: &KrausSet,
    kraus2: &KrausSet,
    mu: f64,
) -> Result<ProbabilityTriple, StateError> {
    let w = mu.cos().powi(2);
    let direct = kraus.apply_to_probabilities(p).as_array();
    let transposed = kraus2
        .apply_to_probabilities(&transposition_map(p))
        .as_array();
    ProbabilityTriple::new(
        w * direct[0] + (1.0 - w) * transposed[0],
        w * direct[1] + (1.0 - w) * transposed[1],
        w * direct[2] + (1.0 - w) * transposed[2],
    )
}

/// Euler-angle parametrization of a 2x2 unitary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerUnitary {
    pub psi: f64,
    pub theta: f64,
    pub phi: f64,
}

impl EulerUnitary {
    pub fn new(psi: f64, theta: f64, phi: f64) -> Self {
        Self { psi, theta, phi }
    }

    /// The unitary
    ///
    /// ```text
    /// u11 = cos(theta/2) e^{ i (phi + psi)/2},  u12 = sin(theta/2) e^{ i (phi - psi)/2},
    /// u21 = -sin(theta/2) e^{-i (phi - psi)/2}, u22 = cos(theta/2) e^{-i (phi + psi)/2}.
    /// ```
    ///
    /// The induced probability map depends only on theta and psi; phi moves
    /// phases that cancel in every conjugation.
    pub fn to_matrix(&self) -> Mat2 {
        let ct = (0.5 * self.theta).cos();
        let st = (0.5 * self.theta).sin();
        let plus = 0.5 * (self.phi + self.psi);
        let minus = 0.5 * (self.phi - self.psi);
        Mat2::new(
            c64(ct, 0.0) * c64(plus.cos(), plus.sin()),
            c64(st, 0.0) * c64(minus.cos(), minus.sin()),
            c64(-st, 0.0) * c64(minus.cos(), -minus.sin()),
            c64(ct, 0.0) * c64(plus.cos(), -plus.sin()),
        )
    }
}

/// One sample along a unitary evolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub probabilities: ProbabilityTriple,
    pub square_area_sum: f64,
    pub triangle_area: f64,
}

/// Evolves an admissible triple under exp(-i t H) and reports the triangle
/// areas at each requested time. Unitary evolution keeps the spectrum,
/// purity, and admissibility of the state fixed.
pub fn evolve_trajectory(
    hamiltonian: &Hamiltonian2,
    p0: &ProbabilityTriple,
    times: &[f64],
) -> Result<Vec<TrajectoryPoint>, StateError> {
    if !p0.is_admissible() {
        return Err(StateError::NotAdmissible {
            functional: p0.uncertainty_functional(),
        });
    }
    times
        .iter()
        .map(|&t| {
            let u = hamiltonian.propagator(t);
            let map = affine_from_kraus(&KrausSet { operators: vec![u] });
            let p = map.apply(p0)?;
            Ok(TrajectoryPoint {
                t,
                probabilities: p,
                square_area_sum: malevich_area_sum(&p),
                triangle_area: triangle_area(&p),
            })
        })
        .collect()
}

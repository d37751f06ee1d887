//! Qubit state representations and the conversions among them.
//!
//! A qubit state is held in any of three equivalent forms:
//!
//! - [`DensityMatrix`]: the 2x2 Hermitian, unit-trace, positive-semidefinite
//!   matrix rho;
//! - [`ProbabilityTriple`]: the probabilities (p1, p2, p3) of measuring spin
//!   projection +1/2 along the x, y, z axes;
//! - [`BlochVector`]: the Bloch-ball coordinates (x, y, z) = (2p1-1, 2p2-1, 2p3-1).
//!
//! The probability form carries the quantum-admissibility constraint
//!
//! ```text
//! (p1 - 1/2)^2 + (p2 - 1/2)^2 + (p3 - 1/2)^2 <= 1/4,
//! ```
//!
//! equivalent to the Bloch vector lying inside the unit ball, and to the
//! matrix built from the triple being positive semidefinite. Triples inside
//! the unit box but outside that ball describe three independent classical
//! coins; they are constructible here and flagged, not rejected.

use thiserror::Error;

use crate::math::{c64, Mat2, C64, SIGMA_0, SIGMA_X, SIGMA_Y, SIGMA_Z};

/// Numerical tolerances for validation checks.
///
/// Defaults are sized for double precision and short closed-form arithmetic
/// chains: 1e-12 for exact-by-construction identities (Hermiticity, trace,
/// unit norm, box membership) and 1e-10 for derived quantities (eigenvalues,
/// ball membership, roundtrips).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Hermiticity residual bound.
    pub herm: f64,
    /// Unit-trace deviation bound.
    pub trace: f64,
    /// Unit-norm deviation bound for directions.
    pub norm: f64,
    /// Box-membership slack for probabilities.
    pub box_eps: f64,
    /// Positive-semidefiniteness slack (minimum eigenvalue >= -psd).
    pub psd: f64,
    /// Ball-membership slack for the admissibility functional.
    pub ball: f64,
    /// Eigenvalue comparison slack.
    pub eig: f64,
    /// Roundtrip reconstruction slack.
    pub roundtrip: f64,
}

pub const EPS_HERM: f64 = 1e-12;
pub const EPS_TRACE: f64 = 1e-12;
pub const EPS_NORM: f64 = 1e-12;
pub const EPS_BOX: f64 = 1e-12;
pub const EPS_PSD: f64 = 1e-10;
pub const EPS_BALL: f64 = 1e-10;
pub const EPS_EIG: f64 = 1e-10;
pub const EPS_ROUNDTRIP: f64 = 1e-10;

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            herm: EPS_HERM,
            trace: EPS_TRACE,
            norm: EPS_NORM,
            box_eps: EPS_BOX,
            psd: EPS_PSD,
            ball: EPS_BALL,
            eig: EPS_EIG,
            roundtrip: EPS_ROUNDTRIP,
        }
    }
}

impl Tolerances {
    /// Uniform override: every validation epsilon set to `eps`.
    pub fn uniform(eps: f64) -> Self {
        Self {
            herm: eps,
            trace: eps,
            norm: eps,
            box_eps: eps,
            psd: eps,
            ball: eps,
            eig: eps,
            roundtrip: eps,
        }
    }
}

/// Validation failures for state inputs.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("probability p{component} = {value} lies outside [0, 1]")]
    OutOfBox { component: usize, value: f64 },

    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("matrix trace is {trace:?}, expected 1")]
    TraceNotUnit { trace: (f64, f64) },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("triple is not quantum-admissible (sum of squared offsets {functional} > 1/4)")]
    NotAdmissible { functional: f64 },
}

/// Probabilities of spin projection +1/2 along the x, y, and z axes.
///
/// Membership of the unit box [0,1]^3 is enforced at construction; quantum
/// admissibility is a queried flag, so classical-coin triples outside the
/// ball remain representable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbabilityTriple {
    p1: f64,
    p2: f64,
    p3: f64,
}

impl ProbabilityTriple {
    /// The maximally mixed state (1/2, 1/2, 1/2).
    pub const MAXIMALLY_MIXED: Self = Self {
        p1: 0.5,
        p2: 0.5,
        p3: 0.5,
    };

    pub fn new(p1: f64, p2: f64, p3: f64) -> Result<Self, StateError> {
        Self::with_box_eps(p1, p2, p3, EPS_BOX)
    }

    pub fn with_box_eps(p1: f64, p2: f64, p3: f64, eps: f64) -> Result<Self, StateError> {
        for (i, p) in [p1, p2, p3].into_iter().enumerate() {
            if !p.is_finite() || p < -eps || p > 1.0 + eps {
                return Err(StateError::OutOfBox {
                    component: i + 1,
                    value: p,
                });
            }
        }
        Ok(Self {
            p1: p1.clamp(0.0, 1.0),
            p2: p2.clamp(0.0, 1.0),
            p3: p3.clamp(0.0, 1.0),
        })
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn p2(&self) -> f64 {
        self.p2
    }

    pub fn p3(&self) -> f64 {
        self.p3
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.p1, self.p2, self.p3]
    }

    /// Sum of squared offsets from the center, Sum_k (p_k - 1/2)^2.
    ///
    /// At most 1/4 for quantum states, with equality exactly on the pure
    /// states; up to 3/4 at the corners of the classical box.
    pub fn uncertainty_functional(&self) -> f64 {
        let d1 = self.p1 - 0.5;
        let d2 = self.p2 - 0.5;
        let d3 = self.p3 - 0.5;
        d1 * d1 + d2 * d2 + d3 * d3
    }

    /// Whether the triple satisfies the quantum admissibility inequality
    /// within the default ball tolerance.
    pub fn is_admissible(&self) -> bool {
        self.is_admissible_with(EPS_BALL)
    }

    pub fn is_admissible_with(&self, ball_eps: f64) -> bool {
        self.uncertainty_functional() <= 0.25 + ball_eps
    }

    /// Density matrix built from the triple:
    ///
    /// ```text
    /// rho = [ p3                    p1 - i p2 - 1/2 + i/2 ]
    ///       [ p1 + i p2 - 1/2 - i/2 1 - p3               ]
    /// ```
    ///
    /// Hermitian with unit trace by construction; positive semidefinite
    /// exactly when the triple is quantum-admissible. Non-admissible triples
    /// intentionally produce indefinite matrices for boundary studies.
    pub fn to_density_matrix(&self) -> DensityMatrix {
        let off = c64(self.p1 - 0.5, 0.5 - self.p2);
        DensityMatrix {
            m: Mat2::new(c64(self.p3, 0.0), off, off.conj(), c64(1.0 - self.p3, 0.0)),
        }
    }

    /// Bloch coordinates (2 p_k - 1).
    pub fn to_bloch(&self) -> BlochVector {
        BlochVector {
            x: 2.0 * self.p1 - 1.0,
            y: 2.0 * self.p2 - 1.0,
            z: 2.0 * self.p3 - 1.0,
        }
    }

    /// Eigenvalues and Shannon entropy of the corresponding density matrix.
    ///
    /// The closed form is lambda_{1,2} = 1/2 +- sqrt(uncertainty functional);
    /// rejects non-admissible triples, whose lambda_2 would be negative.
    pub fn spectral_data(&self) -> Result<SpectralData, StateError> {
        let f = self.uncertainty_functional();
        if f > 0.25 + EPS_BALL {
            return Err(StateError::NotAdmissible { functional: f });
        }
        let r = f.min(0.25).sqrt();
        let lambda1 = 0.5 + r;
        let lambda2 = 0.5 - r;
        Ok(SpectralData {
            lambda1,
            lambda2,
            entropy: -xlnx(lambda1) - xlnx(lambda2),
        })
    }

    /// Purity Tr(rho^2) = lambda1^2 + lambda2^2 of the corresponding state.
    pub fn purity(&self) -> f64 {
        0.5 + 2.0 * self.uncertainty_functional()
    }
}

/// x ln x with the 0 ln 0 = 0 convention.
fn xlnx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// Bloch-ball coordinates of a qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Inside the closed unit ball within the default tolerance.
    pub fn is_admissible(&self) -> bool {
        self.norm_sqr() <= 1.0 + EPS_BALL
    }

    /// Inverse of [`ProbabilityTriple::to_bloch`]: p_k = (r_k + 1) / 2.
    pub fn to_probabilities(&self) -> Result<ProbabilityTriple, StateError> {
        ProbabilityTriple::new(
            0.5 * (self.x + 1.0),
            0.5 * (self.y + 1.0),
            0.5 * (self.z + 1.0),
        )
    }
}

/// A 2x2 density matrix: Hermitian, unit trace and, for physically valid
/// states, positive semidefinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    m: Mat2,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace, and positive semidefiniteness with
    /// the default tolerances.
    pub fn new(m: Mat2) -> Result<Self, StateError> {
        Self::with_tolerances(m, &Tolerances::default())
    }

    pub fn with_tolerances(m: Mat2, tol: &Tolerances) -> Result<Self, StateError> {
        let herm = m.hermiticity_residual();
        if herm > tol.herm {
            return Err(StateError::NotHermitian { residual: herm });
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > tol.trace || tr.im.abs() > tol.trace {
            return Err(StateError::TraceNotUnit {
                trace: (tr.re, tr.im),
            });
        }
        let min_ev = m.hermitian_eigenvalues()[1];
        if min_ev < -tol.psd {
            return Err(StateError::NotPositive {
                min_eigenvalue: min_ev,
            });
        }
        Ok(Self { m })
    }

    /// Wraps a matrix that is Hermitian and unit-trace by construction,
    /// skipping the positivity gate. Used by the probability-triple builder,
    /// which must be able to represent non-physical box triples.
    pub(crate) fn from_parts_unchecked(m: Mat2) -> Self {
        Self { m }
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.m.e[i][j]
    }

    /// Probabilities p_k = (Tr(rho sigma_k) + 1) / 2, read off the entries.
    ///
    /// Results are clamped to [0, 1]; for matrices passing validation the
    /// clamp magnitude is bounded by the positivity tolerance.
    pub fn probabilities(&self) -> ProbabilityTriple {
        let p1 = self.m.e[1][0].re + 0.5;
        let p2 = self.m.e[1][0].im + 0.5;
        let p3 = 0.5 * (self.m.e[0][0].re - self.m.e[1][1].re + 1.0);
        ProbabilityTriple {
            p1: p1.clamp(0.0, 1.0),
            p2: p2.clamp(0.0, 1.0),
            p3: p3.clamp(0.0, 1.0),
        }
    }

    pub fn eigenvalues(&self) -> [f64; 2] {
        self.m.hermitian_eigenvalues()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[1]
    }

    pub fn is_positive(&self, psd_eps: f64) -> bool {
        self.min_eigenvalue() >= -psd_eps
    }

    pub fn purity(&self) -> f64 {
        self.m.mul(&self.m).trace().re
    }
}

/// Measurement direction given by polar angles: the unit vector
/// n = (sin(beta) cos(alpha), sin(beta) sin(alpha), cos(beta)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    pub alpha: f64,
    pub beta: f64,
}

impl Direction {
    pub fn new(alpha: f64, beta: f64) -> Self {
        Self { alpha, beta }
    }

    pub fn unit_vector(&self) -> [f64; 3] {
        [
            self.beta.sin() * self.alpha.cos(),
            self.beta.sin() * self.alpha.sin(),
            self.beta.cos(),
        ]
    }
}

/// Eigenvalues (descending) and Shannon entropy (nats) of a qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralData {
    pub lambda1: f64,
    pub lambda2: f64,
    pub entropy: f64,
}

/// Spin tomogram of a state along a measurement direction: the probabilities
/// (w_plus, w_minus) of projections +1/2 and -1/2 along n.
///
/// Computed as w_± = (1 ± n·r)/2 with r the Bloch vector; equals the
/// diagonal of u rho u^dag in the frame rotated onto n. Rejects triples
/// outside the quantum ball.
pub fn tomogram(p: &ProbabilityTriple, n: &Direction) -> Result<(f64, f64), StateError> {
    if !p.is_admissible() {
        return Err(StateError::NotAdmissible {
            functional: p.uncertainty_functional(),
        });
    }
    let r = p.to_bloch();
    let [nx, ny, nz] = n.unit_vector();
    let dot = nx * r.x + ny * r.y + nz * r.z;
    let w_plus = 0.5 * (1.0 + dot);
    Ok((w_plus, 1.0 - w_plus))
}

/// Expansion rho = (sigma_0 + sum_k (2 p_k - 1) sigma_k) / 2, kept as an
/// alternative construction route for consistency checks.
pub fn density_from_pauli_expansion(p: &ProbabilityTriple) -> Mat2 {
    let b = p.to_bloch();
    SIGMA_0
        .add(&SIGMA_X.scale(c64(b.x, 0.0)))
        .add(&SIGMA_Y.scale(c64(b.y, 0.0)))
        .add(&SIGMA_Z.scale(c64(b.z, 0.0)))
        .scale(c64(0.5, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn p(p1: f64, p2: f64, p3: f64) -> ProbabilityTriple {
        ProbabilityTriple::new(p1, p2, p3).unwrap()
    }

    #[test]
    fn maximally_mixed_density_matrix_is_half_identity() {
        let rho = ProbabilityTriple::MAXIMALLY_MIXED.to_density_matrix();
        assert!(rho.matrix().max_abs_diff(&SIGMA_0.scale(c64(0.5, 0.0))) < 1e-15);
    }

    #[test]
    fn z_projector_from_probabilities() {
        let rho = p(0.5, 0.5, 1.0).to_density_matrix();
        let expected = Mat2::new(c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0));
        assert!(rho.matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn x_projector_matches_pauli_expansion_oracle() {
        // Oracle: expand (sigma_0 + sum (2p-1) sigma)/2 directly.
        let triple = p(1.0, 0.5, 0.5);
        let rho = triple.to_density_matrix();
        let oracle = density_from_pauli_expansion(&triple);
        assert!(rho.matrix().max_abs_diff(&oracle) < 1e-15);
        let expected = Mat2::new(c64(0.5, 0.0), c64(0.5, 0.0), c64(0.5, 0.0), c64(0.5, 0.0));
        assert!(rho.matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn out_of_box_probability_rejected() {
        assert!(matches!(
            ProbabilityTriple::new(1.5, 0.5, 0.5),
            Err(StateError::OutOfBox { component: 1, .. })
        ));
        assert!(ProbabilityTriple::new(1.0 + 1e-13, 0.5, 0.5).is_ok());
        assert!(ProbabilityTriple::new(-1e-11, 0.5, 0.5).is_err());
    }

    #[test]
    fn probabilities_from_density_matrix_examples() {
        let mixed = DensityMatrix::new(SIGMA_0.scale(c64(0.5, 0.0))).unwrap();
        assert_eq!(mixed.probabilities().as_array(), [0.5, 0.5, 0.5]);

        let z_proj = DensityMatrix::new(Mat2::new(
            c64(1.0, 0.0),
            c64(0.0, 0.0),
            c64(0.0, 0.0),
            c64(0.0, 0.0),
        ))
        .unwrap();
        assert_eq!(z_proj.probabilities().as_array(), [0.5, 0.5, 1.0]);

        let y_state = DensityMatrix::new(Mat2::new(
            c64(0.5, 0.0),
            c64(0.0, -0.5),
            c64(0.0, 0.5),
            c64(0.5, 0.0),
        ))
        .unwrap();
        assert_eq!(y_state.probabilities().as_array(), [0.5, 1.0, 0.5]);
    }

    #[test]
    fn invalid_density_matrices_rejected() {
        let non_hermitian = Mat2::new(c64(0.5, 0.0), c64(0.3, 0.0), c64(0.1, 0.0), c64(0.5, 0.0));
        assert!(matches!(
            DensityMatrix::new(non_hermitian),
            Err(StateError::NotHermitian { .. })
        ));

        let bad_trace = Mat2::new(c64(0.7, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(0.5, 0.0));
        assert!(matches!(
            DensityMatrix::new(bad_trace),
            Err(StateError::TraceNotUnit { .. })
        ));

        let indefinite = Mat2::new(c64(1.2, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(-0.2, 0.0));
        assert!(matches!(
            DensityMatrix::new(indefinite),
            Err(StateError::NotPositive { .. })
        ));
    }

    #[test]
    fn bloch_conversion_examples() {
        assert_eq!(
            ProbabilityTriple::MAXIMALLY_MIXED.to_bloch(),
            BlochVector::new(0.0, 0.0, 0.0)
        );
        assert_eq!(p(0.5, 0.5, 1.0).to_bloch(), BlochVector::new(0.0, 0.0, 1.0));
        assert_eq!(p(1.0, 0.5, 0.5).to_bloch(), BlochVector::new(1.0, 0.0, 0.0));
    }

    #[test]
    fn bloch_roundtrip_exact_on_dyadic_grid() {
        for i in 0..=64 {
            let v = i as f64 / 64.0;
            let triple = p(v, 1.0 - v, 0.5);
            let back = triple.to_bloch().to_probabilities().unwrap();
            assert_eq!(back, triple);
        }
    }

    #[test]
    fn uncertainty_functional_examples() {
        assert_eq!(
            ProbabilityTriple::MAXIMALLY_MIXED.uncertainty_functional(),
            0.0
        );
        assert_abs_diff_eq!(p(0.5, 0.5, 1.0).uncertainty_functional(), 0.25);
        assert_abs_diff_eq!(p(1.0, 1.0, 1.0).uncertainty_functional(), 0.75);
        assert!(!p(1.0, 1.0, 1.0).is_admissible());
    }

    #[test]
    fn spectral_data_examples() {
        let s = ProbabilityTriple::MAXIMALLY_MIXED.spectral_data().unwrap();
        assert_eq!([s.lambda1, s.lambda2], [0.5, 0.5]);
        assert_abs_diff_eq!(s.entropy, std::f64::consts::LN_2, epsilon = 1e-15);

        let s = p(0.5, 0.5, 1.0).spectral_data().unwrap();
        assert_eq!([s.lambda1, s.lambda2], [1.0, 0.0]);
        assert_eq!(s.entropy, 0.0);

        // Oracle: numerically diagonalize the built matrix.
        let triple = p(0.5, 0.5, 0.75);
        let s = triple.spectral_data().unwrap();
        let evs = triple.to_density_matrix().eigenvalues();
        assert_abs_diff_eq!(s.lambda1, evs[0], epsilon = EPS_EIG);
        assert_abs_diff_eq!(s.lambda2, evs[1], epsilon = EPS_EIG);
        assert_abs_diff_eq!(s.lambda1, 0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(s.lambda2, 0.25, epsilon = 1e-15);
        let expected_h = -0.75f64 * 0.75f64.ln() - 0.25 * 0.25f64.ln();
        assert_abs_diff_eq!(s.entropy, expected_h, epsilon = 1e-15);

        assert!(p(1.0, 1.0, 1.0).spectral_data().is_err());
    }

    #[test]
    fn tomogram_examples() {
        let any_n = Direction::new(0.7, 1.1);
        let (wp, wm) = tomogram(&ProbabilityTriple::MAXIMALLY_MIXED, &any_n).unwrap();
        assert_abs_diff_eq!(wp, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(wm, 0.5, epsilon = 1e-15);

        let z = p(0.5, 0.5, 1.0);
        let (wp, wm) = tomogram(&z, &Direction::new(0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(wp, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(wm, 0.0, epsilon = 1e-15);

        let (wp, wm) = tomogram(&z, &Direction::new(0.0, std::f64::consts::FRAC_PI_2)).unwrap();
        assert_abs_diff_eq!(wp, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(wm, 0.5, epsilon = 1e-15);

        assert!(tomogram(&p(1.0, 1.0, 1.0), &any_n).is_err());
    }

    #[test]
    fn purity_matches_matrix_trace_square() {
        for triple in [
            ProbabilityTriple::MAXIMALLY_MIXED,
            p(0.5, 0.5, 1.0),
            p(0.6, 0.45, 0.7),
        ] {
            assert_abs_diff_eq!(
                triple.purity(),
                triple.to_density_matrix().purity(),
                epsilon = 1e-14
            );
        }
    }
}

//! Input parsing: inline-JSON-or-file sources, the state schema, and the
//! shared complex-matrix encoding used for Hamiltonians and Kraus operators.
//!
//! Complex numbers are `[re, im]` pairs; a 2x2 complex matrix is
//! `[[[re,im],[re,im]],[[re,im],[re,im]]]` (row-major); a Kraus set is a
//! JSON array of such matrices. States are one of
//! `{"probabilities":[p1,p2,p3]}`, `{"bloch":[x,y,z]}`, or
//! `{"density": <complex matrix>}`.

use serde::Deserialize;

use malevich_core::channel::{Hamiltonian2, KrausSet};
use malevich_core::math::{c64, Mat2};
use malevich_core::qubit::{DensityMatrix, ProbabilityTriple, Tolerances};

use crate::CliError;

pub type ComplexMatrixJson = [[[f64; 2]; 2]; 2];

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateInputJson {
    pub probabilities: Option<[f64; 3]>,
    pub bloch: Option<[f64; 3]>,
    pub density: Option<ComplexMatrixJson>,
}

/// Reads `--input`-style arguments: inline JSON if the text looks like a
/// JSON document, otherwise a file path.
pub fn read_source(arg: &str) -> Result<String, CliError> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg)
        .map_err(|e| CliError::Io(format!("cannot read input '{arg}': {e}")))
}

pub fn mat2_from_json(m: &ComplexMatrixJson) -> Mat2 {
    Mat2::new(
        c64(m[0][0][0], m[0][0][1]),
        c64(m[0][1][0], m[0][1][1]),
        c64(m[1][0][0], m[1][0][1]),
        c64(m[1][1][0], m[1][1][1]),
    )
}

/// Parses a state source into a probability triple under the given
/// tolerances. Exactly one of the three encodings must be present.
pub fn parse_state(arg: &str, tol: &Tolerances) -> Result<ProbabilityTriple, CliError> {
    let text = read_source(arg)?;
    let parsed: StateInputJson = serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("invalid state JSON: {e}")))?;
    let variants = [
        parsed.probabilities.is_some(),
        parsed.bloch.is_some(),
        parsed.density.is_some(),
    ]
    .iter()
    .filter(|present| **present)
    .count();
    if variants != 1 {
        return Err(CliError::Validation(format!(
            "state must contain exactly one of 'probabilities', 'bloch', 'density' ({variants} present)"
        )));
    }
    if let Some([p1, p2, p3]) = parsed.probabilities {
        return ProbabilityTriple::with_box_eps(p1, p2, p3, tol.box_eps).map_err(CliError::from);
    }
    if let Some([x, y, z]) = parsed.bloch {
        return ProbabilityTriple::with_box_eps(
            0.5 * (x + 1.0),
            0.5 * (y + 1.0),
            0.5 * (z + 1.0),
            tol.box_eps,
        )
        .map_err(CliError::from);
    }
    let m = mat2_from_json(&parsed.density.expect("variant checked"));
    let rho = DensityMatrix::with_tolerances(m, tol).map_err(CliError::from)?;
    Ok(rho.probabilities())
}

/// Parses a Hamiltonian source (a bare complex matrix).
pub fn parse_hamiltonian(arg: &str) -> Result<Hamiltonian2, CliError> {
    let text = read_source(arg)?;
    let parsed: ComplexMatrixJson = serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("invalid Hamiltonian JSON: {e}")))?;
    Hamiltonian2::new(mat2_from_json(&parsed)).map_err(CliError::from)
}

/// Parses a Kraus source (a bare array of complex matrices) under the given
/// completeness tolerance.
pub fn parse_kraus(arg: &str, eps: f64) -> Result<KrausSet, CliError> {
    let text = read_source(arg)?;
    let parsed: Vec<ComplexMatrixJson> = serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("invalid Kraus JSON: {e}")))?;
    let operators: Vec<Mat2> = parsed.iter().map(mat2_from_json).collect();
    KrausSet::with_eps(operators, eps).map_err(CliError::from)
}

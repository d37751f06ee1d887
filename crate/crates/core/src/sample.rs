//! Seeded sampling of states, directions, unitaries, Hamiltonians, and Kraus
//! sets. Everything is driven by a caller-supplied RNG so runs are
//! reproducible from a single seed.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::channel::{EulerUnitary, Hamiltonian2, KrausSet};
use crate::math::{c64, hermitian_inv_sqrt, Mat2};
use crate::qubit::ProbabilityTriple;

/// The canonical seeded RNG for every sampling operation in this crate.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform triple in the unit box [0,1]^3 (classical coins allowed).
pub fn random_box_triple<R: Rng>(rng: &mut R) -> ProbabilityTriple {
    ProbabilityTriple::new(rng.gen(), rng.gen(), rng.gen()).expect("uniform draw is in the box")
}

/// Uniform triple in the quantum ball, by rejection from the box.
pub fn random_admissible_triple<R: Rng>(rng: &mut R) -> ProbabilityTriple {
    loop {
        let p = random_box_triple(rng);
        if p.uncertainty_functional() <= 0.25 {
            return p;
        }
    }
}

/// Euler angles drawn uniformly: psi, phi in [0, 2pi), theta in [0, pi].
pub fn random_euler<R: Rng>(rng: &mut R) -> EulerUnitary {
    EulerUnitary::new(
        rng.gen_range(0.0..std::f64::consts::TAU),
        rng.gen_range(0.0..=std::f64::consts::PI),
        rng.gen_range(0.0..std::f64::consts::TAU),
    )
}

/// Random Hermitian 2x2 matrix with entries of order unity.
pub fn random_hamiltonian<R: Rng>(rng: &mut R) -> Hamiltonian2 {
    let off = c64(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    let m = Mat2::new(
        c64(rng.gen_range(-2.0..2.0), 0.0),
        off,
        off.conj(),
        c64(rng.gen_range(-2.0..2.0), 0.0),
    );
    Hamiltonian2::new(m).expect("constructed Hermitian")
}

/// Random complete Kraus set with `n_operators` operators.
///
/// Draws raw complex matrices G_k and right-multiplies each by
/// T^{-1/2} with T = sum_k G_k^dag G_k, which enforces completeness
/// exactly (to rounding).
pub fn random_kraus_set<R: Rng>(rng: &mut R, n_operators: usize) -> KrausSet {
    assert!(n_operators >= 1);
    let raw: Vec<Mat2> = (0..n_operators)
        .map(|_| {
            Mat2::new(
                random_c64(rng),
                random_c64(rng),
                random_c64(rng),
                random_c64(rng),
            )
        })
        .collect();
    let mut total = Mat2::zero();
    for g in &raw {
        total = total.add(&g.adjoint().mul(g));
    }
    let normalizer = hermitian_inv_sqrt(&total);
    let operators = raw.iter().map(|g| g.mul(&normalizer)).collect();
    KrausSet::new(operators).expect("normalized set is complete")
}

fn random_c64<R: Rng>(rng: &mut R) -> crate::math::C64 {
    c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

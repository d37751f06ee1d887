//! Qubit states in the probability representation, with their triangle
//! geometry and channel algebra.
//!
//! A qubit state is held as the triple (p1, p2, p3) of probabilities of
//! spin projection +1/2 along the x, y, z axes, constrained to the quantum
//! ball sum_k (p_k - 1/2)^2 <= 1/4. The crate converts among the density
//! matrix, Bloch vector, and probability forms ([`qubit`]), draws the triple
//! as a triangle inscribed in an equilateral triangle of side sqrt(2) with
//! the associated square areas ([`triangle`]), expresses channels as affine
//! maps of the triple with a 4x4 homogeneous group representation
//! ([`channel`]), renders the figures as SVG ([`render`]), and provides
//! seeded sampling for verification sweeps ([`sample`]).

#![forbid(unsafe_code)]

pub mod channel;
pub mod math;
pub mod qubit;
pub mod render;
pub mod sample;
pub mod triangle;

pub use channel::{
    affine_from_kraus, affine_from_kraus_formula, affine_from_unitary, evolve_trajectory,
    generic_positive_map, homogeneous4, transposition_map, AffineProbabilityMap, ChannelError,
    EulerUnitary, Hamiltonian2, HomogeneousMap4, KrausSet, TrajectoryPoint,
};
pub use qubit::{
    tomogram, BlochVector, DensityMatrix, Direction, ProbabilityTriple, SpectralData, StateError,
    Tolerances,
};
pub use render::{render, FigureKind, FigureSpec, RenderError};
pub use triangle::{
    area_report, malevich_area_sum, place_vertices, quantum_area_bounds, side_lengths_closed_form,
    triangle_area, AreaReport, Classification, TriangleFigure,
};

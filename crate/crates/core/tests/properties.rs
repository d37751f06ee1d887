//! Property tests for the algebraic invariants of the state conversions,
//! triangle geometry, and channel maps.

use approx::assert_abs_diff_eq;
use proptest::prelude::*;

use malevich_core::channel::{transposition_map, EulerUnitary};
use malevich_core::qubit::{tomogram, Direction, ProbabilityTriple};
use malevich_core::triangle::{
    malevich_area_sum, place_vertices, side_lengths_closed_form, triangle_area,
};

fn box_triple() -> impl Strategy<Value = ProbabilityTriple> {
    (0.0..=1.0f64, 0.0..=1.0f64, 0.0..=1.0f64)
        .prop_map(|(p1, p2, p3)| ProbabilityTriple::new(p1, p2, p3).unwrap())
}

fn admissible_triple() -> impl Strategy<Value = ProbabilityTriple> {
    box_triple().prop_filter("inside the quantum ball", |p| {
        p.uncertainty_functional() <= 0.25
    })
}

fn shoelace(v: &[[f64; 2]; 3]) -> f64 {
    0.5 * ((v[1][0] - v[0][0]) * (v[2][1] - v[0][1]) - (v[2][0] - v[0][0]) * (v[1][1] - v[0][1]))
        .abs()
}

proptest! {
    #[test]
    fn probability_roundtrip_through_density_matrix(p in admissible_triple()) {
        let back = p.to_density_matrix().probabilities();
        for (a, b) in back.as_array().iter().zip(p.as_array()) {
            prop_assert!((a - b).abs() <= 1e-10);
        }
    }

    #[test]
    fn bloch_roundtrip(p in box_triple()) {
        let back = p.to_bloch().to_probabilities().unwrap();
        for (a, b) in back.as_array().iter().zip(p.as_array()) {
            prop_assert!((a - b).abs() <= 1e-15);
        }
    }

    #[test]
    fn ball_constraint_equals_bloch_ball_constraint(p in box_triple()) {
        // Sum (p_k - 1/2)^2 <= 1/4 is the same ball as x^2+y^2+z^2 <= 1.
        let f = p.uncertainty_functional();
        let r2 = p.to_bloch().norm_sqr();
        prop_assert!((4.0 * f - r2).abs() <= 1e-12);
        prop_assert_eq!(f <= 0.25, r2 <= 1.0);
    }

    #[test]
    fn psd_iff_admissible(p in box_triple()) {
        let admissible = p.uncertainty_functional() <= 0.25 + 1e-10;
        let psd = p.to_density_matrix().min_eigenvalue() >= -1e-10;
        prop_assert_eq!(admissible, psd);
    }

    #[test]
    fn purity_saturates_exactly_on_the_sphere(p in admissible_triple()) {
        let pure = (p.uncertainty_functional() - 0.25).abs() <= 1e-12;
        let unit_purity = (p.purity() - 1.0).abs() <= 1e-10;
        prop_assert_eq!(pure, unit_purity);
    }

    #[test]
    fn tomogram_normalizes(p in admissible_triple(),
                           alpha in 0.0..std::f64::consts::TAU,
                           beta in 0.0..std::f64::consts::PI) {
        let (wp, wm) = tomogram(&p, &Direction::new(alpha, beta)).unwrap();
        prop_assert!(wp + wm == 1.0);
        prop_assert!((0.0..=1.0).contains(&wp));
    }

    #[test]
    fn square_area_sum_is_sum_of_squared_sides(p in box_triple()) {
        let y = side_lengths_closed_form(&p);
        let sum: f64 = y.iter().map(|v| v * v).sum();
        prop_assert!((malevich_area_sum(&p) - sum).abs() <= 1e-10);
    }

    #[test]
    fn closed_form_sides_match_placed_vertices(p in box_triple()) {
        let fig = place_vertices(&p);
        let closed = side_lengths_closed_form(&p);
        for k in 0..3 {
            prop_assert!((fig.side_lengths[k] - closed[k]).abs() <= 1e-10);
            prop_assert!((0.0..=std::f64::consts::SQRT_2 + 1e-12).contains(&closed[k]));
        }
    }

    #[test]
    fn heron_area_matches_shoelace(p in box_triple()) {
        let fig = place_vertices(&p);
        prop_assert!((triangle_area(&p) - shoelace(&fig.vertices)).abs() <= 1e-7);
    }

    #[test]
    fn s_is_cyclic_and_bounded(p in box_triple()) {
        let [p1, p2, p3] = p.as_array();
        let s = malevich_area_sum(&p);
        let rotated = ProbabilityTriple::new(p2, p3, p1).unwrap();
        prop_assert!((s - malevich_area_sum(&rotated)).abs() <= 1e-12);
        prop_assert!((0.0..=6.0 + 1e-12).contains(&s));
    }

    #[test]
    fn quantum_s_stays_strictly_inside(p in admissible_triple()) {
        let s = malevich_area_sum(&p);
        prop_assert!(s > 0.0 && s < 6.0);
    }

    #[test]
    fn transposition_is_an_involution_preserving_both_regions(p in box_triple()) {
        let t = transposition_map(&p);
        prop_assert!((0.0..=1.0).contains(&t.p2()));
        prop_assert_eq!(t.is_admissible(), p.is_admissible());
        let back = transposition_map(&t);
        for (a, b) in back.as_array().iter().zip(p.as_array()) {
            prop_assert!((a - b).abs() <= 1e-15);
        }
    }

    #[test]
    fn euler_matrices_are_unitary(psi in 0.0..std::f64::consts::TAU,
                                  theta in 0.0..std::f64::consts::PI,
                                  phi in -10.0..10.0f64) {
        let u = EulerUnitary::new(psi, theta, phi).to_matrix();
        prop_assert!(u.unitarity_residual() <= 1e-12);
    }
}

/// Boundary probes for the constraint equivalence: triples a hair inside and
/// outside the sphere classify consistently through both routes.
#[test]
fn constraint_equivalence_at_the_boundary() {
    for eps in [-1e-6, -1e-12, 1e-12, 1e-6] {
        let radius: f64 = 0.25 + eps;
        let offset = (radius / 3.0).sqrt();
        let p = ProbabilityTriple::new(0.5 + offset, 0.5 + offset, 0.5 + offset).unwrap();
        let f = p.uncertainty_functional();
        let r2 = p.to_bloch().norm_sqr();
        assert_eq!(f <= 0.25, r2 <= 1.0, "eps = {eps}");
        assert_abs_diff_eq!(4.0 * f, r2, epsilon = 1e-12);
    }
}

/// Closed-form eigenvalues against an independent determinant-route
/// diagonalization of the built matrix.
#[test]
fn spectral_consistency_on_random_triples() {
    let mut rng = malevich_core::sample::rng_from_seed(11);
    for _ in 0..10_000 {
        let p = malevich_core::sample::random_admissible_triple(&mut rng);
        let s = p.spectral_data().unwrap();
        let m = p.to_density_matrix();
        let t = m.matrix().trace().re;
        let d = m.matrix().det().re;
        let r = (0.25 * t * t - d).max(0.0).sqrt();
        assert!((s.lambda1 - (0.5 * t + r)).abs() <= 1e-10);
        assert!((s.lambda2 - (0.5 * t - r)).abs() <= 1e-10);
    }
}

/// Roundtrip sweep at the scale the module contract asks for.
#[test]
fn roundtrip_sweep_ten_thousand_samples() {
    let mut rng = malevich_core::sample::rng_from_seed(7);
    for _ in 0..10_000 {
        let p = malevich_core::sample::random_admissible_triple(&mut rng);
        let back = p.to_density_matrix().probabilities();
        for (a, b) in back.as_array().iter().zip(p.as_array()) {
            assert!((a - b).abs() <= 1e-10);
        }
        assert!(back.is_admissible());
    }
}

//! Triangle geometry of a probability triple.
//!
//! A triple (p1, p2, p3) is drawn as three points A1, A2, A3 on the sides of
//! a fixed equilateral triangle of side sqrt(2): vertex A_k sits on the side
//! running from outer vertex k to outer vertex k+1 (cyclically), at arc
//! distance d_k = p_k * sqrt(2) from vertex k. The inscribed triangle
//! A1 A2 A3 and the three squares erected on its sides carry the state
//! geometry: the side lengths y_k, the total square area S = y1^2+y2^2+y3^2,
//! and the triangle area S_tr.
//!
//! For the maximally mixed triple (1/2, 1/2, 1/2) the inscribed triangle is
//! the medial triangle: side 1/sqrt(2), per-square area 1/2, S = 3/2, and
//! triangle area sqrt(3)/8. (Alternative figures occasionally quoted for
//! this case — unit square sides and triangle area sqrt(3)/4 — are
//! inconsistent with the side-length formula below; this crate uses the
//! formula-consistent values throughout.)

use crate::qubit::ProbabilityTriple;

/// Side length of the outer equilateral triangle.
pub const OUTER_SIDE: f64 = std::f64::consts::SQRT_2;

/// Outer triangle vertices: 1 = (0,0), 2 = (sqrt2, 0), 3 = (sqrt2/2, sqrt6/2).
pub const OUTER_VERTICES: [[f64; 2]; 3] = [
    [0.0, 0.0],
    [std::f64::consts::SQRT_2, 0.0],
    [
        std::f64::consts::SQRT_2 / 2.0,
        1.224744871391589049, // sqrt(6)/2
    ],
];

/// Classification of a triple by the quantum admissibility inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// Inside the box but outside the quantum ball: three classical coins only.
    ClassicalOnly,
    /// Inside the quantum ball: a valid qubit state.
    QuantumAdmissible,
}

/// The inscribed triangle of a probability triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleFigure {
    /// Cartesian coordinates of A1, A2, A3.
    pub vertices: [[f64; 2]; 3],
    /// Euclidean side lengths (y1, y2, y3), y_k = |A_k A_{k+1}|.
    pub side_lengths: [f64; 3],
    /// Arc distances d_k = p_k * sqrt(2) from outer vertex k.
    pub distances: [f64; 3],
}

/// Areas derived from the inscribed triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AreaReport {
    /// S = y1^2 + y2^2 + y3^2, the total area of the three squares.
    pub square_area_sum: f64,
    /// S_tr, the area of the inscribed triangle.
    pub triangle_area: f64,
    pub classification: Classification,
}

/// Places A_k on the outer side from vertex k toward vertex k+1 at arc
/// distance p_k * sqrt(2), and measures the inscribed side lengths.
pub fn place_vertices(p: &ProbabilityTriple) -> TriangleFigure {
    let ps = p.as_array();
    let mut vertices = [[0.0; 2]; 3];
    for k in 0..3 {
        let a = OUTER_VERTICES[k];
        let b = OUTER_VERTICES[(k + 1) % 3];
        vertices[k] = [a[0] + ps[k] * (b[0] - a[0]), a[1] + ps[k] * (b[1] - a[1])];
    }
    let mut side_lengths = [0.0; 3];
    for k in 0..3 {
        let a = vertices[k];
        let b = vertices[(k + 1) % 3];
        side_lengths[k] = ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt();
    }
    TriangleFigure {
        vertices,
        side_lengths,
        distances: [ps[0] * OUTER_SIDE, ps[1] * OUTER_SIDE, ps[2] * OUTER_SIDE],
    }
}

/// Closed-form side lengths
///
/// ```text
/// y_k = sqrt(2 + 2 p_k^2 - 4 p_k - 2 p_{k+1} + 2 p_{k+1}^2 + 2 p_k p_{k+1}),
/// ```
///
/// with the cyclic convention p_4 = p_1. Tiny negative radicands from
/// rounding are clamped to zero.
pub fn side_lengths_closed_form(p: &ProbabilityTriple) -> [f64; 3] {
    let ps = p.as_array();
    let mut y = [0.0; 3];
    for k in 0..3 {
        let a = ps[k];
        let b = ps[(k + 1) % 3];
        let radicand = 2.0 + 2.0 * a * a - 4.0 * a - 2.0 * b + 2.0 * b * b + 2.0 * a * b;
        y[k] = radicand.max(0.0).sqrt();
    }
    y
}

/// Total area of the three squares erected on the inscribed triangle sides:
///
/// ```text
/// S = 2 [ 3 (1 - p1 - p2 - p3) + 2 p1^2 + 2 p2^2 + 2 p3^2
///         + p1 p2 + p2 p3 + p3 p1 ],
/// ```
///
/// identically equal to y1^2 + y2^2 + y3^2. Bounded by 0 and 6 over the box
/// (the upper bound is attained at the corners (0,0,0) and (1,1,1), the
/// minimum 3/2 at the center) and stays strictly inside (0, 6) on the
/// quantum ball.
pub fn malevich_area_sum(p: &ProbabilityTriple) -> f64 {
    let [p1, p2, p3] = p.as_array();
    2.0 * (3.0 * (1.0 - p1 - p2 - p3)
        + 2.0 * (p1 * p1 + p2 * p2 + p3 * p3)
        + p1 * p2
        + p2 * p3
        + p3 * p1)
}

/// Area of the inscribed triangle by Heron's formula,
///
/// ```text
/// S_tr = (1/4) sqrt((y1+y2+y3)(y1+y2-y3)(y2+y3-y1)(y3+y1-y2)),
/// ```
///
/// with tiny negative products from degenerate (collinear) configurations
/// clamped to zero.
pub fn triangle_area(p: &ProbabilityTriple) -> f64 {
    let [y1, y2, y3] = side_lengths_closed_form(p);
    let product = (y1 + y2 + y3) * (y1 + y2 - y3) * (y2 + y3 - y1) * (y3 + y1 - y2);
    0.25 * product.max(0.0).sqrt()
}

/// Full geometric report for a triple.
pub fn area_report(p: &ProbabilityTriple) -> AreaReport {
    AreaReport {
        square_area_sum: malevich_area_sum(p),
        triangle_area: triangle_area(p),
        classification: if p.is_admissible() {
            Classification::QuantumAdmissible
        } else {
            Classification::ClassicalOnly
        },
    }
}

/// Extrema of S over the quantum-admissible ball, found numerically.
///
/// Sampling grid: a golden-angle spiral of `SPHERE_SAMPLES` directions on the
/// boundary sphere of radius 1/2 around (1/2, 1/2, 1/2), each scanned at the
/// radial fractions `RADIAL_LEVELS` (so the center and interior shells are
/// covered). The best grid points are then refined by compass search with
/// shrinking steps, projected back into the ball. Returns (S_min, S_max).
pub fn quantum_area_bounds() -> (f64, f64) {
    let mut min = (f64::INFINITY, [0.5, 0.5, 0.5]);
    let mut max = (f64::NEG_INFINITY, [0.5, 0.5, 0.5]);
    let mut consider = |q: [f64; 3]| {
        let s = s_of_offset(q);
        if s < min.0 {
            min = (s, q);
        }
        if s > max.0 {
            max = (s, q);
        }
    };

    consider([0.0, 0.0, 0.0]);
    let golden = std::f64::consts::PI * (3.0 - 5.0f64.sqrt());
    for i in 0..SPHERE_SAMPLES {
        let frac = (i as f64 + 0.5) / SPHERE_SAMPLES as f64;
        let z = 1.0 - 2.0 * frac;
        let r_xy = (1.0 - z * z).sqrt();
        let phi = golden * i as f64;
        let dir = [r_xy * phi.cos(), r_xy * phi.sin(), z];
        for level in RADIAL_LEVELS {
            consider([
                0.5 * level * dir[0],
                0.5 * level * dir[1],
                0.5 * level * dir[2],
            ]);
        }
    }

    let s_min = refine(min.1, false);
    let s_max = refine(max.1, true);
    (s_min, s_max)
}

const SPHERE_SAMPLES: usize = 2048;
const RADIAL_LEVELS: [f64; 5] = [0.2, 0.4, 0.6, 0.8, 1.0];

/// S expressed in ball offsets q = p - (1/2, 1/2, 1/2).
fn s_of_offset(q: [f64; 3]) -> f64 {
    let p = ProbabilityTriple::new(q[0] + 0.5, q[1] + 0.5, q[2] + 0.5)
        .expect("ball offsets stay inside the box");
    malevich_area_sum(&p)
}

/// Compass search over the closed ball of radius 1/2, maximizing or
/// minimizing S from a starting offset.
fn refine(start: [f64; 3], maximize: bool) -> f64 {
    let sign = if maximize { 1.0 } else { -1.0 };
    let project = |q: [f64; 3]| -> [f64; 3] {
        let n = (q[0] * q[0] + q[1] * q[1] + q[2] * q[2]).sqrt();
        if n > 0.5 {
            let f = 0.5 / n;
            [q[0] * f, q[1] * f, q[2] * f]
        } else {
            q
        }
    };
    let mut best_q = project(start);
    let mut best = sign * s_of_offset(best_q);
    let mut step = 0.125;
    while step > 1e-10 {
        let mut improved = false;
        for axis in 0..3 {
            for dir in [-1.0, 1.0] {
                let mut cand = best_q;
                cand[axis] += dir * step;
                let cand = project(cand);
                let val = sign * s_of_offset(cand);
                if val > best {
                    best = val;
                    best_q = cand;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    sign * best
}

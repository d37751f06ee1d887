//! Deterministic SVG figures for a probability triple.
//!
//! Three figure kinds are supported:
//!
//! - `Simplex`: the coin picture — for each k, the probability vector with
//!   endpoint (p_k, 1 - p_k) on the simplex segment p + p' = 1;
//! - `Triangle`: the equilateral triangle of side sqrt(2) with the inscribed
//!   triangle A1 A2 A3;
//! - `Triada`: the inscribed triangle with the three squares erected
//!   outward on its sides, filled with the configured colors (defaults
//!   black, red, white, index order 1, 2, 3).
//!
//! Output is plain SVG 1.1 text with fixed 4-decimal coordinate formatting;
//! identical inputs produce byte-identical documents.
//!
//! Viewport mapping: with margin m = 0.05 * min(w, h) + 6 pixels, the
//! geometry bounding box is scaled uniformly by
//! s = min((w - 2m)/bbox_w, (h - 2m)/bbox_h), centered, and the y axis is
//! flipped (SVG y grows downward).

use thiserror::Error;

use crate::qubit::ProbabilityTriple;
use crate::triangle::{place_vertices, OUTER_VERTICES};

/// Smallest accepted figure edge, in pixels.
pub const MIN_DIMENSION: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RenderError {
    #[error("figure dimensions {width}x{height} below the minimum {MIN_DIMENSION}")]
    DimensionsTooSmall { width: u32, height: u32 },
}

/// Which figure to draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureKind {
    Simplex,
    Triangle,
    Triada,
}

/// Figure selection, pixel dimensions, and square fill colors.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureSpec {
    pub kind: FigureKind,
    pub width_px: u32,
    pub height_px: u32,
    /// Fill colors of the squares (and markers), indexed 1, 2, 3.
    pub colors: [String; 3],
}

impl FigureSpec {
    pub fn new(kind: FigureKind, width_px: u32, height_px: u32) -> Result<Self, RenderError> {
        if width_px < MIN_DIMENSION || height_px < MIN_DIMENSION {
            return Err(RenderError::DimensionsTooSmall {
                width: width_px,
                height: height_px,
            });
        }
        Ok(Self {
            kind,
            width_px,
            height_px,
            colors: ["black".to_string(), "red".to_string(), "white".to_string()],
        })
    }

    pub fn with_colors(mut self, colors: [String; 3]) -> Self {
        self.colors = colors;
        self
    }
}

/// Geometry-space primitives collected before the viewport transform.
enum Shape {
    Polygon {
        points: Vec<[f64; 2]>,
        fill: String,
        stroke: String,
        dash: Option<&'static str>,
    },
    Line {
        from: [f64; 2],
        to: [f64; 2],
        arrow: bool,
    },
    Marker {
        center: [f64; 2],
        fill: String,
    },
    Label {
        at: [f64; 2],
        text: String,
        dx_px: f64,
        dy_px: f64,
    },
}

/// Renders the figure as an SVG 1.1 document.
pub fn render(p: &ProbabilityTriple, spec: &FigureSpec) -> String {
    let shapes = match spec.kind {
        FigureKind::Simplex => simplex_shapes(p, spec),
        FigureKind::Triangle => triangle_shapes(p),
        FigureKind::Triada => triada_shapes(p, spec),
    };
    emit(&shapes, spec)
}

fn simplex_shapes(p: &ProbabilityTriple, spec: &FigureSpec) -> Vec<Shape> {
    let mut shapes = Vec::new();
    // Axes with arrowheads.
    shapes.push(Shape::Line {
        from: [0.0, 0.0],
        to: [1.25, 0.0],
        arrow: true,
    });
    shapes.push(Shape::Line {
        from: [0.0, 0.0],
        to: [0.0, 1.25],
        arrow: true,
    });
    shapes.push(Shape::Label {
        at: [1.25, 0.0],
        text: "p".to_string(),
        dx_px: 4.0,
        dy_px: 12.0,
    });
    shapes.push(Shape::Label {
        at: [0.0, 1.25],
        text: "p'".to_string(),
        dx_px: -14.0,
        dy_px: 0.0,
    });
    // The simplex segment p + p' = 1.
    shapes.push(Shape::Line {
        from: [1.0, 0.0],
        to: [0.0, 1.0],
        arrow: false,
    });
    // One probability vector per coin, endpoint on the simplex.
    for (k, pk) in p.as_array().into_iter().enumerate() {
        let end = [pk, 1.0 - pk];
        shapes.push(Shape::Line {
            from: [0.0, 0.0],
            to: end,
            arrow: true,
        });
        shapes.push(Shape::Marker {
            center: end,
            fill: spec.colors[k].clone(),
        });
        shapes.push(Shape::Label {
            at: end,
            text: format!("A{}", k + 1),
            dx_px: 8.0,
            dy_px: -6.0,
        });
    }
    shapes
}

fn triangle_shapes(p: &ProbabilityTriple) -> Vec<Shape> {
    let fig = place_vertices(p);
    let mut shapes = vec![
        Shape::Polygon {
            points: OUTER_VERTICES.to_vec(),
            fill: "none".to_string(),
            stroke: "black".to_string(),
            dash: None,
        },
        Shape::Polygon {
            points: fig.vertices.to_vec(),
            fill: "none".to_string(),
            stroke: "black".to_string(),
            dash: Some("6 4"),
        },
    ];
    let label_offsets = [[-12.0, 12.0], [6.0, 12.0], [0.0, -8.0]];
    for k in 0..3 {
        shapes.push(Shape::Label {
            at: OUTER_VERTICES[k],
            text: format!("{}", k + 1),
            dx_px: label_offsets[k][0],
            dy_px: label_offsets[k][1],
        });
        shapes.push(Shape::Marker {
            center: fig.vertices[k],
            fill: "black".to_string(),
        });
        shapes.push(Shape::Label {
            at: fig.vertices[k],
            text: format!("A{}", k + 1),
            dx_px: 6.0,
            dy_px: -6.0,
        });
    }
    shapes
}

fn triada_shapes(p: &ProbabilityTriple, spec: &FigureSpec) -> Vec<Shape> {
    let fig = place_vertices(p);
    let centroid = [
        (fig.vertices[0][0] + fig.vertices[1][0] + fig.vertices[2][0]) / 3.0,
        (fig.vertices[0][1] + fig.vertices[1][1] + fig.vertices[2][1]) / 3.0,
    ];
    let mut shapes = Vec::new();
    for k in 0..3 {
        shapes.push(Shape::Polygon {
            points: square_on_side(fig.vertices[k], fig.vertices[(k + 1) % 3], centroid),
            fill: spec.colors[k].clone(),
            stroke: "black".to_string(),
            dash: None,
        });
    }
    shapes.push(Shape::Polygon {
        points: fig.vertices.to_vec(),
        fill: "none".to_string(),
        stroke: "black".to_string(),
        dash: Some("6 4"),
    });
    shapes
}

/// The square erected on the segment a -> b, on the side facing away from
/// `interior`. A degenerate segment yields a degenerate square.
fn square_on_side(a: [f64; 2], b: [f64; 2], interior: [f64; 2]) -> Vec<[f64; 2]> {
    let edge = [b[0] - a[0], b[1] - a[1]];
    let mut normal = [edge[1], -edge[0]];
    let midpoint = [0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])];
    let to_interior = [interior[0] - midpoint[0], interior[1] - midpoint[1]];
    if normal[0] * to_interior[0] + normal[1] * to_interior[1] > 0.0 {
        normal = [-normal[0], -normal[1]];
    }
    vec![
        a,
        b,
        [b[0] + normal[0], b[1] + normal[1]],
        [a[0] + normal[0], a[1] + normal[1]],
    ]
}

struct Viewport {
    scale: f64,
    offset_x: f64,
    offset_y: f64,
    height: f64,
}

impl Viewport {
    fn to_pixels(&self, p: [f64; 2]) -> [f64; 2] {
        [
            self.offset_x + self.scale * p[0],
            self.height - (self.offset_y + self.scale * p[1]),
        ]
    }
}

fn fit_viewport(shapes: &[Shape], spec: &FigureSpec) -> Viewport {
    let mut min = [f64::INFINITY; 2];
    let mut max = [f64::NEG_INFINITY; 2];
    let mut grow = |p: &[f64; 2]| {
        for i in 0..2 {
            min[i] = min[i].min(p[i]);
            max[i] = max[i].max(p[i]);
        }
    };
    for shape in shapes {
        match shape {
            Shape::Polygon { points, .. } => points.iter().for_each(&mut grow),
            Shape::Line { from, to, .. } => {
                grow(from);
                grow(to);
            }
            Shape::Marker { center, .. } => grow(center),
            Shape::Label { at, .. } => grow(at),
        }
    }
    let (w, h) = (spec.width_px as f64, spec.height_px as f64);
    let margin = 0.05 * w.min(h) + 6.0;
    let bbox_w = (max[0] - min[0]).max(1e-9);
    let bbox_h = (max[1] - min[1]).max(1e-9);
    let scale = ((w - 2.0 * margin) / bbox_w).min((h - 2.0 * margin) / bbox_h);
    Viewport {
        scale,
        offset_x: 0.5 * (w - scale * bbox_w) - scale * min[0],
        offset_y: 0.5 * (h - scale * bbox_h) - scale * min[1],
        height: h,
    }
}

fn fmt(v: f64) -> String {
    // Fixed formatting keeps output byte-stable; normalize negative zero.
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.4}")
}

fn emit(shapes: &[Shape], spec: &FigureSpec) -> String {
    let vp = fit_viewport(shapes, spec);
    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n",
        w = spec.width_px,
        h = spec.height_px
    ));
    svg.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n",
        spec.width_px, spec.height_px
    ));
    for shape in shapes {
        match shape {
            Shape::Polygon {
                points,
                fill,
                stroke,
                dash,
            } => {
                let pts: Vec<String> = points
                    .iter()
                    .map(|p| {
                        let [x, y] = vp.to_pixels(*p);
                        format!("{},{}", fmt(x), fmt(y))
                    })
                    .collect();
                let dash_attr = dash
                    .map(|d| format!(" stroke-dasharray=\"{d}\""))
                    .unwrap_or_default();
                svg.push_str(&format!(
                    "<polygon points=\"{}\" fill=\"{}\" stroke=\"{}\" stroke-width=\"1.5\"{}/>\n",
                    pts.join(" "),
                    fill,
                    stroke,
                    dash_attr
                ));
            }
            Shape::Line { from, to, arrow } => {
                let [x1, y1] = vp.to_pixels(*from);
                let [x2, y2] = vp.to_pixels(*to);
                svg.push_str(&format!(
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"1.5\"/>\n",
                    fmt(x1), fmt(y1), fmt(x2), fmt(y2)
                ));
                if *arrow {
                    let dx = x2 - x1;
                    let dy = y2 - y1;
                    let len = (dx * dx + dy * dy).sqrt().max(1e-9);
                    let (ux, uy) = (dx / len, dy / len);
                    let (nx, ny) = (-uy, ux);
                    let size = 6.0;
                    let base = [x2 - size * ux, y2 - size * uy];
                    svg.push_str(&format!(
                        "<polygon points=\"{},{} {},{} {},{}\" fill=\"black\" stroke=\"none\"/>\n",
                        fmt(x2),
                        fmt(y2),
                        fmt(base[0] + 0.5 * size * nx),
                        fmt(base[1] + 0.5 * size * ny),
                        fmt(base[0] - 0.5 * size * nx),
                        fmt(base[1] - 0.5 * size * ny)
                    ));
                }
            }
            Shape::Marker { center, fill } => {
                let [cx, cy] = vp.to_pixels(*center);
                svg.push_str(&format!(
                    "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{}\" stroke=\"black\" stroke-width=\"1\"/>\n",
                    fmt(cx), fmt(cy), fill
                ));
            }
            Shape::Label {
                at,
                text,
                dx_px,
                dy_px,
            } => {
                let [x, y] = vp.to_pixels(*at);
                svg.push_str(&format!(
                    "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
                    fmt(x + dx_px),
                    fmt(y + dy_px),
                    text
                ));
            }
        }
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangle::side_lengths_closed_form;

    fn spec(kind: FigureKind) -> FigureSpec {
        FigureSpec::new(kind, 480, 480).unwrap()
    }

    fn p(p1: f64, p2: f64, p3: f64) -> ProbabilityTriple {
        ProbabilityTriple::new(p1, p2, p3).unwrap()
    }

    /// Pulls the `points` attribute of the n-th polygon out of the document.
    fn polygon_points(svg: &str, index: usize) -> Vec<[f64; 2]> {
        let chunk = svg
            .split("<polygon points=\"")
            .nth(index + 1)
            .expect("polygon present");
        let raw = chunk.split('"').next().unwrap();
        raw.split(' ')
            .map(|pair| {
                let mut it = pair.split(',');
                [
                    it.next().unwrap().parse().unwrap(),
                    it.next().unwrap().parse().unwrap(),
                ]
            })
            .collect()
    }

    #[test]
    fn dimension_validation() {
        assert!(FigureSpec::new(FigureKind::Triangle, 64, 64).is_ok());
        assert!(matches!(
            FigureSpec::new(FigureKind::Triangle, 32, 480),
            Err(RenderError::DimensionsTooSmall { .. })
        ));
    }

    #[test]
    fn output_is_deterministic() {
        let triple = p(0.3, 0.8, 0.4);
        for kind in [
            FigureKind::Simplex,
            FigureKind::Triangle,
            FigureKind::Triada,
        ] {
            let s = spec(kind);
            assert_eq!(render(&triple, &s), render(&triple, &s));
        }
    }

    #[test]
    fn corner_triple_inscribes_the_outer_triangle() {
        let svg = render(&p(0.0, 0.0, 0.0), &spec(FigureKind::Triangle));
        let outer = polygon_points(&svg, 0);
        let inner = polygon_points(&svg, 1);
        for (o, i) in outer.iter().zip(&inner) {
            assert!((o[0] - i[0]).abs() < 1e-9 && (o[1] - i[1]).abs() < 1e-9);
        }
    }

    #[test]
    fn inscribed_vertices_match_geometry_within_half_pixel() {
        let triple = p(0.3, 0.8, 0.4);
        let s = spec(FigureKind::Triangle);
        let svg = render(&triple, &s);
        let inner = polygon_points(&svg, 1);

        // Reconstruct the documented viewport transform.
        let fig = place_vertices(&triple);
        let (w, h) = (480.0f64, 480.0f64);
        let margin = 0.05 * w.min(h) + 6.0;
        let (min_x, max_x) = (0.0, std::f64::consts::SQRT_2);
        let (min_y, max_y) = (0.0, 6.0f64.sqrt() / 2.0);
        let scale =
            ((w - 2.0 * margin) / (max_x - min_x)).min((h - 2.0 * margin) / (max_y - min_y));
        let ox = 0.5 * (w - scale * (max_x - min_x)) - scale * min_x;
        let oy = 0.5 * (h - scale * (max_y - min_y)) - scale * min_y;
        for k in 0..3 {
            let expect_x = ox + scale * fig.vertices[k][0];
            let expect_y = h - (oy + scale * fig.vertices[k][1]);
            assert!((inner[k][0] - expect_x).abs() < 0.5);
            assert!((inner[k][1] - expect_y).abs() < 0.5);
        }
    }

    #[test]
    fn triada_squares_scale_with_side_lengths() {
        let triple = p(0.3, 0.8, 0.4);
        let svg = render(&triple, &spec(FigureKind::Triada));
        let y = side_lengths_closed_form(&triple);
        // Squares are the first three polygons; compare pixel side lengths
        // against a single global scale.
        let mut scales = Vec::new();
        for k in 0..3 {
            let pts = polygon_points(&svg, k);
            let side = ((pts[1][0] - pts[0][0]).powi(2) + (pts[1][1] - pts[0][1]).powi(2)).sqrt();
            if y[k] > 1e-9 {
                scales.push(side / y[k]);
            }
        }
        // Coordinates are serialized with 4 decimals, so parsed lengths
        // carry ~1e-4 px quantization.
        for pair in scales.windows(2) {
            assert!((pair[0] - pair[1]).abs() < 2e-3);
        }
    }

    #[test]
    fn congruent_squares_for_maximally_mixed() {
        let svg = render(
            &ProbabilityTriple::MAXIMALLY_MIXED,
            &spec(FigureKind::Triada),
        );
        let mut sides = Vec::new();
        for k in 0..3 {
            let pts = polygon_points(&svg, k);
            sides.push(((pts[1][0] - pts[0][0]).powi(2) + (pts[1][1] - pts[0][1]).powi(2)).sqrt());
        }
        assert!((sides[0] - sides[1]).abs() < 2e-3);
        assert!((sides[1] - sides[2]).abs() < 2e-3);
    }

    #[test]
    fn simplex_contains_three_vectors() {
        let svg = render(&p(0.25, 0.5, 0.75), &spec(FigureKind::Simplex));
        assert_eq!(svg.matches("<circle").count(), 3);
        assert!(svg.contains(">A1<") && svg.contains(">A2<") && svg.contains(">A3<"));
    }
}

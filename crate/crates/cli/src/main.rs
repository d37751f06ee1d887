//! Command-line interface: state analysis, unitary evolution traces,
//! channel extraction, and SVG figure rendering.
//!
//! Exit codes: 0 success, 2 validation failure, 3 Kraus completeness
//! failure, 4 I/O failure. Errors are reported as one JSON object on
//! stderr. `MALEVICH_TOLERANCE` overrides every validation tolerance with a
//! single value.

mod input;
mod output;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use malevich_core::channel::{
    affine_from_kraus, affine_from_kraus_formula, evolve_trajectory, homogeneous4, ChannelError,
    KrausSet, EPS_KRAUS,
};
use malevich_core::qubit::{ProbabilityTriple, StateError, Tolerances};
use malevich_core::render::{render, FigureKind, FigureSpec, RenderError};
use malevich_core::sample;
use malevich_core::triangle::{area_report, side_lengths_closed_form, Classification};

use output::{csv, json_number_array, json_number_matrix, json_object, json_string, sig12};

#[derive(Debug)]
enum CliError {
    Validation(String),
    Completeness { residual: f64 },
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Completeness { .. } => 3,
            CliError::Io(_) => 4,
        }
    }

    fn to_json(&self) -> String {
        let (kind, message, residual) = match self {
            CliError::Validation(m) => ("validation", m.clone(), None),
            CliError::Completeness { residual } => (
                "completeness",
                format!(
                    "Kraus set is not trace-preserving (residual {})",
                    sig12(*residual)
                ),
                Some(*residual),
            ),
            CliError::Io(m) => ("io", m.clone(), None),
        };
        let mut pairs = vec![
            ("kind", json_string(kind)),
            ("message", json_string(&message)),
        ];
        if let Some(r) = residual {
            pairs.push(("residual", sig12(r)));
        }
        json_object(&[("error", json_object(&pairs))])
    }
}

impl From<StateError> for CliError {
    fn from(e: StateError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<RenderError> for CliError {
    fn from(e: RenderError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<ChannelError> for CliError {
    fn from(e: ChannelError) -> Self {
        match e {
            ChannelError::IncompleteKraus { residual } => CliError::Completeness { residual },
            other => CliError::Validation(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Figure {
    Simplex,
    Triangle,
    Triada,
}

impl From<Figure> for FigureKind {
    fn from(f: Figure) -> Self {
        match f {
            Figure::Simplex => FigureKind::Simplex,
            Figure::Triangle => FigureKind::Triangle,
            Figure::Triada => FigureKind::Triada,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "malevich",
    about = "Qubit states as probability triples, inscribed triangles, and square triads",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report probabilities, Bloch vector, spectrum, and triangle geometry of a state
    State {
        /// State as inline JSON or a file path
        #[arg(short, long)]
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the report here instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evolve a state under exp(-itH) and trace the triangle areas
    Evolve {
        /// Initial state as inline JSON or a file path
        #[arg(short, long)]
        input: String,
        /// Hamiltonian as inline JSON or a file path (2x2 complex matrix)
        #[arg(long)]
        hamiltonian: String,
        #[arg(long, default_value_t = 0.0)]
        t_start: f64,
        #[arg(long)]
        t_end: f64,
        /// Number of uniform steps; the grid includes both endpoints
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Extract the affine probability map of a Kraus channel
    Channel {
        /// Kraus operators as inline JSON or a file path (array of 2x2 complex matrices)
        #[arg(short, long)]
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Seed for the ball-preservation sample
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Render a state as an SVG figure
    Render {
        /// State as inline JSON or a file path
        #[arg(short, long)]
        input: String,
        #[arg(long, value_enum, default_value_t = Figure::Triada)]
        figure: Figure,
        #[arg(long, default_value_t = 480)]
        width: u32,
        #[arg(long, default_value_t = 480)]
        height: u32,
        /// Write the SVG here (the path is echoed); stdout when absent
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("{}", e.to_json());
        std::process::exit(e.exit_code());
    }
}

/// Validation tolerances, uniformly overridden by MALEVICH_TOLERANCE.
fn effective_tolerances() -> Result<(Tolerances, f64), CliError> {
    match std::env::var("MALEVICH_TOLERANCE") {
        Err(_) => Ok((Tolerances::default(), EPS_KRAUS)),
        Ok(raw) => {
            let eps: f64 = raw.parse().map_err(|_| {
                CliError::Validation(format!("MALEVICH_TOLERANCE is not a number: '{raw}'"))
            })?;
            if !(eps.is_finite() && eps > 0.0) {
                return Err(CliError::Validation(format!(
                    "MALEVICH_TOLERANCE must be a positive number, got {raw}"
                )));
            }
            Ok((Tolerances::uniform(eps), eps))
        }
    }
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), CliError> {
    match output {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write '{}': {e}", path.display()))),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (tol, kraus_eps) = effective_tolerances()?;
    match cli.command {
        Command::State {
            input,
            format,
            output,
        } => {
            let p = input::parse_state(&input, &tol)?;
            let text = state_report(&p, &tol, format);
            emit(&text, output.as_ref())
        }
        Command::Evolve {
            input,
            hamiltonian,
            t_start,
            t_end,
            steps,
            format,
            output,
        } => {
            if steps < 1 {
                return Err(CliError::Validation("steps must be at least 1".into()));
            }
            if !(t_start.is_finite() && t_end.is_finite()) {
                return Err(CliError::Validation("time endpoints must be finite".into()));
            }
            let p0 = input::parse_state(&input, &tol)?;
            let h = input::parse_hamiltonian(&hamiltonian)?;
            let times: Vec<f64> = (0..=steps)
                .map(|i| t_start + (t_end - t_start) * i as f64 / steps as f64)
                .collect();
            let points = evolve_trajectory(&h, &p0, &times)?;
            let text = trajectory_report(&points, format);
            emit(&text, output.as_ref())
        }
        Command::Channel {
            input,
            format,
            output,
            seed,
        } => {
            let kraus = input::parse_kraus(&input, kraus_eps)?;
            let text = channel_report(&kraus, seed, &tol, format);
            emit(&text, output.as_ref())
        }
        Command::Render {
            input,
            figure,
            width,
            height,
            output,
        } => {
            let p = input::parse_state(&input, &tol)?;
            let spec = FigureSpec::new(figure.into(), width, height)?;
            let svg = render(&p, &spec);
            match output {
                None => {
                    print!("{svg}");
                    Ok(())
                }
                Some(path) => {
                    std::fs::write(&path, &svg).map_err(|e| {
                        CliError::Io(format!("cannot write '{}': {e}", path.display()))
                    })?;
                    println!("{}", path.display());
                    Ok(())
                }
            }
        }
    }
}

fn state_report(p: &ProbabilityTriple, tol: &Tolerances, format: Format) -> String {
    let bloch = p.to_bloch();
    let rho = p.to_density_matrix();
    let eigenvalues = rho.eigenvalues();
    let admissible = p.is_admissible_with(tol.ball);
    // Entropy is defined only for admissible (nonnegative) spectra.
    let entropy = p.spectral_data().ok().map(|s| s.entropy);
    let report = area_report(p);
    let y = side_lengths_closed_form(p);

    match format {
        Format::Json => {
            let entropy_json = entropy.map_or("null".to_string(), sig12);
            json_object(&[
                ("probabilities", json_number_array(&p.as_array())),
                ("bloch", json_number_array(&[bloch.x, bloch.y, bloch.z])),
                ("eigenvalues", json_number_array(&eigenvalues)),
                ("entropy", entropy_json),
                ("uncertainty_functional", sig12(p.uncertainty_functional())),
                ("admissible", admissible.to_string()),
                ("side_lengths", json_number_array(&y)),
                ("square_area_sum", sig12(report.square_area_sum)),
                ("triangle_area", sig12(report.triangle_area)),
            ]) + "\n"
        }
        Format::Csv => {
            let header = [
                "p1",
                "p2",
                "p3",
                "x",
                "y",
                "z",
                "lambda1",
                "lambda2",
                "entropy",
                "uncertainty_functional",
                "admissible",
                "y1",
                "y2",
                "y3",
                "S",
                "S_tr",
            ];
            let row = vec![
                sig12(p.p1()),
                sig12(p.p2()),
                sig12(p.p3()),
                sig12(bloch.x),
                sig12(bloch.y),
                sig12(bloch.z),
                sig12(eigenvalues[0]),
                sig12(eigenvalues[1]),
                entropy.map_or(String::new(), sig12),
                sig12(p.uncertainty_functional()),
                admissible.to_string(),
                sig12(y[0]),
                sig12(y[1]),
                sig12(y[2]),
                sig12(report.square_area_sum),
                sig12(report.triangle_area),
            ];
            csv(&header, &[row])
        }
        Format::Text => {
            let classification = match report.classification {
                Classification::QuantumAdmissible => "quantum-admissible",
                Classification::ClassicalOnly => "classical only (outside the quantum ball)",
            };
            let entropy_line = entropy.map_or("n/a".to_string(), sig12);
            format!(
                "probabilities:          {} {} {}\n\
                 bloch vector:           {} {} {}\n\
                 eigenvalues:            {} {}\n\
                 entropy:                {entropy_line}\n\
                 uncertainty functional: {}\n\
                 classification:         {classification}\n\
                 side lengths:           {} {} {}\n\
                 square area sum S:      {}\n\
                 triangle area S_tr:     {}\n",
                sig12(p.p1()),
                sig12(p.p2()),
                sig12(p.p3()),
                sig12(bloch.x),
                sig12(bloch.y),
                sig12(bloch.z),
                sig12(eigenvalues[0]),
                sig12(eigenvalues[1]),
                sig12(p.uncertainty_functional()),
                sig12(y[0]),
                sig12(y[1]),
                sig12(y[2]),
                sig12(report.square_area_sum),
                sig12(report.triangle_area),
            )
        }
    }
}

fn trajectory_report(points: &[malevich_core::channel::TrajectoryPoint], format: Format) -> String {
    match format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = points
                .iter()
                .map(|pt| {
                    let [p1, p2, p3] = pt.probabilities.as_array();
                    vec![
                        sig12(pt.t),
                        sig12(p1),
                        sig12(p2),
                        sig12(p3),
                        sig12(pt.square_area_sum),
                        sig12(pt.triangle_area),
                    ]
                })
                .collect();
            csv(&["t", "p1", "p2", "p3", "S", "S_tr"], &rows)
        }
        Format::Json => {
            let rows: Vec<String> = points
                .iter()
                .map(|pt| {
                    let [p1, p2, p3] = pt.probabilities.as_array();
                    json_object(&[
                        ("t", sig12(pt.t)),
                        ("probabilities", json_number_array(&[p1, p2, p3])),
                        ("square_area_sum", sig12(pt.square_area_sum)),
                        ("triangle_area", sig12(pt.triangle_area)),
                    ])
                })
                .collect();
            format!("{{\"trajectory\":[{}]}}\n", rows.join(","))
        }
        Format::Text => {
            let mut out = String::from("t  p1  p2  p3  S  S_tr\n");
            for pt in points {
                let [p1, p2, p3] = pt.probabilities.as_array();
                out.push_str(&format!(
                    "{}  {}  {}  {}  {}  {}\n",
                    sig12(pt.t),
                    sig12(p1),
                    sig12(p2),
                    sig12(p3),
                    sig12(pt.square_area_sum),
                    sig12(pt.triangle_area)
                ));
            }
            out
        }
    }
}

fn channel_report(kraus: &KrausSet, seed: u64, tol: &Tolerances, format: Format) -> String {
    let map = affine_from_kraus(kraus);
    let formula = affine_from_kraus_formula(kraus);
    let cross_check = map.max_abs_diff(&formula.map);
    let homogeneous = homogeneous4(&map);
    let completeness = kraus.completeness_residual();

    // Ball-preservation sample: seeded admissible triples through the map.
    let mut rng = sample::rng_from_seed(seed);
    let samples = 1000usize;
    let mut violations = 0usize;
    for _ in 0..samples {
        let p = sample::random_admissible_triple(&mut rng);
        let [q1, q2, q3] = map.apply_raw(p.as_array());
        let f = (q1 - 0.5).powi(2) + (q2 - 0.5).powi(2) + (q3 - 0.5).powi(2);
        if f > 0.25 + tol.ball {
            violations += 1;
        }
    }

    match format {
        Format::Json => {
            let m_rows: Vec<&[f64]> = map.matrix.e.iter().map(|r| r.as_slice()).collect();
            let h_rows: Vec<&[f64]> = homogeneous.matrix.e.iter().map(|r| r.as_slice()).collect();
            json_object(&[
                ("matrix", json_number_matrix(&m_rows)),
                ("shift", json_number_array(&map.shift)),
                ("homogeneous", json_number_matrix(&h_rows)),
                ("completeness_residual", sig12(completeness)),
                ("cross_check_residual", sig12(cross_check)),
                (
                    "formula_imaginary_residue",
                    sig12(formula.imaginary_residue),
                ),
                ("ball_samples", samples.to_string()),
                ("ball_violations", violations.to_string()),
                ("ball_preserved", (violations == 0).to_string()),
            ]) + "\n"
        }
        Format::Csv => {
            let mut header: Vec<String> = Vec::new();
            let mut row: Vec<String> = Vec::new();
            for r in 0..3 {
                for c in 0..3 {
                    header.push(format!("m{}{}", r + 1, c + 1));
                    row.push(sig12(map.matrix.e[r][c]));
                }
            }
            for (i, d) in map.shift.iter().enumerate() {
                header.push(format!("delta{}", i + 1));
                row.push(sig12(*d));
            }
            header.push("completeness_residual".into());
            row.push(sig12(completeness));
            header.push("cross_check_residual".into());
            row.push(sig12(cross_check));
            header.push("ball_preserved".into());
            row.push((violations == 0).to_string());
            let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
            csv(&header_refs, &[row])
        }
        Format::Text => {
            let mut out = String::from("affine map p -> M p + delta\nM:\n");
            for r in 0..3 {
                out.push_str(&format!(
                    "  {}  {}  {}\n",
                    sig12(map.matrix.e[r][0]),
                    sig12(map.matrix.e[r][1]),
                    sig12(map.matrix.e[r][2])
                ));
            }
            out.push_str(&format!(
                "delta: {}  {}  {}\n",
                sig12(map.shift[0]),
                sig12(map.shift[1]),
                sig12(map.shift[2])
            ));
            out.push_str("homogeneous 4x4:\n");
            for r in 0..4 {
                out.push_str(&format!(
                    "  {}  {}  {}  {}\n",
                    sig12(homogeneous.matrix.e[r][0]),
                    sig12(homogeneous.matrix.e[r][1]),
                    sig12(homogeneous.matrix.e[r][2]),
                    sig12(homogeneous.matrix.e[r][3])
                ));
            }
            out.push_str(&format!(
                "completeness residual:  {}\ncross-check residual:   {}\n\
                 ball preservation:      {}/{} samples inside (seed-reproducible)\n",
                sig12(completeness),
                sig12(cross_check),
                samples - violations,
                samples
            ));
            out
        }
    }
}

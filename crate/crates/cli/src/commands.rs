//! Command definitions and their implementations.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use gion_core::geometry::{
    self, constants, gion_polynomial, phi_of_q, pq_of_t, ParamPoint, SegmentQuantities,
};
use gion_core::oracle::verify_solution;
use gion_core::ratpoly::{irreducibility_certificate, sturm_count, Rational};
use gion_core::solver::{classify, solve_input, sturm_cap, DEFAULT_TOL};
use gion_core::{GionError, QInput};
use num_traits::Zero;

use crate::args;
use crate::plot::LinePlot;
use crate::record::{format_number, number, Format, OutputRecord};

pub const EXIT_INTERNAL: u8 = 1;
pub const EXIT_INFEASIBLE: u8 = 2;
pub const EXIT_VERIFICATION: u8 = 3;

/// Largest deviation `verify` accepts.
pub const VERIFY_TOLERANCE: f64 = 1e-8;

/// Distance from `q0` below which `verify` flags the input as a boundary case.
pub const BOUNDARY_NOTE_DISTANCE: f64 = 1e-6;

pub const PLOT_SAMPLES: usize = 400;

#[derive(Debug, Parser)]
#[command(
    name = "gion",
    version,
    about = "Recover a, m, s, d of the Gion shrine problem from p and q"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for (a, m, s, d) given p and q.
    Solve(SolveArgs),
    /// Evaluate the figure from one of its parameters.
    Forward(ForwardArgs),
    /// Tabulate the figure on a grid of t as CSV.
    Scan(ScanArgs),
    /// Write an SVG plot of q(t) or of the half-angle against q.
    Plot(PlotArgs),
    /// Solve and cross-check against the constraint construction.
    Verify(SolveArgs),
    /// Exact root count and irreducibility certificate of P(t, q).
    Certify(CertifyArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Sum a + m + s + d.
    #[arg(long, allow_hyphen_values = true, value_parser = args::finite)]
    pub p: f64,
    /// m/a + d/m + s/d, as a decimal or an exact num/den.
    #[arg(long, allow_hyphen_values = true, value_parser = args::q_input)]
    pub q: QInput,
    /// Absolute tolerance on the root t.
    #[arg(long, default_value_t = DEFAULT_TOL, value_parser = args::finite)]
    pub tol: f64,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ForwardParam {
    /// Half-angle of the chord; `rad` (default) or `deg` suffix, or `max`.
    #[arg(long, allow_hyphen_values = true, value_parser = args::angle)]
    pub phi: Option<f64>,
    /// Small-circle radius at unit arc radius.
    #[arg(long, allow_hyphen_values = true, value_parser = args::finite)]
    pub r: Option<f64>,
    /// x = sqrt(1 - 2r).
    #[arg(long, allow_hyphen_values = true, value_parser = args::finite)]
    pub x: Option<f64>,
    /// t = d/a.
    #[arg(long, allow_hyphen_values = true, value_parser = args::finite)]
    pub t: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScaleArg {
    /// Arc radius 1.
    Unit,
    /// Arc radius 2(1 + t^2)^2.
    Natural,
}

#[derive(Debug, Args)]
pub struct ForwardArgs {
    #[command(flatten)]
    pub param: ForwardParam,
    #[arg(long, value_enum, default_value_t = ScaleArg::Unit)]
    pub scale: ScaleArg,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Number of grid points, both ends included.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub n: u64,
    /// Smallest t on the grid; the largest is t0.
    #[arg(long, default_value_t = 1e-4, value_parser = args::finite)]
    pub t_min: f64,
    /// CSV destination; standard output when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    #[value(name = "q_of_t")]
    QOfT,
    #[value(name = "phi_of_q")]
    PhiOfQ,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(value_enum)]
    pub kind: PlotKind,
    /// SVG destination; standard output when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// Exact q as num/den or an integer.
    #[arg(long, allow_hyphen_values = true, value_parser = args::rational)]
    pub q: Rational,
}

/// What a successful command produces.
#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Record(Box<OutputRecord>),
    /// A finished document written verbatim to standard output.
    Document(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: u8,
    pub message: String,
    /// Partial record still worth printing, such as an infeasibility verdict.
    pub record: Option<Box<OutputRecord>>,
}

impl Failure {
    fn internal(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INTERNAL,
            message: message.into(),
            record: None,
        }
    }

    fn from_error(err: GionError) -> Self {
        let code = match err {
            GionError::Infeasible { .. } | GionError::NoSolution(_) => EXIT_INFEASIBLE,
            _ => EXIT_INTERNAL,
        };
        Self {
            code,
            message: err.to_string(),
            record: None,
        }
    }
}

pub type CommandResult = Result<Output, Failure>;

pub fn run(cli: &Cli) -> CommandResult {
    match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Forward(a) => cmd_forward(a),
        Command::Scan(a) => cmd_scan(a),
        Command::Plot(a) => cmd_plot(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Certify(a) => cmd_certify(a),
    }
}

fn q_value(q: &QInput) -> Value {
    match q {
        QInput::Float(x) => number(*x),
        QInput::Exact(r) => Value::String(r.to_string()),
    }
}

fn push_lengths(record: &mut OutputRecord, q: &SegmentQuantities) {
    record
        .output_f64("a", q.a)
        .output_f64("m", q.m)
        .output_f64("s", q.s)
        .output_f64("d", q.d);
}

/// Echoes the inputs and rejects infeasible `(p, q)` with a verdict record.
fn gate(mode: &str, a: &SolveArgs) -> Result<OutputRecord, Failure> {
    let mut record = OutputRecord::new(mode);
    record
        .input_f64("p", a.p)
        .input("q", q_value(&a.q))
        .input_f64("tol", a.tol);
    if a.tol <= 0.0 {
        return Err(Failure::internal(format!(
            "tolerance must be positive, got {}",
            a.tol
        )));
    }
    let feasibility = classify(a.p, a.q.to_f64());
    record.output("verdict", format!("{:?}", feasibility.verdict));
    if !feasibility.is_feasible() {
        record.output(
            "violated_bound",
            feasibility.bound.map_or(Value::Null, number),
        );
        return Err(Failure {
            code: EXIT_INFEASIBLE,
            message: format!("no solution: {feasibility}"),
            record: Some(Box::new(record)),
        });
    }
    Ok(record)
}

pub fn cmd_solve(a: &SolveArgs) -> CommandResult {
    let mut record = gate("solve", a)?;
    let sol = solve_input(a.p, &a.q, a.tol).map_err(Failure::from_error)?;
    push_lengths(&mut record, &sol.quantities());
    record.output_f64("t", sol.t);
    record
        .diagnostic_f64("p_residual", sol.p_residual)
        .diagnostic_f64("q_residual", sol.q_residual)
        .diagnostic(
            "root_bracket",
            vec![number(sol.root_bracket.0), number(sol.root_bracket.1)],
        )
        .diagnostic("iterations", sol.iterations)
        .diagnostic("certification", sol.certification.to_string());
    Ok(Output::Record(Box::new(record)))
}

pub fn cmd_forward(a: &ForwardArgs) -> CommandResult {
    let mut record = OutputRecord::new("forward");
    let p = &a.param;
    let (point, unit) = if let Some(phi) = p.phi {
        record.input_f64("phi", phi);
        let pt = ParamPoint::from_phi(phi).map_err(forward_error)?;
        (pt, geometry::quantities_from_phi(phi))
    } else if let Some(r) = p.r {
        record.input_f64("r", r);
        let pt = ParamPoint::from_r(r).map_err(forward_error)?;
        (pt, geometry::quantities_from_r(r))
    } else if let Some(x) = p.x {
        record.input_f64("x", x);
        let pt = ParamPoint::from_x(x).map_err(forward_error)?;
        (pt, geometry::quantities_from_x(x))
    } else if let Some(t) = p.t {
        record.input_f64("t", t);
        let pt = ParamPoint::from_t(t).map_err(forward_error)?;
        (pt, geometry::quantities_from_t_unit(t))
    } else {
        return Err(Failure::internal("one of --phi, --r, --x, --t is required"));
    };
    let (quantities, radius) = match a.scale {
        ScaleArg::Unit => (unit.map_err(Failure::from_error)?, 1.0),
        ScaleArg::Natural => {
            let w = 1.0 + point.t * point.t;
            (
                geometry::quantities_from_t_scaled(point.t).map_err(Failure::from_error)?,
                2.0 * w * w,
            )
        }
    };
    record.input(
        "scale",
        match a.scale {
            ScaleArg::Unit => "unit",
            ScaleArg::Natural => "natural",
        },
    );
    push_lengths(&mut record, &quantities);
    record
        .output_f64("p", quantities.p())
        .output_f64("q", quantities.q());
    record
        .diagnostic_f64("arc_radius", radius)
        .diagnostic_f64("phi", point.phi)
        .diagnostic_f64("phi_deg", point.phi.to_degrees())
        .diagnostic_f64("r", point.r)
        .diagnostic_f64("x", point.x)
        .diagnostic_f64("t", point.t)
        .diagnostic_f64("theta", point.theta)
        .diagnostic_f64("delta", point.delta);
    if (point.phi - constants().phi0).abs() <= geometry::BOUNDARY_SLACK {
        record.diagnostic(
            "note",
            "extreme configuration: largest admissible half-angle",
        );
    }
    Ok(Output::Record(Box::new(record)))
}

fn forward_error(err: GionError) -> Failure {
    let mut failure = Failure::from_error(err.clone());
    if let GionError::Infeasible { name: "phi", .. } = err {
        failure
            .message
            .push_str("; use --phi max for the extreme configuration");
    }
    failure
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents)
        .map_err(|e| Failure::internal(format!("cannot write {}: {e}", path.display())))
}

/// Grid of `n` values from `lo` to `hi`, both ends exact.
fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            if i + 1 == n {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

pub fn cmd_scan(a: &ScanArgs) -> CommandResult {
    let t0 = constants().t0;
    if !(a.t_min > 0.0 && a.t_min < t0) {
        return Err(Failure {
            code: EXIT_INFEASIBLE,
            message: format!("--t-min {} lies outside (0, {t0})", a.t_min),
            record: None,
        });
    }
    let n = usize::try_from(a.n).map_err(|_| Failure::internal("grid too large"))?;
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let csv_err = |e: csv::Error| Failure::internal(e.to_string());
    writer
        .write_record(["t", "q", "p", "a", "m", "s", "d"])
        .map_err(csv_err)?;
    let mut last = (f64::NAN, f64::NAN);
    let mut increasing = true;
    for t in linspace(a.t_min, t0, n) {
        let quantities = geometry::quantities_from_t_scaled(t).map_err(Failure::from_error)?;
        let (p, q) = pq_of_t(t).map_err(Failure::from_error)?;
        increasing &= last.1.is_nan() || q > last.1;
        last = (t, q);
        let row = [
            t,
            q,
            p,
            quantities.a,
            quantities.m,
            quantities.s,
            quantities.d,
        ];
        writer
            .write_record(row.map(format_number))
            .map_err(csv_err)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Failure::internal(e.to_string()))?;
    let text = String::from_utf8(bytes).map_err(|e| Failure::internal(e.to_string()))?;
    let Some(path) = &a.output else {
        return Ok(Output::Document(text));
    };
    write_file(path, &text)?;
    let mut record = OutputRecord::new("scan");
    record
        .input("n", a.n)
        .input_f64("t_min", a.t_min)
        .input("output", path.display().to_string());
    record
        .output("rows", n)
        .output_f64("last_t", last.0)
        .output_f64("last_q", last.1);
    record
        .diagnostic("scale", "natural")
        .diagnostic("q_strictly_increasing", increasing);
    Ok(Output::Record(Box::new(record)))
}

pub fn build_plot(kind: PlotKind) -> Result<LinePlot, GionError> {
    let c = constants();
    match kind {
        PlotKind::QOfT => {
            let points = (1..=PLOT_SAMPLES)
                .map(|i| {
                    let t = if i == PLOT_SAMPLES {
                        c.t0
                    } else {
                        c.t0 * i as f64 / PLOT_SAMPLES as f64
                    };
                    pq_of_t(t).map(|(_, q)| (t, q))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(LinePlot {
                title: "q as a function of t".into(),
                x_label: "t".into(),
                y_label: "q".into(),
                x_range: (0.0, c.t0),
                y_range: (2.0, c.q0),
                points,
            })
        }
        PlotKind::PhiOfQ => {
            let points = (1..=PLOT_SAMPLES)
                .map(|i| {
                    let q = if i == PLOT_SAMPLES {
                        c.q0
                    } else {
                        2.0 + (c.q0 - 2.0) * i as f64 / PLOT_SAMPLES as f64
                    };
                    phi_of_q(q).map(|phi| (q, phi.to_degrees()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(LinePlot {
                title: "half-angle determined by q".into(),
                x_label: "q".into(),
                y_label: "phi [degrees]".into(),
                x_range: (2.0, c.q0),
                y_range: (0.0, c.phi0.to_degrees()),
                points,
            })
        }
    }
}

pub fn cmd_plot(a: &PlotArgs) -> CommandResult {
    let plot = build_plot(a.kind).map_err(Failure::from_error)?;
    let svg = plot.to_svg();
    let Some(path) = &a.output else {
        return Ok(Output::Document(svg));
    };
    write_file(path, &svg)?;
    let (x, y) = *plot.points.last().expect("plots have samples");
    let mut record = OutputRecord::new("plot");
    record
        .input(
            "kind",
            match a.kind {
                PlotKind::QOfT => "q_of_t",
                PlotKind::PhiOfQ => "phi_of_q",
            },
        )
        .input("output", path.display().to_string());
    record
        .output("samples", plot.points.len())
        .output_f64("last_x", x)
        .output_f64("last_y", y);
    Ok(Output::Record(Box::new(record)))
}

pub fn cmd_verify(a: &SolveArgs) -> CommandResult {
    let mut record = gate("verify", a)?;
    let sol = solve_input(a.p, &a.q, a.tol).map_err(Failure::from_error)?;
    let report = verify_solution(&sol, a.p, a.q.to_f64());
    push_lengths(&mut record, &sol.quantities());
    record
        .output_f64("t", sol.t)
        .output_f64("phi_deg", report.phi.to_degrees())
        .output_f64("arc_radius", report.arc_radius)
        .output_f64("max_deviation", report.max_deviation);
    record
        .diagnostic_f64("tolerance", VERIFY_TOLERANCE)
        .diagnostic_f64("max_constraint_residual", report.max_constraint_residual)
        .diagnostic_f64("p_recomputed", report.p_recomputed)
        .diagnostic_f64("q_recomputed", report.q_recomputed)
        .diagnostic("certification", sol.certification.to_string());
    if (a.q.to_f64() - constants().q0).abs() <= BOUNDARY_NOTE_DISTANCE {
        record.diagnostic(
            "note",
            format!("boundary: q within {BOUNDARY_NOTE_DISTANCE:e} of q0, t close to t0"),
        );
    }
    if report.max_deviation <= VERIFY_TOLERANCE {
        Ok(Output::Record(Box::new(record)))
    } else {
        Err(Failure {
            code: EXIT_VERIFICATION,
            message: format!(
                "verification failed: deviation {} exceeds {VERIFY_TOLERANCE:e}",
                format_number(report.max_deviation)
            ),
            record: Some(Box::new(record)),
        })
    }
}

pub fn cmd_certify(a: &CertifyArgs) -> CommandResult {
    let poly = gion_polynomial(&a.q);
    let cleared = poly.clear_denominators();
    let (zero_roots, deflated) = poly.deflate_zero_root();
    let cap = sturm_cap();
    let count = sturm_count(&deflated, &Rational::zero(), &cap).map_err(Failure::from_error)?;
    let cert = irreducibility_certificate(&cleared).map_err(Failure::from_error)?;

    let strings =
        |coeffs: Vec<String>| Value::Array(coeffs.into_iter().map(Value::String).collect());
    let mut record = OutputRecord::new("certify");
    record.input("q", a.q.to_string());
    record
        .output(
            "coefficients",
            strings(poly.coeffs().iter().map(|c| c.to_string()).collect()),
        )
        .output(
            "integer_coefficients",
            strings(cleared.coeffs().iter().map(|c| c.to_string()).collect()),
        )
        .output("zero_root_multiplicity", zero_roots)
        .output("interval", format!("(0, {cap}]"))
        .output("root_count", count)
        .output("verdict", cert.verdict.to_string())
        .output(
            "witness",
            cert.witness
                .as_ref()
                .map_or(Value::Null, |w| w.to_string().into()),
        );
    let mut patterns = Map::new();
    for (prime, degrees) in &cert.attempts {
        patterns.insert(prime.to_string(), degrees.clone().into());
    }
    record
        .diagnostic("primes_tried", cert.attempts.len())
        .diagnostic("factor_degrees_mod_p", patterns);
    Ok(Output::Record(Box::new(record)))
}

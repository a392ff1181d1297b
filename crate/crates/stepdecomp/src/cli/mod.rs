//! Command-line front end.
//!
//! Subcommands: `decompose` (terms + reconstruction as JSON or text),
//! `verify` (grid reconstruction report), `smooth` (steepness-sweep CSV),
//! `lemmas` (exact step/sigmoid identity suites).
//!
//! Exit codes: 0 success, 1 usage error, 2 expression parse error,
//! 3 numeric failure (domain error, tolerance not met, identity or
//! tolerance check failed). Output documents are assembled in full before
//! anything is written, so a failing run never leaves partial JSON behind.

mod output;

pub use output::{DecomposeDoc, GridAxisDoc, TermDoc, VerifyDoc};

use crate::decomp::{
    anchored_difference_oracle, decompose, enumerate_subsets, smooth_term_value, verify_on_grid,
};
use crate::expr::{parse, Expr, ParseError, Point};
use crate::heaviside::{deterministic_samples, sigmoid, sigmoid_derivative, step, SigmoidParams};
use crate::quad::QuadConfig;
use crate::subset::VarSubset;
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use output::{fmt17, smooth_csv, to_json_string, SmoothRow};
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(ParseError),
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Numeric(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

fn numeric(e: impl fmt::Display) -> CliError {
    CliError::Numeric(e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "stepdecomp",
    version,
    about = "Decompose smooth functions on the nonnegative orthant into step-truncated integral terms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose an expression at a point and report every term
    Decompose(DecomposeArgs),
    /// Reconstruct over a grid and compare against direct evaluation
    Verify(VerifyArgs),
    /// Sweep sigmoid steepness and tabulate smoothed terms against exact values
    Smooth(SmoothArgs),
    /// Run the exact step/sigmoid identity suites
    Lemmas,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    /// Expression in the variables x1..xN
    #[arg(long)]
    pub expr: String,
    /// Declared number of variables N
    #[arg(long = "n")]
    pub n_vars: usize,
    /// Evaluation point as comma-separated coordinates, e.g. 2,3
    #[arg(long = "at", value_delimiter = ',', allow_negative_numbers = true, required = true)]
    pub at: Vec<f64>,
    /// Attach the corner-sum oracle value to every term
    #[arg(long)]
    pub oracle: bool,
    /// Per-panel absolute quadrature tolerance
    #[arg(long, default_value_t = 1e-10)]
    pub abs_tol: f64,
    /// Per-panel relative quadrature tolerance
    #[arg(long, default_value_t = 1e-10)]
    pub rel_tol: f64,
    /// Maximum bisection depth per panel
    #[arg(long, default_value_t = 30)]
    pub max_depth: usize,
    /// Output format (json or text)
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Write the document to this path instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub expr: String,
    #[arg(long = "n")]
    pub n_vars: usize,
    /// Grid spec min:max:steps, one per axis (comma-separated) or a single
    /// spec applied to every axis
    #[arg(long, value_delimiter = ',', required = true)]
    pub grid: Vec<String>,
    /// Maximum allowed relative reconstruction error
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub abs_tol: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = 30)]
    pub max_depth: usize,
    /// Output format (text or json)
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SmoothArgs {
    #[arg(long)]
    pub expr: String,
    #[arg(long = "n")]
    pub n_vars: usize,
    #[arg(long = "at", value_delimiter = ',', allow_negative_numbers = true, required = true)]
    pub at: Vec<f64>,
    /// Sigmoid steepness values to sweep, comma-separated
    #[arg(long = "k", value_delimiter = ',', required = true)]
    pub k_values: Vec<f64>,
    /// Saturation band of the sigmoid family, in 1/k units
    #[arg(long, default_value_t = 40.0)]
    pub tail_cut: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub abs_tol: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = 30)]
    pub max_depth: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Uniform steps over `[min, max]`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridAxis {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

/// A validated invocation: everything a command needs, invariants checked.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub expression: String,
    pub n_vars: usize,
    pub point: Option<Point>,
    pub grid: Option<Vec<GridAxis>>,
    pub quad: QuadConfig,
    pub verify_tol: f64,
    pub k_values: Vec<f64>,
    pub tail_cut: f64,
    pub with_oracle: bool,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn validated_quad(abs_tol: f64, rel_tol: f64, max_depth: usize) -> Result<QuadConfig, CliError> {
    let tol_ok = |t: f64| t.is_finite() && t > 0.0;
    if !tol_ok(abs_tol) || !tol_ok(rel_tol) {
        return Err(usage("tolerances must be positive"));
    }
    if max_depth == 0 {
        return Err(usage("--max-depth must be at least 1"));
    }
    Ok(QuadConfig {
        abs_tol,
        rel_tol,
        max_depth,
        ..QuadConfig::default()
    })
}

fn validated_point(at: &[f64], n_vars: usize) -> Result<Point, CliError> {
    if at.len() != n_vars {
        return Err(usage(format!(
            "--at supplies {} coordinates but --n declares {}",
            at.len(),
            n_vars
        )));
    }
    Point::new(at.to_vec()).map_err(|e| usage(format!("invalid point: {e}")))
}

fn parse_grid_axis(spec: &str) -> Result<GridAxis, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(usage(format!("grid spec `{spec}` is not of the form min:max:steps")));
    }
    let min: f64 = parts[0]
        .parse()
        .map_err(|_| usage(format!("grid spec `{spec}`: bad minimum")))?;
    let max: f64 = parts[1]
        .parse()
        .map_err(|_| usage(format!("grid spec `{spec}`: bad maximum")))?;
    let steps: usize = parts[2]
        .parse()
        .map_err(|_| usage(format!("grid spec `{spec}`: bad step count")))?;
    if !min.is_finite() || !max.is_finite() || min > max {
        return Err(usage(format!("grid spec `{spec}`: need finite min <= max")));
    }
    if min < 0.0 {
        return Err(usage(format!(
            "grid spec `{spec}`: grids live on the nonnegative orthant"
        )));
    }
    if steps < 2 {
        return Err(usage(format!("grid spec `{spec}`: need at least 2 steps")));
    }
    Ok(GridAxis { min, max, steps })
}

fn validated_grid(specs: &[String], n_vars: usize) -> Result<Vec<GridAxis>, CliError> {
    let axes: Vec<GridAxis> = specs
        .iter()
        .map(|s| parse_grid_axis(s))
        .collect::<Result<_, _>>()?;
    match axes.len() {
        1 => Ok(vec![axes[0]; n_vars]),
        n if n == n_vars => Ok(axes),
        n => Err(usage(format!(
            "--grid supplies {n} axis specs but --n declares {n_vars}"
        ))),
    }
}

impl RunConfig {
    fn common(expression: String, n_vars: usize, quad: QuadConfig) -> RunConfig {
        RunConfig {
            expression,
            n_vars,
            point: None,
            grid: None,
            quad,
            verify_tol: 1e-6,
            k_values: Vec::new(),
            tail_cut: 40.0,
            with_oracle: false,
            format: OutputFormat::Json,
            output: None,
        }
    }

    pub fn for_decompose(args: DecomposeArgs) -> Result<RunConfig, CliError> {
        if args.n_vars == 0 {
            return Err(usage("--n must be at least 1"));
        }
        if args.format == OutputFormat::Csv {
            return Err(usage("decompose emits json or text, not csv"));
        }
        let quad = validated_quad(args.abs_tol, args.rel_tol, args.max_depth)?;
        let mut cfg = RunConfig::common(args.expr, args.n_vars, quad);
        cfg.point = Some(validated_point(&args.at, args.n_vars)?);
        cfg.with_oracle = args.oracle;
        cfg.format = args.format;
        cfg.output = args.output;
        Ok(cfg)
    }

    pub fn for_verify(args: VerifyArgs) -> Result<RunConfig, CliError> {
        if args.n_vars == 0 {
            return Err(usage("--n must be at least 1"));
        }
        if args.format == OutputFormat::Csv {
            return Err(usage("verify emits text or json, not csv"));
        }
        if !args.tol.is_finite() || args.tol <= 0.0 {
            return Err(usage("--tol must be positive"));
        }
        let quad = validated_quad(args.abs_tol, args.rel_tol, args.max_depth)?;
        let mut cfg = RunConfig::common(args.expr, args.n_vars, quad);
        cfg.grid = Some(validated_grid(&args.grid, args.n_vars)?);
        cfg.verify_tol = args.tol;
        cfg.format = args.format;
        cfg.output = args.output;
        Ok(cfg)
    }

    pub fn for_smooth(args: SmoothArgs) -> Result<RunConfig, CliError> {
        if args.n_vars == 0 {
            return Err(usage("--n must be at least 1"));
        }
        if args.k_values.is_empty() {
            return Err(usage("--k needs at least one steepness value"));
        }
        for &k in &args.k_values {
            if !k.is_finite() || k <= 0.0 {
                return Err(usage(format!("steepness {k} is not positive and finite")));
            }
        }
        if !args.tail_cut.is_finite() || args.tail_cut <= 0.0 {
            return Err(usage("--tail-cut must be positive"));
        }
        let quad = validated_quad(args.abs_tol, args.rel_tol, args.max_depth)?;
        let mut cfg = RunConfig::common(args.expr, args.n_vars, quad);
        cfg.point = Some(validated_point(&args.at, args.n_vars)?);
        cfg.k_values = args.k_values;
        cfg.tail_cut = args.tail_cut;
        cfg.format = OutputFormat::Csv;
        cfg.output = args.output;
        Ok(cfg)
    }
}

/// Fully rendered command output plus the final verdict. The body is
/// written even when the verdict is a numeric failure (a complete report
/// of a failed check is not partial output).
struct Rendered {
    body: String,
    verdict: Result<(), CliError>,
}

impl Rendered {
    fn ok(body: String) -> Rendered {
        Rendered {
            body,
            verdict: Ok(()),
        }
    }
}

fn parse_expression(cfg: &RunConfig) -> Result<Expr, CliError> {
    parse(&cfg.expression, cfg.n_vars).map_err(CliError::Parse)
}

fn cmd_decompose(cfg: &RunConfig) -> Result<Rendered, CliError> {
    let expr = parse_expression(cfg)?;
    let point = cfg.point.as_ref().expect("validated");
    let d = decompose(&expr, point, &cfg.quad, cfg.with_oracle).map_err(numeric)?;
    let direct = expr.evaluate(point).map_err(numeric)?;
    let reconstruction = d.reconstruct();
    let doc = DecomposeDoc {
        schema_version: "1".to_string(),
        expression: cfg.expression.clone(),
        n_vars: d.n_vars,
        point: point.coords().to_vec(),
        anchor: d.anchor,
        terms: d
            .terms
            .iter()
            .map(|t| TermDoc {
                subset: t.subset.indices().to_vec(),
                value: t.value,
                error_estimate: t.error_estimate,
                oracle_value: t.oracle_value,
                abs_oracle_gap: t.oracle_gap(),
            })
            .collect(),
        reconstruction,
        direct_value: direct,
        abs_error: (reconstruction - direct).abs(),
    };
    let body = match cfg.format {
        OutputFormat::Json => to_json_string(&doc),
        OutputFormat::Text => render_decompose_text(&doc),
        OutputFormat::Csv => unreachable!("rejected during validation"),
    };
    Ok(Rendered::ok(body))
}

fn render_decompose_text(doc: &DecomposeDoc) -> String {
    let mut out = String::new();
    out.push_str(&format!("expression:     {}\n", doc.expression));
    out.push_str(&format!("n_vars:         {}\n", doc.n_vars));
    let coords: Vec<String> = doc.point.iter().map(|c| c.to_string()).collect();
    out.push_str(&format!("point:          ({})\n", coords.join(", ")));
    out.push_str(&format!("anchor:         {}\n", fmt17(doc.anchor)));
    for t in &doc.terms {
        let subset: Vec<String> = t.subset.iter().map(|i| i.to_string()).collect();
        out.push_str(&format!(
            "term {{{}}}: value {}  error_estimate {}",
            subset.join(","),
            fmt17(t.value),
            fmt17(t.error_estimate)
        ));
        if let (Some(o), Some(gap)) = (t.oracle_value, t.abs_oracle_gap) {
            out.push_str(&format!("  oracle {}  gap {}", fmt17(o), fmt17(gap)));
        }
        out.push('\n');
    }
    out.push_str(&format!("reconstruction: {}\n", fmt17(doc.reconstruction)));
    out.push_str(&format!("direct value:   {}\n", fmt17(doc.direct_value)));
    out.push_str(&format!("abs error:      {}\n", fmt17(doc.abs_error)));
    out
}

fn grid_points(axes: &[GridAxis]) -> Result<Vec<Point>, CliError> {
    let per_axis: Vec<Vec<f64>> = axes
        .iter()
        .map(|ax| {
            (0..ax.steps)
                .map(|i| {
                    ax.min + (ax.max - ax.min) * i as f64 / (ax.steps - 1) as f64
                })
                .collect()
        })
        .collect();
    let total: usize = per_axis.iter().map(Vec::len).product();
    let mut points = Vec::with_capacity(total);
    let mut odometer = vec![0usize; axes.len()];
    for _ in 0..total {
        let coords: Vec<f64> = odometer
            .iter()
            .zip(&per_axis)
            .map(|(&i, vals)| vals[i])
            .collect();
        points.push(Point::new(coords).map_err(|e| usage(format!("invalid grid point: {e}")))?);
        // last axis spins fastest
        for axis in (0..odometer.len()).rev() {
            odometer[axis] += 1;
            if odometer[axis] < per_axis[axis].len() {
                break;
            }
            odometer[axis] = 0;
        }
    }
    Ok(points)
}

fn cmd_verify(cfg: &RunConfig) -> Result<Rendered, CliError> {
    let expr = parse_expression(cfg)?;
    let axes = cfg.grid.as_ref().expect("validated");
    let points = grid_points(axes)?;
    let report = verify_on_grid(&expr, &points, &cfg.quad).map_err(numeric)?;
    let pass = report.max_rel_error <= cfg.verify_tol;
    let doc = VerifyDoc {
        schema_version: "1".to_string(),
        expression: cfg.expression.clone(),
        n_vars: cfg.n_vars,
        grid: axes
            .iter()
            .map(|ax| GridAxisDoc {
                min: ax.min,
                max: ax.max,
                steps: ax.steps,
            })
            .collect(),
        points: report.points,
        max_abs_error: report.max_abs_error,
        max_rel_error: report.max_rel_error,
        worst_point: report.worst_point.coords().to_vec(),
        tolerance: cfg.verify_tol,
        pass,
    };
    let body = match cfg.format {
        OutputFormat::Json => to_json_string(&doc),
        OutputFormat::Text => render_verify_text(&doc),
        OutputFormat::Csv => unreachable!("rejected during validation"),
    };
    let verdict = if pass {
        Ok(())
    } else {
        Err(CliError::Numeric(format!(
            "max relative error {} exceeds tolerance {}",
            fmt17(doc.max_rel_error),
            fmt17(doc.tolerance)
        )))
    };
    Ok(Rendered { body, verdict })
}

fn render_verify_text(doc: &VerifyDoc) -> String {
    let mut out = String::new();
    out.push_str(&format!("expression:    {}\n", doc.expression));
    let axes: Vec<String> = doc
        .grid
        .iter()
        .map(|ax| format!("{}:{}:{}", ax.min, ax.max, ax.steps))
        .collect();
    out.push_str(&format!(
        "grid:          {} ({} points)\n",
        axes.join(" x "),
        doc.points
    ));
    out.push_str(&format!("max abs error: {}\n", fmt17(doc.max_abs_error)));
    out.push_str(&format!(
        "max rel error: {} (relative to 1+|value|)\n",
        fmt17(doc.max_rel_error)
    ));
    let coords: Vec<String> = doc.worst_point.iter().map(|c| c.to_string()).collect();
    out.push_str(&format!("worst point:   ({})\n", coords.join(", ")));
    out.push_str(&format!(
        "tolerance:     {} -> {}\n",
        fmt17(doc.tolerance),
        if doc.pass { "PASS" } else { "FAIL" }
    ));
    out
}

fn cmd_smooth(cfg: &RunConfig) -> Result<Rendered, CliError> {
    let expr = parse_expression(cfg)?;
    let point = cfg.point.as_ref().expect("validated");
    let subsets: Vec<VarSubset> = enumerate_subsets(cfg.n_vars)
        .map_err(numeric)?
        .into_iter()
        .skip(1)
        .collect();
    let mut rows = Vec::with_capacity(cfg.k_values.len() * subsets.len());
    for &k in &cfg.k_values {
        let params = SigmoidParams::new(k).with_tail_cut(cfg.tail_cut);
        for s in &subsets {
            let smooth = smooth_term_value(&expr, s, point, params, &cfg.quad).map_err(numeric)?;
            let exact = anchored_difference_oracle(&expr, s, point).map_err(numeric)?;
            rows.push(SmoothRow {
                k,
                subset: s.to_string(),
                smooth_value: smooth.value,
                exact_value: exact,
                abs_error: (smooth.value - exact).abs(),
            });
        }
    }
    Ok(Rendered::ok(smooth_csv(&rows)))
}

struct IdentityCheck {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn lemma_suite() -> Vec<IdentityCheck> {
    let mut checks = Vec::new();

    // value table
    let table_ok = step(3.0) == 1.0 && step(0.0) == 0.5 && step(-0.0) == 0.5 && step(-2.0) == 0.0;
    checks.push(IdentityCheck {
        name: "step value table",
        pass: table_ok,
        detail: format!(
            "step(+3)={} step(0)={} step(-2)={}",
            step(3.0),
            step(0.0),
            step(-2.0)
        ),
    });

    // reflection identity, exact
    let samples = deterministic_samples(10_001);
    let reflection_failures = samples
        .iter()
        .filter(|&&x| step(-x) != 1.0 - step(x))
        .count();
    checks.push(IdentityCheck {
        name: "step reflection identity",
        pass: reflection_failures == 0,
        detail: format!(
            "n={} samples incl. +-0.0 and denormals, {} violations",
            samples.len(),
            reflection_failures
        ),
    });

    // moderate arguments for the smooth-family checks
    let xs: Vec<f64> = samples
        .iter()
        .take(2_001)
        .map(|v| v.rem_euclid(100.0) - 50.0)
        .chain([0.0, -0.0])
        .collect();

    let midpoint_ok = [1.0, 10.0, 100.0, 1000.0, 10000.0]
        .into_iter()
        .all(|k| sigmoid(0.0, SigmoidParams::new(k)) == 0.5);
    checks.push(IdentityCheck {
        name: "sigmoid midpoint",
        pass: midpoint_ok,
        detail: "sigmoid(0)=0.5 exactly for k in {1,10,100,1000,10000}".to_string(),
    });

    let mut max_sum_gap = 0.0f64;
    for &k in &[1.0, 10.0] {
        let p = SigmoidParams::new(k);
        for &x in &xs {
            max_sum_gap = max_sum_gap.max((sigmoid(x, p) + sigmoid(-x, p) - 1.0).abs());
        }
    }
    checks.push(IdentityCheck {
        name: "sigmoid reflection sum",
        pass: max_sum_gap <= 1e-15,
        detail: format!("max |s(x)+s(-x)-1| = {max_sum_gap:e} over {} samples", xs.len()),
    });

    let p1 = SigmoidParams::new(1.0);
    let mut max_even_gap = 0.0f64;
    for &x in &xs {
        max_even_gap =
            max_even_gap.max((sigmoid_derivative(x, p1) - sigmoid_derivative(-x, p1)).abs());
    }
    checks.push(IdentityCheck {
        name: "sigmoid derivative antisymmetry",
        pass: max_even_gap <= 1e-15,
        detail: format!("max |s'(x)-s'(-x)| = {max_even_gap:e} at k=1"),
    });

    // d/du s(u - c) + d/du s(c - u) == 0 on pairs from the orthant
    let mut max_shift_gap = 0.0f64;
    for pair in xs.chunks(2) {
        if pair.len() < 2 {
            break;
        }
        let u = pair[0].abs().min(3.0);
        let c = pair[1].abs().min(3.0);
        let gap = (sigmoid_derivative(u - c, p1) - sigmoid_derivative(c - u, p1)).abs();
        max_shift_gap = max_shift_gap.max(gap);
    }
    checks.push(IdentityCheck {
        name: "smoothed step derivative antisymmetry",
        pass: max_shift_gap <= 1e-15,
        detail: format!("max gap = {max_shift_gap:e} at k=1"),
    });

    let mut convergence_ok = true;
    let mut pairs = 0;
    for &x in &[-1.0, -0.1, -0.01, 0.01, 0.1, 1.0] {
        for &k in &[10.0, 100.0, 1000.0] {
            let gap = (sigmoid(x, SigmoidParams::new(k)) - step(x)).abs();
            convergence_ok &= gap <= (-k * x.abs()).exp();
            pairs += 1;
        }
    }
    checks.push(IdentityCheck {
        name: "sigmoid-to-step convergence",
        pass: convergence_ok,
        detail: format!("|s_k(x)-step(x)| <= exp(-k|x|) on {pairs} (x,k) pairs"),
    });

    checks
}

fn cmd_lemmas() -> Result<Rendered, CliError> {
    let checks = lemma_suite();
    let mut body = String::new();
    let mut all_pass = true;
    for c in &checks {
        all_pass &= c.pass;
        body.push_str(&format!(
            "{:<40} {}  ({})\n",
            c.name,
            if c.pass { "PASS" } else { "FAIL" },
            c.detail
        ));
    }
    body.push_str(&format!(
        "overall: {}\n",
        if all_pass { "PASS" } else { "FAIL" }
    ));
    let verdict = if all_pass {
        Ok(())
    } else {
        Err(CliError::Numeric("identity suite failed".to_string()))
    };
    Ok(Rendered { body, verdict })
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let (rendered, output) = match cli.command {
        Command::Decompose(args) => {
            let cfg = RunConfig::for_decompose(args)?;
            (cmd_decompose(&cfg)?, cfg.output)
        }
        Command::Verify(args) => {
            let cfg = RunConfig::for_verify(args)?;
            (cmd_verify(&cfg)?, cfg.output)
        }
        Command::Smooth(args) => {
            let cfg = RunConfig::for_smooth(args)?;
            (cmd_smooth(&cfg)?, cfg.output)
        }
        Command::Lemmas => (cmd_lemmas()?, None),
    };
    match output {
        Some(path) => std::fs::write(&path, rendered.body.as_bytes())
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(rendered.body.as_bytes())
                .and_then(|_| lock.flush())
                .map_err(|e| usage(format!("cannot write to stdout: {e}")))?;
        }
    }
    rendered.verdict
}

/// Entry point for the binary: parses arguments, runs the command, and
/// returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

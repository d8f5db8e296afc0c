//! Command-line surface: operator evaluation, solving, spectrum
//! reproduction, and the verification suites, with CSV/JSON reporting.
//!
//! Four subcommands are exposed: `op` applies one fractional operator to a
//! JSON-described function and tabulates it over the lattice; `solve` runs
//! the Picard solver on a [`ProblemSpec`] document; `spectrum` reproduces
//! the closed-form eigenpairs and their
//! residuals; `verify` runs the seeded identity suites.
//!
//! The exit-code contract distinguishes regression classes for CI:
//! 0 = success, 1 = numeric failure (an identity or convergence miss),
//! 2 = input error (bad flags, malformed or invalid JSON), 3 = violated
//! mathematical precondition (singular boundary determinant, missing zero
//! limit, and similar).
//!
//! The environment variable `QFRAC_DEPTH` overrides the default lattice
//! truncation depth; an explicit `--depth` flag or a `depth` field in a
//! problem document always wins over the environment.
//!
//! All reports are deterministic for identical inputs and seed; the wall
//! clock enters JSON output only through an isolated `header` object, so
//! reports are byte-identical modulo that header. CSV numbers use the
//! shortest round-trip decimal representation to keep fixtures diff-stable.

use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{QError, Result};
use crate::fnspec::{FunctionSpec, ProblemSpec};
use crate::lattice::{Lattice, LatticeFn};
use crate::qcore::QContext;
use crate::qfrac::{
    caputo_left, caputo_right, dleft_rl, dright_rl, ileft, iright, FracOrder, RightEdgePolicy,
};
use crate::spectrum;
use crate::verify::{run_suite, Suite, VerificationReport};

/// Fractional q-calculus operators and the fractional q-Sturm-Liouville
/// solver on geometric lattices.
#[derive(Debug, Parser)]
#[command(name = "qfslp", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply a fractional operator to a function and tabulate the result.
    Op(OpArgs),
    /// Solve a Sturm-Liouville problem document by Picard iteration.
    Solve(SolveArgs),
    /// Reproduce the closed-form discrete spectrum and its residuals.
    Spectrum(SpectrumArgs),
    /// Run the seeded identity-verification suites.
    Verify(VerifyArgs),
}

/// Operator selector for the `op` subcommand.
#[derive(Debug, Clone, Copy, ValueEnum)]
enum OpKind {
    /// Left fractional integral.
    Ileft,
    /// Right fractional integral.
    Iright,
    /// Left Riemann-Liouville derivative.
    Dleft,
    /// Right Riemann-Liouville derivative.
    Dright,
    /// Left Caputo derivative.
    Cleft,
    /// Right Caputo derivative.
    Cright,
}

/// Output format selector.
#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct OpArgs {
    /// Operator to apply.
    #[arg(long, value_enum)]
    op: OpKind,
    /// Fractional order (integrals: alpha >= 0; derivatives: 0 < alpha < 1).
    #[arg(long)]
    alpha: f64,
    /// Lattice base, 0 < q < 1.
    #[arg(long)]
    q: f64,
    /// Lattice endpoint a > 0.
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    /// Lattice truncation depth (default: derived from q, or QFRAC_DEPTH).
    #[arg(long)]
    depth: Option<usize>,
    /// Path to a JSON function document.
    #[arg(long = "fn")]
    func: String,
    /// Output format written to stdout.
    #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
    out: OutFormat,
}

#[derive(Debug, Args)]
struct SolveArgs {
    /// Path to a JSON problem document.
    #[arg(long)]
    problem: String,
    /// Spectral parameter (overrides the document's `lambda`).
    #[arg(long)]
    lambda: Option<f64>,
    /// Path to a JSON function document for the initial iterate
    /// (default: the constant 1).
    #[arg(long)]
    f0: Option<String>,
    /// Fixed-point stopping tolerance (overrides the document).
    #[arg(long)]
    tol: Option<f64>,
    /// Iteration cap (overrides the document).
    #[arg(long)]
    max_iter: Option<usize>,
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    /// Lattice base, 0 < q < 1.
    #[arg(long)]
    q: f64,
    /// Fractional order, 0 < mu < 1.
    #[arg(long)]
    mu: f64,
    /// Weight exponent, beta > -1.
    #[arg(long)]
    beta: f64,
    /// Largest eigenpair index to verify.
    #[arg(long)]
    nmax: usize,
    /// Write the CSV table to this path instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Suite to run: qfrac, qfslp, spectrum, or all.
    #[arg(long)]
    suite: String,
    /// RNG seed for the sampled functions.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Also write the full report as JSON to this path.
    #[arg(long)]
    json_report: Option<String>,
}

/// Timestamp header keeping wall-clock data out of the report body.
#[derive(Debug, Serialize)]
struct Header {
    /// Seconds since the Unix epoch at report generation.
    generated_at_unix: u64,
}

impl Header {
    fn now() -> Self {
        let generated_at_unix = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Self { generated_at_unix }
    }
}

/// Entry point: parse `argv`, run the subcommand, map errors to the exit
/// contract. Output goes to stdout, diagnostics to stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version by "erroring" with the text
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Op(args) => cmd_op(&args),
        Command::Solve(args) => cmd_solve(&args),
        Command::Spectrum(args) => cmd_spectrum(&args),
        Command::Verify(args) => cmd_verify(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            error_exit_code(&e)
        }
    }
}

/// Map library errors onto the exit contract: input errors are 2, violated
/// mathematical preconditions 3, non-convergence 1.
fn error_exit_code(e: &QError) -> i32 {
    match e {
        QError::InvalidParameter(_) => 2,
        QError::MaxIterations { .. } | QError::Divergence { .. } => 1,
        _ => 3,
    }
}

/// Default lattice depth override from `QFRAC_DEPTH` (explicit flags and
/// document fields take precedence over the environment).
fn env_depth() -> Result<Option<usize>> {
    match std::env::var("QFRAC_DEPTH") {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| QError::InvalidParameter(format!("QFRAC_DEPTH must be a nonnegative integer, got '{s}'"))),
        Err(_) => Ok(None),
    }
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| QError::InvalidParameter(format!("cannot read {path}: {e}")))
}

fn parse_function(path: &str) -> Result<FunctionSpec> {
    let text = read_file(path)?;
    let spec: FunctionSpec = serde_json::from_str(&text)
        .map_err(|e| QError::InvalidParameter(format!("function spec parse error in {path}: {e}")))?;
    spec.validate()?;
    Ok(spec)
}

fn build_lattice(q: f64, a: f64, depth: Option<usize>) -> Result<(QContext, Arc<Lattice>)> {
    let ctx = QContext::new(q)?;
    let depth = match depth {
        Some(d) => Some(d),
        None => env_depth()?,
    };
    let lattice = match depth {
        Some(d) => Lattice::with_depth(&ctx, a, d)?,
        None => Lattice::new(&ctx, a)?,
    };
    Ok((ctx, lattice))
}

// ---------------------------------------------------------------------------
// op
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
struct OpRow {
    j: usize,
    x: f64,
    f: f64,
    of: f64,
}

#[derive(Debug, Serialize)]
struct OpReport {
    header: Header,
    rows: Vec<OpRow>,
}

fn cmd_op(args: &OpArgs) -> Result<i32> {
    let spec = parse_function(&args.func)?;
    let (ctx, lattice) = build_lattice(args.q, args.a, args.depth)?;
    let f = spec.sample(&lattice, &ctx)?;
    let order_int = || FracOrder::integral(args.alpha);
    let order_der = || FracOrder::derivative(args.alpha);
    let edge = RightEdgePolicy::default();
    let of = match args.op {
        OpKind::Ileft => ileft(order_int()?, &f)?,
        OpKind::Iright => iright(order_int()?, &f)?,
        OpKind::Dleft => dleft_rl(order_der()?, &f)?,
        OpKind::Dright => dright_rl(order_der()?, &f, edge)?,
        OpKind::Cleft => caputo_left(order_der()?, &f)?,
        OpKind::Cright => caputo_right(order_der()?, &f, edge)?,
    };
    let rows: Vec<OpRow> = (0..=lattice.depth)
        .map(|j| OpRow {
            j,
            x: f64::from(lattice.point(j)),
            f: f64::from(f.value(j)),
            of: f64::from(of.value(j)),
        })
        .collect();
    let mut out = String::new();
    match args.out {
        OutFormat::Csv => {
            out.push_str("j,x,f,of\n");
            for row in &rows {
                let _ = writeln!(out, "{},{},{},{}", row.j, row.x, row.f, row.of);
            }
        }
        OutFormat::Json => {
            let report = OpReport {
                header: Header::now(),
                rows,
            };
            out = serde_json::to_string_pretty(&report).expect("op report serializes");
            out.push('\n');
        }
    }
    print!("{out}");
    Ok(0)
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
struct SolutionPoint {
    j: usize,
    x: f64,
    y: f64,
}

#[derive(Debug, Serialize)]
struct SolveOutput {
    header: Header,
    converged: bool,
    lambda: f64,
    iterations: usize,
    lipschitz: f64,
    contraction_ratio: f64,
    fixed_point_residual: f64,
    bc_residuals: [f64; 2],
    admissible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    warning: Option<String>,
    solution: Vec<SolutionPoint>,
}

#[derive(Debug, Serialize)]
struct SolveFailure {
    header: Header,
    converged: bool,
    lambda: f64,
    error: String,
}

fn cmd_solve(args: &SolveArgs) -> Result<i32> {
    let mut spec = ProblemSpec::from_json(&read_file(&args.problem)?)?;
    if spec.depth.is_none() {
        spec.depth = env_depth()?;
    }
    if let Some(tol) = args.tol {
        spec.tolerances.fixed_point = tol;
    }
    if let Some(mi) = args.max_iter {
        spec.tolerances.max_iterations = mi;
    }
    spec.validate()?;
    let lambda = args
        .lambda
        .or(spec.lambda)
        .ok_or_else(|| QError::InvalidParameter(
            "no spectral parameter: pass --lambda or set \"lambda\" in the problem document".into(),
        ))?;
    let prob = spec.build()?;
    let f0 = match &args.f0 {
        Some(path) => parse_function(path)?.sample(prob.lattice(), prob.context())?,
        None => LatticeFn::constant(prob.lattice(), 1.0),
    };
    let report = match prob.solve_picard(
        lambda,
        &f0,
        spec.tolerances.fixed_point,
        spec.tolerances.max_iterations,
    ) {
        Ok(report) => report,
        Err(e @ (QError::MaxIterations { .. } | QError::Divergence { .. })) => {
            let failure = SolveFailure {
                header: Header::now(),
                converged: false,
                lambda,
                error: e.to_string(),
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&failure).expect("failure report serializes")
            );
            return Ok(1);
        }
        Err(e) => return Err(e),
    };
    let lattice = prob.lattice();
    let output = SolveOutput {
        header: Header::now(),
        converged: true,
        lambda,
        iterations: report.iterations,
        lipschitz: f64::from(report.lipschitz),
        contraction_ratio: f64::from(report.contraction_ratio),
        fixed_point_residual: f64::from(report.fixed_point_residual),
        bc_residuals: [
            f64::from(report.bc_residuals.0),
            f64::from(report.bc_residuals.1),
        ],
        admissible: report.admissible,
        warning: if report.admissible {
            None
        } else {
            Some(
                "the contraction bound does not certify this lambda; the iteration \
                 converged anyway and the residuals are reported honestly"
                    .into(),
            )
        },
        solution: (0..=lattice.depth)
            .map(|j| SolutionPoint {
                j,
                x: f64::from(lattice.point(j)),
                y: f64::from(report.solution.value(j)),
            })
            .collect(),
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&output).expect("solve report serializes")
    );
    Ok(0)
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

/// Residual tolerances the spectrum table is judged against.
const SPECTRUM_EIGEN_TOL: f64 = 1e-8;
const SPECTRUM_BC0_TOL: f64 = 1e-12;
const SPECTRUM_GRAM_TOL: f64 = 1e-10;

fn cmd_spectrum(args: &SpectrumArgs) -> Result<i32> {
    let mu = FracOrder::derivative(args.mu)?;
    let ctx = QContext::new(args.q)?;
    let depth = env_depth()?;
    let lattice = match depth {
        Some(d) => Lattice::with_depth(&ctx, 1.0, d)?,
        None => Lattice::new(&ctx, 1.0)?,
    };
    let report = spectrum::verify_eigenpairs(
        args.nmax,
        mu,
        args.beta,
        &lattice,
        RightEdgePolicy::default(),
    )?;
    let gram = f64::from(report.max_gram_offdiag);
    let mut out = String::from(
        "n,lambda_n,eigen_residual,bc0_residual,bc1_split_weight,bc1_full_weight,gram_offdiag_max\n",
    );
    let mut pass = gram <= SPECTRUM_GRAM_TOL;
    for row in &report.rows {
        let eigen = f64::from(row.eigen_residual);
        let bc0 = f64::from(row.phi_at_zero).abs();
        pass &= eigen <= SPECTRUM_EIGEN_TOL && bc0 <= SPECTRUM_BC0_TOL;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            row.n,
            f64::from(row.lambda),
            eigen,
            bc0,
            f64::from(row.flux_bc_split_weight),
            f64::from(row.flux_bc_full_weight),
            gram
        );
    }
    match &args.out {
        Some(path) => std::fs::write(path, &out).map_err(|e| {
            QError::InvalidParameter(format!("cannot write {path}: {e}"))
        })?,
        None => print!("{out}"),
    }
    if !pass {
        eprintln!(
            "spectrum: residuals exceed tolerances (eigen {SPECTRUM_EIGEN_TOL}, \
             bc0 {SPECTRUM_BC0_TOL}, gram {SPECTRUM_GRAM_TOL})"
        );
    }
    Ok(if pass { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
struct VerifyOutput<'a> {
    header: Header,
    #[serde(flatten)]
    report: &'a VerificationReport,
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    let suite = Suite::from_str(&args.suite)?;
    let report = run_suite(suite, args.seed)?;
    for row in &report.rows {
        println!(
            "{}: max residual {:e} vs tolerance {:e} ... {}",
            row.identity,
            row.max_residual,
            row.tolerance,
            if row.pass { "pass" } else { "FAIL" }
        );
    }
    if let Some(path) = &args.json_report {
        let output = VerifyOutput {
            header: Header::now(),
            report: &report,
        };
        let json = serde_json::to_string_pretty(&output).expect("verify report serializes");
        std::fs::write(path, json)
            .map_err(|e| QError::InvalidParameter(format!("cannot write {path}: {e}")))?;
    }
    if report.all_pass() {
        Ok(0)
    } else {
        for row in report.rows.iter().filter(|row| !row.pass) {
            eprintln!("verification failed: {}", row.identity);
        }
        Ok(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_codes_follow_the_contract() {
        assert_eq!(error_exit_code(&QError::InvalidParameter("x".into())), 2);
        assert_eq!(error_exit_code(&QError::SingularDelta(0.0)), 3);
        assert_eq!(error_exit_code(&QError::NoZeroLimit("f".into())), 3);
        assert_eq!(
            error_exit_code(&QError::MaxIterations {
                iterations: 5,
                last_step: 1.0
            }),
            1
        );
    }

    #[test]
    fn unknown_suite_is_an_input_error() {
        let code = run(["qfslp", "verify", "--suite", "nonsense"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn spectrum_rejects_out_of_range_order() {
        let code = run([
            "qfslp", "spectrum", "--q", "0.5", "--mu", "1.2", "--beta", "0.4", "--nmax", "2",
        ]);
        assert_eq!(code, 2);
    }
}

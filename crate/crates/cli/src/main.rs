//! `orlicz`: admissibility checks, N-function tables, solves, λ⋆ estimates
//! and invariant suites.
//!
//! Exit codes: 0 success, 1 admissibility rejection (or failed invariants),
//! 2 convergence or geometry failure, 3 input error.

mod config;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use orlicz_core::verify::{self, Suite, VerifyOptions};
use orlicz_core::{
    check_admissible, estimate_lambda_star, json, minimize_i, mountain_pass, Error, ExponentSet, NFunctionParams,
    Problem, ScalarField, SolutionFile,
};
use serde::Serialize;

use config::RunConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Exit {
    Ok = 0,
    Rejected = 1,
    NotConverged = 2,
    Input = 3,
}

impl From<Exit> for ExitCode {
    fn from(e: Exit) -> Self {
        ExitCode::from(e as u8)
    }
}

struct Failure {
    exit: Exit,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self { exit: Exit::Input, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = match e {
            Error::InadmissibleExponents(_) | Error::DimensionTooSmall { .. } => Exit::Rejected,
            Error::NonConvergence { .. } | Error::QuadratureFailure { .. } | Error::GeometryFailure { .. } => {
                Exit::NotConverged
            }
            Error::InvalidParameter(_) | Error::DimensionMismatch { .. } | Error::DegenerateBump | Error::Format(_) => {
                Exit::Input
            }
        };
        Self { exit, message: e.to_string() }
    }
}

type Outcome = Result<Exit, Failure>;

#[derive(Parser)]
#[command(name = "orlicz", version, about = "Orlicz N-functions and the log(1+|∇u|^q)|∇u|^{p-2}∇u Dirichlet problem")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report the exponent hypotheses as JSON; exit 1 if any fails.
    Check {
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
    },
    /// Write t, φ, Φ, Φ̄(φ(t)) and tφ/Φ on a logarithmic grid as CSV.
    Tabulate {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        #[arg(long = "t-min")]
        t_min: f64,
        #[arg(long = "t-max")]
        t_max: f64,
        #[arg(long)]
        points: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a solver and write the JSON solution file.
    Solve {
        #[arg(long, value_parser = parse_problem)]
        problem: Option<Problem>,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Solve even if the exponents are inadmissible.
        #[arg(long)]
        force: bool,
    },
    /// Print the bump-function estimate {"lambdaHat": ...}.
    LambdaStar {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run an invariant suite and print its JSON summary.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Test hook: report the named invariant as failed.
        #[arg(long, hide = true)]
        tamper: Option<String>,
    },
}

fn parse_problem(s: &str) -> Result<Problem, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = json::to_string_pretty(value).map_err(|e| Failure::input(e.to_string()))?;
    let mut stdout = std::io::stdout().lock();
    writeln!(stdout, "{text}").map_err(|e| Failure::input(e.to_string()))
}

fn check(n: usize, p: f64, q: f64, r: f64, lambda: f64) -> Outcome {
    let e = ExponentSet::new(n, p, q, r, lambda)?;
    let report = check_admissible(&e);
    print_json(&report)?;
    Ok(if report.admissible { Exit::Ok } else { Exit::Rejected })
}

fn tabulate(p: f64, q: f64, t_min: f64, t_max: f64, points: usize, out: &Path) -> Outcome {
    let nf = NFunctionParams::new(p, q)?;
    if !(t_min > 0.0 && t_max > t_min && t_max.is_finite()) {
        return Err(Failure::input(format!("need 0 < t-min < t-max, got {t_min}, {t_max}")));
    }
    if points < 2 {
        return Err(Failure::input(format!("need at least 2 points, got {points}")));
    }
    let io = |e: csv::Error| Failure::input(format!("{}: {e}", out.display()));
    let mut writer = csv::Writer::from_path(out).map_err(io)?;
    writer.write_record(["t", "phi", "Phi", "PhiConjAtPhi", "ratio"]).map_err(io)?;
    let ratio = t_max / t_min;
    for i in 0..points {
        let t = if i + 1 == points { t_max } else { t_min * ratio.powf(i as f64 / (points - 1) as f64) };
        let phi = nf.phi(t);
        let big = nf.capital_phi(t);
        let conj = nf.young_conjugate(phi)?;
        let row = [t, phi, big, conj, t * phi / big].map(|v| format!("{v:.16e}"));
        writer.write_record(&row).map_err(io)?;
    }
    writer.flush().map_err(|e| Failure::input(format!("{}: {e}", out.display())))?;
    Ok(Exit::Ok)
}

#[derive(Serialize)]
struct SolveReport<'a> {
    problem: Problem,
    out: String,
    diagnostics: &'a orlicz_core::solution::Diagnostics,
}

fn solve(problem: Option<Problem>, config: &Path, out: &Path, force: bool) -> Outcome {
    let cfg = RunConfig::read(config).map_err(Failure::input)?;
    let problem = match (problem, cfg.problem) {
        (Some(a), Some(b)) if a != b => {
            return Err(Failure::input(format!("--problem {a} conflicts with problem={b} in the config")))
        }
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => return Err(Failure::input("no problem given (--problem or problem= in the config)")),
    };
    let force = force || cfg.force;
    let e = &cfg.exponents;
    let result = match problem {
        Problem::Min => minimize_i(e, &cfg.grid, &ScalarField::zeros(&cfg.grid), &cfg.minimize_options(), force)?,
        Problem::MountainPass => mountain_pass(e, &cfg.grid, &cfg.mountain_pass_config(), cfg.seed, force)?,
    };
    let file = SolutionFile::from_result(e, problem, &result);
    file.write(out)?;
    print_json(&SolveReport { problem, out: out.display().to_string(), diagnostics: &file.diagnostics })?;
    if result.forced {
        eprintln!("warning: admissibility check bypassed (violated: {})", check_admissible(e).violation_summary());
    }
    Ok(if result.converged { Exit::Ok } else { Exit::NotConverged })
}

#[derive(Serialize)]
struct LambdaStarReport {
    #[serde(rename = "lambdaHat")]
    lambda_hat: f64,
}

fn lambda_star(config: &Path) -> Outcome {
    let cfg = RunConfig::read(config).map_err(Failure::input)?;
    let lambda_hat = estimate_lambda_star(&cfg.exponents, &cfg.grid, &cfg.bump)?;
    print_json(&LambdaStarReport { lambda_hat })?;
    Ok(Exit::Ok)
}

fn run_verify(suite: Suite, seed: u64, tamper: Option<String>) -> Outcome {
    let summary = verify::run(suite, &VerifyOptions { seed, tamper })?;
    let mut stdout = std::io::stdout().lock();
    writeln!(stdout, "{}", summary.to_json()).map_err(|e| Failure::input(e.to_string()))?;
    if !summary.passed {
        eprintln!("failed invariants: {}", summary.failed.join(", "));
    }
    Ok(if summary.passed { Exit::Ok } else { Exit::Rejected })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Exit::Input.into() } else { Exit::Ok.into() };
        }
    };
    let outcome = match cli.command {
        Command::Check { n, p, q, r, lambda } => check(n, p, q, r, lambda),
        Command::Tabulate { p, q, t_min, t_max, points, out } => tabulate(p, q, t_min, t_max, points, &out),
        Command::Solve { problem, config, out, force } => solve(problem, &config, &out, force),
        Command::LambdaStar { config } => lambda_star(&config),
        Command::Verify { suite, seed, tamper } => run_verify(suite, seed, tamper),
    };
    match outcome {
        Ok(exit) => exit.into(),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.exit.into()
        }
    }
}

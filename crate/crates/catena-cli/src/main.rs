//! Command-line front end: reads a JSON chain description, dispatches to a
//! solver, and writes the solution as JSON, CSV, or SVG.

mod record;
mod spec_file;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use catena::{
    oracle_minimize, solve_general, solve_symmetric, to_polyline, ChainSolution, ChainSpec,
    OracleOptions, SolveError, ValidatedChainSpec, DEFAULT_SYMMETRY_TOL,
};
use record::SolutionRecord;
use spec_file::parse_spec;

#[derive(Parser)]
#[command(name = "catena", version, about = "Equilibrium shapes of discrete hanging chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a chain described by a JSON file
    Solve(SolveArgs),
    /// Validate a chain file and report whether it is symmetric
    Check(CheckArgs),
    /// Solve the built-in 19-link uniform chain
    Demo(RenderArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Chain description (JSON)
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    render: RenderArgs,
}

#[derive(Args)]
struct RenderArgs {
    /// Solver selection; `auto` uses the scalar reduction for symmetric
    /// chains, the two-multiplier Newton otherwise, and falls back to the
    /// oracle if Newton fails
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,
    /// Residual tolerance (constraint-violation tolerance for the oracle);
    /// defaults to 1e-12, or 1e-8 for the oracle
    #[arg(long)]
    tol: Option<f64>,
    /// Write the result here instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for the oracle's random restarts
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct CheckArgs {
    /// Chain description (JSON)
    #[arg(long)]
    input: PathBuf,
    /// Relative tolerance for comparing mirrored links
    #[arg(long, default_value_t = DEFAULT_SYMMETRY_TOL)]
    tol: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Symmetric,
    General,
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

enum CliError {
    /// Unreadable, unparsable, or invalid input. Exit code 1.
    Input(String),
    /// A solver could not produce a solution. Exit code 2.
    Solver(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Solver(_) => 2,
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let message = match &err {
                CliError::Input(m) | CliError::Solver(m) => m,
            };
            eprintln!("error: {message}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve(args) => {
            let spec = load_spec(&args.input)?;
            solve_and_emit(&spec, &args.render)
        }
        Command::Check(args) => check(&args),
        Command::Demo(render) => {
            let spec = demo_spec();
            solve_and_emit(&spec, &render)
        }
    }
}

/// The chain in the reference figure: 19 identical links spanning 15 of
/// their 19 units of total length.
fn demo_spec() -> ValidatedChainSpec {
    ChainSpec::uniform(19, 1.0, 1.0, 15.0)
        .validate()
        .expect("demo chain is valid")
}

fn load_spec(path: &PathBuf) -> Result<ValidatedChainSpec, CliError> {
    let bytes = std::fs::read(path)
        .map_err(|err| CliError::Input(format!("cannot read {}: {err}", path.display())))?;
    let (_, spec) = parse_spec(&bytes)
        .map_err(|err| CliError::Input(format!("{}: {err}", path.display())))?;
    Ok(spec)
}

fn check(args: &CheckArgs) -> Result<(), CliError> {
    let spec = load_spec(&args.input)?;
    println!(
        "valid chain: {} links, span {}, total length {}",
        spec.n(),
        spec.span(),
        spec.total_length()
    );
    let report = spec.check_symmetry(args.tol);
    match report.first_violation {
        None => println!("symmetric: yes"),
        Some((i, j)) => println!("symmetric: no, first violation at links ({i}, {j})"),
    }
    Ok(())
}

fn run_solver(
    spec: &ValidatedChainSpec,
    args: &RenderArgs,
) -> Result<ChainSolution, SolveError> {
    let newton_tol = args.tol.unwrap_or(1e-12);
    let oracle_opts = OracleOptions {
        restarts: 5,
        seed: args.seed,
        tol: args.tol.unwrap_or(1e-8),
        ..Default::default()
    };
    match args.method {
        Method::Symmetric => solve_symmetric(spec, newton_tol),
        Method::General => solve_general(spec, newton_tol),
        Method::Oracle => oracle_minimize(spec, &oracle_opts),
        Method::Auto => {
            if spec.check_symmetry(DEFAULT_SYMMETRY_TOL).is_symmetric {
                solve_symmetric(spec, newton_tol)
            } else {
                solve_general(spec, newton_tol).or_else(|err| {
                    eprintln!("note: general solver did not converge ({err}); falling back to the oracle");
                    oracle_minimize(spec, &oracle_opts)
                })
            }
        }
    }
}

fn solve_and_emit(spec: &ValidatedChainSpec, args: &RenderArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let sol = run_solver(spec, args).map_err(|err| CliError::Solver(err.to_string()))?;
    let wall_time_s = started.elapsed().as_secs_f64();

    let record = SolutionRecord::new(spec, &sol, wall_time_s);
    let body = match args.format {
        Format::Json => {
            let mut json = serde_json::to_string_pretty(&record)
                .map_err(|err| CliError::Solver(format!("serialization failed: {err}")))?;
            json.push('\n');
            json
        }
        Format::Csv => record.to_csv(),
        Format::Svg => svg::render_svg(&to_polyline(&sol, spec)),
    };

    match &args.output {
        Some(path) => std::fs::write(path, body).map_err(|err| {
            CliError::Input(format!("cannot write {}: {err}", path.display()))
        })?,
        None => print!("{body}"),
    }
    Ok(())
}

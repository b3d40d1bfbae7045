//! Commands behind the `flsched` binary.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid input or flags,
//! 3 algorithm precondition not met, 4 verification mismatch,
//! 5 instance too large for the oracle.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use flsched::generate::{generate, CostFamily, GeneratorSpec, LimitStyle, LowerStyle};
use flsched::io::{instance_to_json, read_instance, FormatError, ScheduleReport};
use flsched::oracle::{self, OracleError};
use flsched::schedulers::{dispatch, solve_with};
use flsched::{Algorithm, Instance, Regime, Schedule, SolveError, Validation};

pub mod bench;

pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;
pub const EXIT_TOO_LARGE: i32 = 5;

/// Relative tolerance for comparing optimal costs.
pub const COST_TOLERANCE: f64 = 1e-9;

pub fn costs_match(a: f64, b: f64) -> bool {
    (a - b).abs() <= COST_TOLERANCE * a.abs().max(b.abs()).max(1.0)
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(EXIT_USAGE, message)
    }

    pub fn from_solve(err: SolveError) -> Self {
        let code = match err {
            SolveError::Regime { .. } | SolveError::Limits { .. } => EXIT_PRECONDITION,
            SolveError::Knapsack(_) => EXIT_USAGE,
        };
        Self::new(code, err.to_string())
    }

    fn io(path: &Path, err: std::io::Error) -> Self {
        Self::new(EXIT_IO, format!("{}: {err}", path.display()))
    }
}

impl From<FormatError> for CliError {
    fn from(err: FormatError) -> Self {
        let code = match err {
            FormatError::Io { .. } => EXIT_IO,
            _ => EXIT_USAGE,
        };
        Self::new(code, err.to_string())
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Debug, Parser)]
#[command(name = "flsched", version, about = "Minimal-cost task partitioning over heterogeneous resources")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve an instance and print the schedule as JSON.
    Solve(SolveArgs),
    /// Solve an instance and compare against exhaustive enumeration.
    Verify(VerifyArgs),
    /// Write a seeded random instance.
    Generate(GenerateArgs),
    /// Time solvers on generated instances and print CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmArg {
    Auto,
    Dp,
    Marin,
    Marco,
    Mardecun,
    Mardec,
}

impl AlgorithmArg {
    fn resolve(self) -> Option<Algorithm> {
        match self {
            AlgorithmArg::Auto => None,
            AlgorithmArg::Dp => Some(Algorithm::Dp),
            AlgorithmArg::Marin => Some(Algorithm::MarIn),
            AlgorithmArg::Marco => Some(Algorithm::MarCo),
            AlgorithmArg::Mardecun => Some(Algorithm::MarDecUn),
            AlgorithmArg::Mardec => Some(Algorithm::MarDec),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Increasing,
    Constant,
    Decreasing,
    Arbitrary,
}

impl From<RegimeArg> for Regime {
    fn from(r: RegimeArg) -> Self {
        match r {
            RegimeArg::Increasing => Regime::Increasing,
            RegimeArg::Constant => Regime::Constant,
            RegimeArg::Decreasing => Regime::Decreasing,
            RegimeArg::Arbitrary => Regime::Arbitrary,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LimitArg {
    Slack,
    Tight,
}

impl From<LimitArg> for LimitStyle {
    fn from(l: LimitArg) -> Self {
        match l {
            LimitArg::Slack => LimitStyle::Slack,
            LimitArg::Tight => LimitStyle::Tight,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LowerArg {
    Zero,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Tabulated,
    Parametric,
}

impl From<FamilyArg> for CostFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Tabulated => CostFamily::Tabulated,
            FamilyArg::Parametric => CostFamily::Parametric,
        }
    }
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    /// Instance JSON file.
    pub instance: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    pub algorithm: AlgorithmArg,
    /// Replace the task count stored in the file.
    #[arg(long = "T-override", value_name = "T")]
    pub tasks_override: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub input: InstanceArgs,
    /// Write the schedule here instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Skip the regime precondition check of specialized algorithms.
    #[arg(long)]
    pub no_validate: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InstanceArgs,
    /// Maximum number of assignments the oracle may enumerate.
    #[arg(long, default_value_t = oracle::DEFAULT_BOUND)]
    pub bound: u128,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long = "T")]
    pub tasks: usize,
    #[arg(long, value_enum)]
    pub regime: RegimeArg,
    #[arg(long, value_enum, default_value = "tight")]
    pub limits: LimitArg,
    #[arg(long, value_enum, default_value = "zero")]
    pub lowers: LowerArg,
    #[arg(long, value_enum, default_value = "tabulated")]
    pub family: FamilyArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    pub algorithm: Vec<AlgorithmArg>,
    /// Resource counts.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    /// Task counts; defaults to 4n for each n.
    #[arg(long = "T", value_delimiter = ',')]
    pub tasks: Vec<usize>,
    /// Override the algorithm's default instance regime.
    #[arg(long, value_enum)]
    pub regime: Option<RegimeArg>,
    #[arg(long, value_enum)]
    pub limits: Option<LimitArg>,
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Compare every result with the dynamic program.
    #[arg(long)]
    pub check: bool,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Solve(args) => cmd_solve(&args, out),
        Command::Verify(args) => cmd_verify(&args, out),
        Command::Generate(args) => cmd_generate(&args, out),
        Command::Bench(args) => cmd_bench(&args, out),
    }
}

fn load(args: &InstanceArgs) -> Result<Instance, CliError> {
    let instance = read_instance(&args.instance)?;
    match args.tasks_override {
        Some(t) => instance
            .with_tasks(t)
            .map_err(|e| CliError::usage(format!("invalid instance: {e}"))),
        None => Ok(instance),
    }
}

fn solve(
    instance: &Instance,
    algorithm: AlgorithmArg,
    validation: Validation,
) -> Result<(Schedule, Algorithm, u64), CliError> {
    let start = Instant::now();
    let (schedule, algorithm) = match algorithm.resolve() {
        None => dispatch(instance, None),
        Some(alg) => solve_with(alg, instance, validation).map(|s| (s, alg)),
    }
    .map_err(CliError::from_solve)?;
    let elapsed_ns = start.elapsed().as_nanos().max(1) as u64;
    Ok((schedule, algorithm, elapsed_ns))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, format!("{text}\n")).map_err(|e| CliError::io(p, e)),
        None => writeln!(out, "{text}").map_err(|e| CliError::new(EXIT_IO, e.to_string())),
    }
}

pub fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let instance = load(&args.input)?;
    let validation = if args.no_validate {
        Validation::Unchecked
    } else {
        Validation::Checked
    };
    let (schedule, algorithm, elapsed_ns) = solve(&instance, args.input.algorithm, validation)?;
    let report = ScheduleReport {
        assignment: schedule.assignment,
        total_cost: schedule.total_cost,
        algorithm: algorithm.name().to_owned(),
        elapsed_ns,
    };
    emit(out, args.output.as_deref(), &report.to_json())
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let instance = load(&args.input)?;
    let expected = oracle::enumerate_schedules(&instance, args.bound).map_err(|e| match e {
        OracleError::TooLarge { .. } => CliError::new(EXIT_TOO_LARGE, e.to_string()),
        OracleError::Infeasible => CliError::usage(e.to_string()),
    })?;
    let (schedule, algorithm, _) = solve(&instance, args.input.algorithm, Validation::Checked)?;
    let feasible = instance.is_feasible(&schedule.assignment);
    let matched = feasible && costs_match(schedule.total_cost, expected.min_cost);
    let io = |e: std::io::Error| CliError::new(EXIT_IO, e.to_string());
    writeln!(out, "algorithm: {algorithm}").map_err(io)?;
    writeln!(out, "solver cost: {}", schedule.total_cost).map_err(io)?;
    writeln!(out, "oracle cost: {}", expected.min_cost).map_err(io)?;
    if matched {
        writeln!(out, "match").map_err(io)?;
        Ok(())
    } else {
        Err(CliError::new(
            EXIT_MISMATCH,
            format!(
                "mismatch: solver assignment {:?} (feasible: {feasible}), oracle witness {:?}",
                schedule.assignment, expected.witnesses[0]
            ),
        ))
    }
}

pub fn cmd_generate(args: &GenerateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let spec = GeneratorSpec::new(args.n, args.tasks, args.regime.into(), args.seed)
        .limits(args.limits.into())
        .lowers(match args.lowers {
            LowerArg::Zero => LowerStyle::Zero,
            LowerArg::Random => LowerStyle::Random,
        })
        .family(args.family.into());
    let instance = generate(&spec).map_err(|e| CliError::usage(e.to_string()))?;
    emit(out, args.output.as_deref(), &instance_to_json(&instance))
}

pub fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.reps == 0 {
        return Err(CliError::usage("--reps must be at least 1"));
    }
    let mut records = Vec::new();
    for &alg in &args.algorithm {
        let algorithm = alg
            .resolve()
            .ok_or_else(|| CliError::usage("bench needs concrete algorithms, not auto"))?;
        for &n in &args.n {
            let tasks = if args.tasks.is_empty() { vec![4 * n] } else { args.tasks.clone() };
            for t in tasks {
                let mut cell = bench::Cell::new(algorithm, n, t, args.seed);
                if let Some(r) = args.regime {
                    cell.regime = r.into();
                }
                if let Some(l) = args.limits {
                    cell.limits = l.into();
                }
                if let Some(f) = args.family {
                    cell.family = f.into();
                }
                records.push(bench::run_cell(&cell, args.reps, args.check)?);
            }
        }
    }
    let mut buf = Vec::new();
    bench::write_csv(&mut buf, &records).expect("writing to memory");
    let text = String::from_utf8(buf).expect("csv is utf-8");
    emit(out, args.output.as_deref(), text.trim_end())
}

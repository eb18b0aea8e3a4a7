//! `jcx`: measures, asymptotic predictions, regime sweeps and quadrature
//! rules for orthonormal Jacobi polynomials.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jcx_core::quadrature::{DEFAULT_MAX_EVALS, MAX_RULE_ORDER};

#[derive(Debug, Parser)]
#[command(name = "jcx", version, about = "Spreading and complexity measures of orthonormal Jacobi polynomials")]
struct Cli {
    /// Total integrand evaluations allowed per integral.
    #[arg(long, global = true, env = "JCX_MAX_EVALS", default_value_t = DEFAULT_MAX_EVALS)]
    max_evals: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute every measure of one polynomial.
    Measure(MeasureArgs),
    /// Print the leading-order asymptotic law of one measure.
    Asym(AsymArgs),
    /// Compare computed measures with their asymptotic laws over a grid.
    Sweep(SweepArgs),
    /// Tabulate the large-degree LMC constants under both Gegenbauer mappings.
    LmcCompare(LmcCompareArgs),
    /// Dump a Gauss–Jacobi rule as CSV.
    Rule(RuleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Degree,
    Alpha,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    #[default]
    Paper,
    Derived,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureArg {
    Variance,
    Fisher,
    E,
    I,
    S,
    Ls,
    W2,
    Ccr,
    Cfs,
    Clmc,
    /// Lq-norm `N_p` (alpha regime only; order from `--p`).
    Np,
}

#[derive(Debug, Clone, Args)]
pub struct PolyArgs {
    /// Polynomial degree n.
    #[arg(short = 'n', long = "degree", default_value_t = 0)]
    pub degree: u32,
    /// Weight exponent α at x = 1.
    #[arg(short = 'a', long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Weight exponent β at x = -1.
    #[arg(short = 'b', long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub beta: f64,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct MeasureArgs {
    #[command(flatten)]
    pub poly: PolyArgs,
    /// Absolute tolerance of the numerical integrals (default 1e-10 for n ≤ 50, else 1e-8).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Largest Gauss–Jacobi rule the exact routes may build.
    #[arg(long, default_value_t = MAX_RULE_ORDER)]
    pub max_nodes: usize,
    /// Also compute S by direct quadrature and fail if the two routes disagree.
    #[arg(long)]
    pub check_entropy: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct AsymArgs {
    #[arg(long, value_enum)]
    pub regime: RegimeArg,
    #[arg(long, value_enum)]
    pub measure: MeasureArg,
    #[command(flatten)]
    pub poly: PolyArgs,
    /// Lq-norm order for `--measure np`.
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    #[arg(long, value_enum, default_value_t)]
    pub variant: VariantArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub regime: RegimeArg,
    #[arg(long, value_enum)]
    pub measure: MeasureArg,
    #[command(flatten)]
    pub poly: PolyArgs,
    /// Geometric degree grid `start:stop:factor` (degree regime).
    #[arg(long, conflicts_with = "alpha_grid")]
    pub n_grid: Option<String>,
    /// Geometric α grid `start:stop:factor` (alpha regime).
    #[arg(long)]
    pub alpha_grid: Option<String>,
    /// Lq-norm order for `--measure np`.
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = MAX_RULE_ORDER)]
    pub max_nodes: usize,
    #[arg(long, value_enum, default_value_t)]
    pub variant: VariantArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct LmcCompareArgs {
    /// Geometric λ grid `start:stop:factor`, λ > 1.
    #[arg(long, default_value = "1.5:12:2")]
    pub lambda_grid: String,
    /// Comma-separated β values; the token `l-2` stands for λ - 2.
    #[arg(long, default_value = "l-2,2,4,8", value_delimiter = ',')]
    pub betas: Vec<String>,
    /// If given, also compute C_LMC numerically at this degree.
    #[arg(short = 'n', long = "degree")]
    pub degree: Option<u32>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct RuleArgs {
    #[arg(short = 'a', long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(short = 'b', long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub b: f64,
    /// Number of nodes.
    #[arg(short = 'm', long)]
    pub m: usize,
    #[arg(long, default_value_t = MAX_RULE_ORDER)]
    pub max_nodes: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Measure(args) => commands::measure(args, cli.max_evals),
        Command::Asym(args) => commands::asym(args),
        Command::Sweep(args) => commands::sweep(args, cli.max_evals),
        Command::LmcCompare(args) => commands::lmc_compare(args, cli.max_evals),
        Command::Rule(args) => commands::rule(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("jcx: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

mod commands;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{CliError, EXIT_USAGE};

#[derive(Debug, Parser)]
#[command(
    name = "alphacent",
    version,
    about = "Normalized alpha-centrality rankings and path-based community detection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rank nodes by a centrality score.
    Rank(RankArgs),
    /// Detect communities at one value of alpha.
    Communities(CommunitiesArgs),
    /// Detect communities over a range of alpha values.
    Sweep(SweepArgs),
    /// Dominant eigenvalue and the alpha convergence radius.
    Spectrum(SpectrumArgs),
    /// Within-community degree z-score and participation coefficient.
    Roles(RolesArgs),
    /// Convert between edge-list and GML.
    Convert(ConvertArgs),
    /// List the bundled datasets.
    Datasets(DatasetsArgs),
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Bundled dataset name (see `alphacent datasets`).
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    pub dataset: Option<String>,
    /// Graph file: `.gml` is read as GML, anything else as an edge list.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Treat edge-list lines as directed arcs.
    #[arg(long)]
    pub directed: bool,
    /// Read a third edge-list column as the weight.
    #[arg(long)]
    pub weighted: bool,
    /// Replace A with A + Aᵀ after loading.
    #[arg(long)]
    pub symmetrize: bool,
    /// Ground-truth file, `node<TAB>class` per line, `-` to exclude.
    #[arg(long)]
    pub labels: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Weight of the first edge of every path.
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    /// Convergence tolerance (L∞ change per step).
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 10_000)]
    pub max_iter: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scheme {
    Alpha,
    Katz,
    RandomWalk,
    Degree,
    Eigenvector,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    Row,
    Column,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScalingArg {
    Auto,
    Normalized,
    Unnormalized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PartitionSource {
    Detected,
    Truth,
}

/// `converged` or a number in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaArg {
    Converged,
    Value(f64),
}

fn parse_alpha(s: &str) -> Result<AlphaArg, String> {
    if s == "converged" {
        return Ok(AlphaArg::Converged);
    }
    let x: f64 = s
        .parse()
        .map_err(|_| format!("`{s}` is neither a number nor `converged`"))?;
    if !(0.0..=1.0).contains(&x) {
        return Err(format!("alpha must lie in [0, 1], got {x}"));
    }
    Ok(AlphaArg::Value(x))
}

#[derive(Debug, Args)]
pub struct RankArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub out: OutputArgs,
    #[arg(long, value_enum, default_value_t = Scheme::Alpha)]
    pub scheme: Scheme,
    /// Attenuation, or `converged` for a value past 1/λ₁.
    #[arg(long, value_parser = parse_alpha, default_value = "converged")]
    pub alpha: AlphaArg,
    /// Restart probability of the random-walk scheme.
    #[arg(long, default_value_t = 0.5)]
    pub restart: f64,
    /// Score nodes by paths leaving (row) or reaching (column) them.
    #[arg(long, value_enum, default_value_t = Axis::Row)]
    pub axis: Axis,
}

#[derive(Debug, Clone, Args)]
pub struct CommunityArgs {
    #[arg(long, value_enum, default_value_t = ScalingArg::Auto)]
    pub scaling: ScalingArg,
    /// Round the unnormalized connectivity to integers.
    #[arg(long)]
    pub rounding: bool,
}

#[derive(Debug, Args)]
pub struct CommunitiesArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub community: CommunityArgs,
    #[command(flatten)]
    pub out: OutputArgs,
    #[arg(long, value_parser = parse_alpha)]
    pub alpha: AlphaArg,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub community: CommunityArgs,
    #[command(flatten)]
    pub out: OutputArgs,
    /// Comma-separated alpha values.
    #[arg(long, value_delimiter = ',', conflicts_with = "range")]
    pub alphas: Option<Vec<f64>>,
    /// `start:stop[:step]`; the default step is 1/min(d_out_max, d_in_max).
    #[arg(long)]
    pub range: Option<String>,
    /// Also write one `node,score` CSV per alpha into this directory.
    #[arg(long)]
    pub scores_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub out: OutputArgs,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, default_value_t = 100_000)]
    pub max_iter: usize,
}

#[derive(Debug, Args)]
pub struct RolesArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub community: CommunityArgs,
    #[command(flatten)]
    pub out: OutputArgs,
    /// Partition to score: detected at --alpha, or the ground truth.
    #[arg(long, value_enum, default_value_t = PartitionSource::Detected)]
    pub partition: PartitionSource,
    #[arg(long, value_parser = parse_alpha, default_value = "0")]
    pub alpha: AlphaArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormatArg {
    Edges,
    Gml,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum)]
    pub to: GraphFormatArg,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DatasetsArgs {
    #[command(flatten)]
    pub out: OutputArgs,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Rank(a) => commands::rank(a),
        Command::Communities(a) => commands::communities(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Spectrum(a) => commands::spectrum(a),
        Command::Roles(a) => commands::roles(a),
        Command::Convert(a) => commands::convert(a),
        Command::Datasets(a) => commands::datasets(a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

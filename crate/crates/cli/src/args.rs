use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "cecp",
    version,
    about = "Permutation entropy and statistical complexity trajectories for rate series"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sliding-window CECP trajectory of one series.
    Analyze(AnalyzeArgs),
    /// Entropy evolution of several series in one long-format table.
    Compare(CompareArgs),
    /// Write a synthetic series in the input CSV schema.
    Synth(SynthArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieArg {
    IndexOrder,
    Jitter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MissingArg {
    Drop,
    ForwardFill,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DuplicateArg {
    Error,
    KeepFirst,
}

/// How input files are read and cleaned.
#[derive(Debug, Clone, Args, Serialize)]
pub struct InputOptions {
    /// Value column: a header name or a 0-based position (0 is the date).
    #[arg(long, default_value = "1")]
    pub column: String,

    /// chrono format of the date column.
    #[arg(long, default_value = "%Y-%m-%d")]
    pub date_format: String,

    #[arg(long, default_value_t = ',')]
    pub delimiter: char,

    #[arg(long, value_enum, default_value_t = MissingArg::Drop)]
    pub missing: MissingArg,

    #[arg(long, value_enum, default_value_t = DuplicateArg::Error)]
    pub duplicates: DuplicateArg,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AnalysisOptions {
    /// Embedding dimension D (pattern length).
    #[arg(long, default_value_t = 4)]
    pub dimension: usize,

    /// Embedding delay τ, in observations.
    #[arg(long, default_value_t = 1)]
    pub delay: usize,

    /// Observations per window.
    #[arg(long, default_value_t = 500)]
    pub window: usize,

    /// Observations between window starts.
    #[arg(long, default_value_t = 30)]
    pub step: usize,

    #[arg(long, value_enum, default_value_t = TieArg::IndexOrder)]
    pub tie_policy: TieArg,

    #[arg(long, default_value_t = 0)]
    pub jitter_seed: u64,

    #[arg(long, default_value_t = 1e-9)]
    pub jitter_amplitude: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DriftOptions {
    /// Windows with H below this are flagged.
    #[arg(long, default_value_t = 0.8)]
    pub h_threshold: f64,

    /// Windows in the trailing least-squares trend of H.
    #[arg(long, default_value_t = 10)]
    pub trend_span: usize,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub input: PathBuf,

    /// Prefix for output files; defaults to the value column's header.
    #[arg(long)]
    pub name: Option<String>,

    #[command(flatten)]
    pub input_options: InputOptions,

    #[command(flatten)]
    pub analysis: AnalysisOptions,

    #[command(flatten)]
    pub drift: DriftOptions,

    /// Also write the lower and upper CECP bound curves.
    #[arg(long)]
    pub bounds: bool,

    /// Samples per bound-curve branch.
    #[arg(long, default_value_t = 256)]
    pub bounds_resolution: usize,

    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    /// Input files; each becomes one series named after its file stem.
    #[arg(long = "input", required = true, num_args = 1..)]
    pub inputs: Vec<PathBuf>,

    #[command(flatten)]
    pub input_options: InputOptions,

    #[command(flatten)]
    pub analysis: AnalysisOptions,

    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KindArg {
    WhiteNoise,
    RandomWalk,
    Ar1,
    LogisticMap,
    StaleQuote,
    Splice,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SynthArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,

    /// Observations; for splices defaults to the sum of segment lengths.
    #[arg(long)]
    pub length: Option<usize>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// AR(1) coefficient.
    #[arg(long, default_value_t = 0.5)]
    pub phi: f64,

    /// Logistic map parameter.
    #[arg(long, default_value_t = 4.0)]
    pub r: f64,

    /// Stale-quote probability of holding the previous quote.
    #[arg(long, default_value_t = 0.9)]
    pub hold_prob: f64,

    /// Stale-quote rounding step.
    #[arg(long, default_value_t = 0.01)]
    pub tick_size: f64,

    /// Splice segments as `kind:length,kind:length,...`; segment parameters
    /// come from the flags above.
    #[arg(long)]
    pub segments: Option<String>,

    /// Header of the value column.
    #[arg(long, default_value = "value")]
    pub name: String,

    /// Output file; stdout when omitted (no manifest is written then).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

//! Command-line pipeline: `extract → embed → similarity → filter` for
//! threshold screening and `train`/`evaluate` for the classifiers. `report`
//! runs every stage into one output directory.

mod commands;
pub mod files;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use commands::{
    cmd_embed, cmd_evaluate, cmd_extract, cmd_filter, cmd_report, cmd_similarity, cmd_synth, cmd_train,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("bad input file: {0}")]
    Format(String),
    #[error(transparent)]
    Manifest(#[from] crate::patchio::ManifestError),
    #[error(transparent)]
    Store(#[from] crate::lexemb::StoreError),
    #[error(transparent)]
    Embed(#[from] crate::lexemb::EmbedError),
    #[error(transparent)]
    Stat(#[from] crate::simstat::StatError),
    #[error(transparent)]
    Screen(#[from] crate::screen::ScreenError),
    #[error(transparent)]
    Learn(#[from] crate::learn::LearnError),
}

impl CliError {
    /// Stable identifier written to error records.
    pub fn kind(&self) -> &'static str {
        use crate::learn::LearnError as L;
        use crate::lexemb::StoreError as S;
        use crate::screen::ScreenError as Sc;
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Format(_) => "format",
            CliError::Manifest(_) => "manifest",
            CliError::Store(S::DimensionMismatch { .. }) => "dimension_mismatch",
            CliError::Store(S::DuplicateKey { .. }) => "duplicate_key",
            CliError::Store(_) => "vector_file",
            CliError::Embed(_) => "embedding",
            CliError::Stat(_) => "statistics",
            CliError::Screen(Sc::ScaleMismatch { .. }) => "scale_mismatch",
            CliError::Screen(_) => "screening",
            CliError::Learn(L::SingleClass) => "single_class",
            CliError::Learn(L::ClassTooSmall { .. }) => "class_too_small",
            CliError::Learn(_) => "learning",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    /// Feature-hashed bag of tokens.
    Hashed,
    /// Paragraph vectors trained on the fragments themselves.
    Doc,
    /// Precomputed vectors from `--vectors`.
    External,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Hashed => "hashed",
            Backend::Doc => "doc",
            Backend::External => "external",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LearnerArg {
    Lr,
    Dt,
    Nb,
}

impl From<LearnerArg> for crate::learn::LearnerKind {
    fn from(l: LearnerArg) -> Self {
        match l {
            LearnerArg::Lr => crate::learn::LearnerKind::LogisticRegression,
            LearnerArg::Dt => crate::learn::LearnerKind::DecisionTree,
            LearnerArg::Nb => crate::learn::LearnerKind::NaiveBayes,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ThresholdArg {
    Q1,
    Mean,
}

impl From<ThresholdArg> for crate::simstat::ThresholdKind {
    fn from(t: ThresholdArg) -> Self {
        match t {
            ThresholdArg::Q1 => crate::simstat::ThresholdKind::Q1,
            ThresholdArg::Mean => crate::simstat::ThresholdKind::Mean,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "patchsift", version, about = "Screen generated patches by code-fragment embeddings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a manifest and write buggy/patched fragments.
    Extract(ExtractArgs),
    /// Embed fragments with a backend and write a vector file.
    Embed(EmbedArgs),
    /// Score buggy/patched similarity and summarize the distributions.
    Similarity(SimilarityArgs),
    /// Screen patches with a similarity threshold or top-1 ranking.
    Filter(FilterArgs),
    /// Fit a classifier on crossed features and save it.
    Train(TrainArgs),
    /// Cross-validate a classifier, or score with a saved model.
    Evaluate(EvaluateArgs),
    /// Run every stage from a manifest.
    Report(ReportArgs),
    /// Write a synthetic labeled manifest.
    Synth(SynthArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Extract(_) => "extract",
            Command::Embed(_) => "embed",
            Command::Similarity(_) => "similarity",
            Command::Filter(_) => "filter",
            Command::Train(_) => "train",
            Command::Evaluate(_) => "evaluate",
            Command::Report(_) => "report",
            Command::Synth(_) => "synth",
        }
    }

    pub fn out_dir(&self) -> &Path {
        match self {
            Command::Extract(a) => &a.out,
            Command::Embed(a) => &a.out,
            Command::Similarity(a) => &a.out,
            Command::Filter(a) => &a.out,
            Command::Train(a) => &a.learn.out,
            Command::Evaluate(a) => &a.learn.out,
            Command::Report(a) => &a.out,
            Command::Synth(a) => &a.out,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ExtractArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Keep duplicate diffs.
    #[arg(long)]
    pub no_dedup: bool,
    /// Auto-label unlabeled patches against the patch of this tool for the
    /// same bug.
    #[arg(long)]
    pub reference_tool: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct EmbedOptions {
    #[arg(long, value_enum, default_value = "hashed")]
    pub backend: Backend,
    /// External vector file (required for `--backend external`).
    #[arg(long)]
    pub vectors: Option<PathBuf>,
    /// Embedding dimension (default 256 for hashed, 128 for doc).
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Training epochs for the doc backend.
    #[arg(long, default_value_t = 40)]
    pub epochs: usize,
    /// Split camelCase and snake_case identifiers into subtokens.
    #[arg(long)]
    pub subtokens: bool,
}

#[derive(Debug, Clone, Args)]
pub struct EmbedArgs {
    #[arg(long)]
    pub fragments: PathBuf,
    #[command(flatten)]
    pub embed: EmbedOptions,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct SimilarityArgs {
    #[arg(long)]
    pub vectors: PathBuf,
    #[arg(long)]
    pub manifest: PathBuf,
    /// Name recorded in the report rows.
    #[arg(long, default_value = "vectors")]
    pub backend: String,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct FilterArgs {
    /// `scores.csv` from `similarity`.
    #[arg(long)]
    pub scores: PathBuf,
    #[arg(long, value_enum, default_value = "q1", conflicts_with = "top1")]
    pub threshold: ThresholdArg,
    /// Reference scores (all assumed correct) to infer the threshold from.
    /// Defaults to the correct-labeled rows of `--scores`.
    #[arg(long)]
    pub reference: Option<PathBuf>,
    /// Infer and apply one threshold per benchmark.
    #[arg(long)]
    pub per_benchmark: bool,
    /// Keep only the most similar candidate per bug.
    #[arg(long)]
    pub top1: bool,
    #[arg(long, default_value = "vectors")]
    pub backend: String,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct LearnArgs {
    #[arg(long)]
    pub vectors: PathBuf,
    #[arg(long)]
    pub manifest: PathBuf,
    #[arg(long, value_enum, default_value = "lr")]
    pub learner: LearnerArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "vectors")]
    pub backend: String,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct TrainArgs {
    #[command(flatten)]
    pub learn: LearnArgs,
}

#[derive(Debug, Clone, Args)]
pub struct EvaluateArgs {
    #[command(flatten)]
    pub learn: LearnArgs,
    #[arg(long, default_value_t = 5)]
    pub folds: usize,
    /// Score with a saved model instead of cross-validating.
    #[arg(long)]
    pub model: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ReportArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    #[command(flatten)]
    pub embed: EmbedOptions,
    #[arg(long, value_enum, default_value = "q1", conflicts_with = "top1")]
    pub threshold: ThresholdArg,
    #[arg(long)]
    pub top1: bool,
    #[arg(long, value_enum, default_value = "lr")]
    pub learner: LearnerArg,
    #[arg(long, default_value_t = 5)]
    pub folds: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct SynthArgs {
    /// Number of bugs; two patches are generated per bug.
    #[arg(long, default_value_t = 150)]
    pub bugs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let out = cli.command.out_dir();
    std::fs::create_dir_all(out).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
    match &cli.command {
        Command::Extract(a) => cmd_extract(a),
        Command::Embed(a) => cmd_embed(a),
        Command::Similarity(a) => cmd_similarity(a),
        Command::Filter(a) => cmd_filter(a),
        Command::Train(a) => cmd_train(a),
        Command::Evaluate(a) => cmd_evaluate(a),
        Command::Report(a) => cmd_report(a),
        Command::Synth(a) => cmd_synth(a),
    }
}

fn error_record(command: &str, kind: &str, message: &str) -> String {
    serde_json::json!({ "command": command, "error": kind, "message": message }).to_string()
}

/// Parse arguments, run, and turn failures into an exit code plus a JSON
/// error record (on stderr, and as `error.json` in the output directory
/// when one is known).
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            eprint!("{e}");
            eprintln!("{}", error_record("", "usage", &e.kind().to_string()));
            return 2;
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            let record = error_record(cli.command.name(), e.kind(), &e.to_string());
            eprintln!("{record}");
            let path = cli.command.out_dir().join("error.json");
            if let Err(io) = std::fs::write(&path, format!("{record}\n")) {
                log::warn!("could not write {}: {io}", path.display());
            }
            if matches!(e, CliError::Usage(_)) {
                2
            } else {
                1
            }
        }
    }
}

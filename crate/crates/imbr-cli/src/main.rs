//! `imbr`: end-to-end pipeline for imbalanced multiclass text
//! classification. Subcommands cover corpus preparation, vectorization,
//! synthetic oversampling, training, cross-validated evaluation, benchmark
//! data generation, and results-table rendering.
//!
//! Exit codes: 0 success, 2 usage or format error, 3 algorithm error.
//! Failures print a single line `ERROR <code> <message>` to stderr.

mod commands;
mod config;
mod io_util;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::PipelineConfig;

#[derive(Parser)]
#[command(name = "imbr", version, about = "Imbalanced multiclass learning pipeline")]
struct Cli {
    /// JSON configuration file; explicit flags override its values
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Seed fanned out to every randomized stage
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normalize and deduplicate a JSONL corpus; write class statistics
    Prep(commands::prep::PrepArgs),
    /// Turn a corpus into a feature matrix (token counts or averaged vectors)
    Vectorize(commands::vectorize::VectorizeArgs),
    /// Oversample minority classes of a feature matrix
    Resample(commands::resample::ResampleArgs),
    /// Train a classifier and persist it as JSON
    Train(commands::train::TrainArgs),
    /// Stratified cross-validation with optional in-fold oversampling
    Cv(commands::cv::CvArgs),
    /// Generate a seeded Gaussian-blob benchmark matrix
    Synth(commands::synth::SynthArgs),
    /// Render results tables from reports or explicit values
    Report(commands::report::ReportArgs),
}

/// Error carrying the process exit code.
pub struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn one_line(&self) -> String {
        self.message.replace('\n', "; ")
    }
}

impl From<imbr::Error> for CliError {
    fn from(e: imbr::Error) -> Self {
        Self {
            code: e.exit_code(),
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::usage(e.to_string())
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let summary = e
                .to_string()
                .lines()
                .next()
                .unwrap_or("invalid arguments")
                .to_string();
            eprintln!("ERROR 2 {summary}");
            return ExitCode::from(2);
        }
    };

    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ERROR {} {}", e.code, e.one_line());
            ExitCode::from(e.code as u8)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = PipelineConfig::load(cli.config.as_deref())?;
    let seed = cli.seed.or(config.seed).unwrap_or(0);
    match cli.command {
        Command::Prep(args) => commands::prep::run(args, &config),
        Command::Vectorize(args) => commands::vectorize::run(args, &config),
        Command::Resample(args) => commands::resample::run(args, &config, seed),
        Command::Train(args) => commands::train::run(args, &config, seed),
        Command::Cv(args) => commands::cv::run(args, &config, seed),
        Command::Synth(args) => commands::synth::run(args, cli.seed, &config),
        Command::Report(args) => commands::report::run(args),
    }
}

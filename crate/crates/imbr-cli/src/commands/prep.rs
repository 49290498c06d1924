//! `imbr prep`: normalize-aware deduplication plus class statistics.

use std::path::PathBuf;

use serde::Serialize;

use imbr::corpus::{class_distribution, dedupe, ClassShare, LabeledCorpus};

use crate::config::PipelineConfig;
use crate::io_util::{open_reader, write_atomic};
use crate::CliError;

use super::NormalizeArgs;

#[derive(Debug, clap::Args)]
pub struct PrepArgs {
    /// JSONL corpus: one {"text": ..., "label": ...} object per line
    #[arg(long)]
    pub input: PathBuf,
    /// Deduplicated JSONL corpus
    #[arg(long)]
    pub output: PathBuf,
    /// Class counts and percentages as JSON
    #[arg(long)]
    pub stats: PathBuf,
    #[command(flatten)]
    pub normalize: NormalizeArgs,
}

#[derive(Serialize)]
struct StatsFile {
    format: &'static str,
    total_before: usize,
    removed_duplicates: usize,
    total: usize,
    classes: Vec<ClassShare>,
}

pub fn run(args: PrepArgs, config: &PipelineConfig) -> Result<(), CliError> {
    let normalize = args.normalize.resolve(&config.normalize)?;
    let corpus = LabeledCorpus::read_jsonl(open_reader(&args.input)?)?;
    let before = corpus.len();
    let (deduped, removed) = dedupe(&corpus, &normalize);

    write_atomic(&args.output, |w| {
        deduped.write_jsonl(w).map_err(CliError::from)
    })?;

    let stats = StatsFile {
        format: "imbr-stats/1",
        total_before: before,
        removed_duplicates: removed,
        total: deduped.len(),
        classes: class_distribution(&deduped),
    };
    write_atomic(&args.stats, |w| {
        serde_json::to_writer_pretty(w, &stats)
            .map_err(|e| CliError::usage(format!("write stats: {e}")))
    })?;

    println!(
        "kept {} of {} documents ({} duplicates removed)",
        deduped.len(),
        before,
        removed
    );
    Ok(())
}

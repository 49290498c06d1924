//! `imbr vectorize`: corpus to feature matrix, by token counts or by
//! averaging pretrained word vectors.

use std::path::{Path, PathBuf};

use serde::Serialize;

use imbr::corpus::{average_embedding, bow_vectorize, EmbeddingTable, LabeledCorpus, Vocabulary};

use crate::config::{pick, PipelineConfig};
use crate::io_util::{open_reader, write_atomic};
use crate::CliError;

use super::NormalizeArgs;

#[derive(Debug, clap::Args)]
pub struct VectorizeArgs {
    /// JSONL corpus
    #[arg(long)]
    pub input: PathBuf,
    /// Feature matrix CSV
    #[arg(long)]
    pub output: PathBuf,
    /// Vectorizer: bow or embed
    #[arg(long)]
    pub mode: Option<String>,
    /// Vocabulary JSON output (bow mode; default: <output>.vocab.json)
    #[arg(long)]
    pub vocab: Option<PathBuf>,
    /// Keep only tokens seen at least this often
    #[arg(long)]
    pub min_frequency: Option<usize>,
    /// Word-vector file: "V d" header then one "token v1 ... vd" line each
    #[arg(long)]
    pub embeddings: Option<PathBuf>,
    #[command(flatten)]
    pub normalize: NormalizeArgs,
}

#[derive(Serialize)]
struct VocabFile<'a> {
    format: &'static str,
    min_frequency: usize,
    tokens: &'a [String],
    labels: &'a [String],
}

pub fn run(args: VectorizeArgs, config: &PipelineConfig) -> Result<(), CliError> {
    let normalize = args.normalize.resolve(&config.normalize)?;
    let mode = args
        .mode
        .clone()
        .or_else(|| config.vectorize.mode.clone())
        .unwrap_or_else(|| "bow".into());

    let corpus = LabeledCorpus::read_jsonl(open_reader(&args.input)?)?;
    match mode.as_str() {
        "bow" => {
            let min_frequency = pick(args.min_frequency, config.vectorize.min_frequency, 1);
            if min_frequency < 1 {
                return Err(CliError::usage("min_frequency must be at least 1"));
            }
            let vocab = Vocabulary::build(&corpus, &normalize, min_frequency)?;
            let matrix = bow_vectorize(&corpus, &vocab, &normalize);
            write_atomic(&args.output, |w| matrix.write_csv(w).map_err(CliError::from))?;

            let vocab_path = args
                .vocab
                .clone()
                .unwrap_or_else(|| default_vocab_path(&args.output));
            let file = VocabFile {
                format: "imbr-vocab/1",
                min_frequency,
                tokens: vocab.tokens(),
                labels: corpus.label_index().names(),
            };
            write_atomic(&vocab_path, |w| {
                serde_json::to_writer_pretty(w, &file)
                    .map_err(|e| CliError::usage(format!("write vocabulary: {e}")))
            })?;
            println!(
                "wrote {} rows x {} token counts",
                matrix.n_rows(),
                matrix.n_cols()
            );
        }
        "embed" => {
            let path = args
                .embeddings
                .clone()
                .or_else(|| config.vectorize.embeddings.clone())
                .ok_or_else(|| CliError::usage("embed mode needs --embeddings"))?;
            let table = EmbeddingTable::parse(open_reader(&path)?)?;
            let matrix = average_embedding(&corpus, &table, &normalize);
            write_atomic(&args.output, |w| matrix.write_csv(w).map_err(CliError::from))?;
            println!(
                "wrote {} rows x {} averaged dimensions",
                matrix.n_rows(),
                matrix.n_cols()
            );
        }
        other => {
            return Err(CliError::usage(format!(
                "unknown mode {other:?}; expected bow or embed"
            )))
        }
    }
    Ok(())
}

fn default_vocab_path(output: &Path) -> PathBuf {
    output.with_extension("vocab.json")
}

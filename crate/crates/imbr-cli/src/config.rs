//! Pipeline configuration file and the flag > config > default precedence.

use std::collections::HashSet;
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use imbr::corpus::{parse_stopwords, NormalizeConfig};

use crate::CliError;

/// Environment variable naming a default stopword file.
pub const STOPWORDS_ENV: &str = "IMBR_STOPWORDS";

/// Optional JSON configuration; every field can be overridden by a flag.
#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub seed: Option<u64>,
    pub normalize: NormalizeSection,
    pub vectorize: VectorizeSection,
    pub resample: ResampleSection,
    pub train: TrainSection,
    pub eval: EvalSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NormalizeSection {
    pub lowercase: Option<bool>,
    pub strip_punctuation: Option<bool>,
    pub strip_control_chars: Option<bool>,
    pub drop_digits: Option<bool>,
    /// Path to a stopword file; `null`/absent means the bundled default.
    pub stopwords: Option<PathBuf>,
    pub no_stopwords: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VectorizeSection {
    pub mode: Option<String>,
    pub min_frequency: Option<usize>,
    pub embeddings: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ResampleSection {
    pub algorithm: Option<String>,
    pub k: Option<usize>,
    pub target: Option<String>,
    pub gsmote_truncation: Option<f64>,
    pub gsmote_deformation: Option<f64>,
    pub gsmote_selection: Option<String>,
    pub adasyn_beta: Option<f64>,
    pub random_centers: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrainSection {
    pub classifier: Option<String>,
    pub epochs: Option<usize>,
    pub batch_size: Option<usize>,
    pub learning_rate: Option<f64>,
    pub alpha: Option<f64>,
    pub use_class_weights: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvalSection {
    pub folds: Option<usize>,
}

impl PipelineConfig {
    /// Loads the file when given; an absent path is an empty config.
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let file = File::open(path)
            .map_err(|e| CliError::usage(format!("cannot open config {}: {e}", path.display())))?;
        serde_json::from_reader(BufReader::new(file))
            .map_err(|e| CliError::usage(format!("bad config {}: {e}", path.display())))
    }
}

/// Flag value if set, else config value, else the default.
pub fn pick<T>(flag: Option<T>, config: Option<T>, default: T) -> T {
    flag.or(config).unwrap_or(default)
}

/// Resolves the stopword list: an explicit "none" wins, then a file given by
/// flag or config, then the `IMBR_STOPWORDS` environment variable, then the
/// bundled default list.
pub fn resolve_stopwords(
    no_stopwords: bool,
    flag_path: Option<&Path>,
    section: &NormalizeSection,
) -> Result<HashSet<String>, CliError> {
    let config_off = flag_path.is_none() && section.no_stopwords == Some(true);
    if no_stopwords || config_off {
        return Ok(HashSet::new());
    }
    let env_path = std::env::var_os(STOPWORDS_ENV).map(PathBuf::from);
    let path = flag_path
        .map(Path::to_path_buf)
        .or_else(|| section.stopwords.clone())
        .or(env_path);
    match path {
        Some(p) => {
            let file = File::open(&p).map_err(|e| {
                CliError::usage(format!("cannot open stopword file {}: {e}", p.display()))
            })?;
            parse_stopwords(BufReader::new(file)).map_err(CliError::from)
        }
        None => Ok(NormalizeConfig::default().stopwords),
    }
}

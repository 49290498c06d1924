//! Subcommand implementations and the flag groups they share.

pub mod cv;
pub mod prep;
pub mod report;
pub mod resample;
pub mod synth;
pub mod train;
pub mod vectorize;

use std::collections::BTreeMap;
use std::path::PathBuf;

use imbr::corpus::NormalizeConfig;
use imbr::linear::{ClassifierSpec, TrainConfig};
use imbr::resample::{Algorithm, CenterSelection, ResampleConfig, SurfaceSelection, TargetStrategy};

use crate::config::{pick, resolve_stopwords, NormalizeSection, ResampleSection, TrainSection};
use crate::CliError;

/// Text-normalization switches shared by `prep` and `vectorize`.
#[derive(Debug, clap::Args)]
pub struct NormalizeArgs {
    /// Keep the original character case
    #[arg(long)]
    pub no_lowercase: bool,
    /// Keep punctuation and symbol characters
    #[arg(long)]
    pub no_strip_punctuation: bool,
    /// Keep control characters instead of turning them into spaces
    #[arg(long)]
    pub no_strip_control: bool,
    /// Remove digit characters
    #[arg(long)]
    pub drop_digits: bool,
    /// Stopword file (one token per line, '#' comments)
    #[arg(long)]
    pub stopwords: Option<PathBuf>,
    /// Disable stopword removal entirely
    #[arg(long, conflicts_with = "stopwords")]
    pub no_stopwords: bool,
}

impl NormalizeArgs {
    pub fn resolve(&self, section: &NormalizeSection) -> Result<NormalizeConfig, CliError> {
        let stopwords = resolve_stopwords(self.no_stopwords, self.stopwords.as_deref(), section)?;
        Ok(NormalizeConfig {
            lowercase: if self.no_lowercase {
                false
            } else {
                section.lowercase.unwrap_or(true)
            },
            strip_punctuation: if self.no_strip_punctuation {
                false
            } else {
                section.strip_punctuation.unwrap_or(true)
            },
            strip_control_chars: if self.no_strip_control {
                false
            } else {
                section.strip_control_chars.unwrap_or(true)
            },
            drop_digits: if self.drop_digits {
                true
            } else {
                section.drop_digits.unwrap_or(false)
            },
            stopwords,
        })
    }
}

/// Oversampling switches shared by `resample` and `cv`; the algorithm name
/// arrives separately since the two commands spell its flag differently.
#[derive(Debug, clap::Args)]
pub struct ResampleFlags {
    /// Neighbor count
    #[arg(long)]
    pub k: Option<usize>,
    /// Target strategy: "auto" or explicit class=count pairs like "1=50,2=120"
    #[arg(long)]
    pub target: Option<String>,
    #[arg(long)]
    pub gsmote_truncation: Option<f64>,
    #[arg(long)]
    pub gsmote_deformation: Option<f64>,
    /// Surface selection: minority, majority, or combined
    #[arg(long)]
    pub gsmote_selection: Option<String>,
    #[arg(long)]
    pub adasyn_beta: Option<f64>,
    /// Draw centers uniformly instead of round-robin
    #[arg(long)]
    pub random_centers: bool,
}

impl ResampleFlags {
    /// Builds a validated config; `None` when the resolved algorithm is
    /// "none" (permitted only where `allow_none` is set).
    pub fn resolve(
        &self,
        algorithm_flag: Option<&str>,
        section: &ResampleSection,
        seed: u64,
        allow_none: bool,
    ) -> Result<Option<ResampleConfig>, CliError> {
        let algorithm = algorithm_flag
            .map(str::to_string)
            .or_else(|| section.algorithm.clone())
            .unwrap_or_else(|| if allow_none { "none".into() } else { String::new() });
        let algorithm = match algorithm.as_str() {
            "none" if allow_none => return Ok(None),
            "smote" => Algorithm::Smote,
            "gsmote" => Algorithm::GeometricSmote,
            "adasyn" => Algorithm::Adasyn,
            "" => return Err(CliError::usage("--algorithm is required")),
            other => {
                return Err(CliError::usage(format!(
                    "unknown algorithm {other:?}; expected smote, gsmote, or adasyn"
                )))
            }
        };

        let strategy = match self
            .target
            .clone()
            .or_else(|| section.target.clone())
            .as_deref()
        {
            None | Some("auto") => TargetStrategy::Auto,
            Some(spec) => TargetStrategy::Explicit(parse_explicit_targets(spec)?),
        };

        let selection = match self
            .gsmote_selection
            .clone()
            .or_else(|| section.gsmote_selection.clone())
            .as_deref()
        {
            None | Some("combined") => SurfaceSelection::Combined,
            Some("minority") => SurfaceSelection::Minority,
            Some("majority") => SurfaceSelection::Majority,
            Some(other) => {
                return Err(CliError::usage(format!(
                    "unknown gsmote selection {other:?}; expected minority, majority, or combined"
                )))
            }
        };

        let config = ResampleConfig {
            algorithm,
            k: pick(self.k, section.k, 5),
            strategy,
            seed,
            center_selection: if self.random_centers || section.random_centers == Some(true) {
                CenterSelection::Uniform
            } else {
                CenterSelection::RoundRobin
            },
            gsmote_truncation: pick(self.gsmote_truncation, section.gsmote_truncation, 1.0),
            gsmote_deformation: pick(self.gsmote_deformation, section.gsmote_deformation, 0.0),
            gsmote_selection: selection,
            adasyn_beta: pick(self.adasyn_beta, section.adasyn_beta, 1.0),
        };
        config.validate()?;
        Ok(Some(config))
    }
}

fn parse_explicit_targets(spec: &str) -> Result<BTreeMap<usize, usize>, CliError> {
    let mut map = BTreeMap::new();
    for pair in spec.split(',') {
        let (class, count) = pair.split_once('=').ok_or_else(|| {
            CliError::usage(format!(
                "bad target {pair:?}; expected class=count pairs like 1=50"
            ))
        })?;
        let class: usize = class
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("bad class id {class:?} in --target")))?;
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("bad count {count:?} in --target")))?;
        map.insert(class, count);
    }
    Ok(map)
}

/// Classifier switches shared by `train` and `cv`.
#[derive(Debug, clap::Args)]
pub struct ClassifierFlags {
    /// Classifier: softmax or nb
    #[arg(long)]
    pub classifier: Option<String>,
    #[arg(long)]
    pub epochs: Option<usize>,
    #[arg(long)]
    pub batch_size: Option<usize>,
    #[arg(long)]
    pub learning_rate: Option<f64>,
    /// Laplace smoothing for naive Bayes
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Train with an unweighted loss
    #[arg(long)]
    pub no_class_weights: bool,
}

impl ClassifierFlags {
    pub fn resolve(&self, section: &TrainSection, seed: u64) -> Result<ClassifierSpec, CliError> {
        let name = self
            .classifier
            .clone()
            .or_else(|| section.classifier.clone())
            .unwrap_or_else(|| "softmax".into());
        match name.as_str() {
            "softmax" => {
                let config = TrainConfig {
                    epochs: pick(self.epochs, section.epochs, 10),
                    batch_size: pick(self.batch_size, section.batch_size, 32),
                    learning_rate: pick(self.learning_rate, section.learning_rate, 0.05),
                    seed,
                    use_class_weights: if self.no_class_weights {
                        false
                    } else {
                        section.use_class_weights.unwrap_or(true)
                    },
                };
                config.validate()?;
                Ok(ClassifierSpec::Softmax { config })
            }
            "nb" => {
                let alpha = pick(self.alpha, section.alpha, 1.0);
                if !alpha.is_finite() || alpha <= 0.0 {
                    return Err(CliError::usage("alpha must be positive"));
                }
                Ok(ClassifierSpec::NaiveBayes { alpha })
            }
            other => Err(CliError::usage(format!(
                "unknown classifier {other:?}; expected softmax or nb"
            ))),
        }
    }

    /// Default table block title for the resolved classifier.
    pub fn block_title(spec: &ClassifierSpec) -> &'static str {
        match spec {
            ClassifierSpec::Softmax { .. } => "Softmax regression",
            ClassifierSpec::NaiveBayes { .. } => "Naive-Bayes",
        }
    }
}

/// Default table row label for a resample choice.
pub fn row_label(config: Option<&ResampleConfig>) -> &'static str {
    match config.map(|c| c.algorithm) {
        None => "Original dataset",
        Some(Algorithm::Smote) => "SMOTE",
        Some(Algorithm::GeometricSmote) => "Geometric-SMOTE",
        Some(Algorithm::Adasyn) => "ADASYN",
    }
}

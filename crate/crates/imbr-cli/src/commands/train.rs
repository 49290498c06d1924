//! `imbr train`: fit a classifier on a feature matrix and persist it.

use std::path::PathBuf;

use imbr::linear::{save_model, TrainedClassifier};
use imbr::matrix::FeatureMatrix;

use crate::config::PipelineConfig;
use crate::io_util::{open_reader, write_atomic};
use crate::CliError;

use super::ClassifierFlags;

#[derive(Debug, clap::Args)]
pub struct TrainArgs {
    /// Feature matrix CSV
    #[arg(long)]
    pub input: PathBuf,
    /// Model JSON output
    #[arg(long)]
    pub model: PathBuf,
    #[command(flatten)]
    pub classifier: ClassifierFlags,
}

pub fn run(args: TrainArgs, config: &PipelineConfig, seed: u64) -> Result<(), CliError> {
    let spec = args.classifier.resolve(&config.train, seed)?;
    let matrix = FeatureMatrix::read_csv(open_reader(&args.input)?)?;
    let model = TrainedClassifier::train(&spec, &matrix, matrix.num_classes())?;
    write_atomic(&args.model, |w| save_model(&model, w).map_err(CliError::from))?;
    println!(
        "trained {} on {} rows, {} classes",
        ClassifierFlags::block_title(&spec),
        matrix.n_rows(),
        model.num_classes()
    );
    Ok(())
}

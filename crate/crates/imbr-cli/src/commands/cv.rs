//! `imbr cv`: stratified K-fold evaluation with leakage-safe oversampling,
//! emitting the JSON report and a one-row results table.

use std::path::PathBuf;

use imbr::eval::{cross_validate, render_csv, render_text, save_report, TableBlock, TableRow};
use imbr::matrix::FeatureMatrix;

use crate::config::{pick, PipelineConfig};
use crate::io_util::{open_reader, write_atomic};
use crate::CliError;

use super::{row_label, ClassifierFlags, ResampleFlags};

#[derive(Debug, clap::Args)]
pub struct CvArgs {
    /// Feature matrix CSV
    #[arg(long)]
    pub input: PathBuf,
    /// Report JSON output
    #[arg(long)]
    pub report: PathBuf,
    /// Plain-text results table output
    #[arg(long)]
    pub table: PathBuf,
    /// CSV results table output
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Number of folds
    #[arg(long)]
    pub folds: Option<usize>,
    /// Block title in the rendered table (default: the classifier name)
    #[arg(long)]
    pub block_title: Option<String>,
    /// Row label in the rendered table (default: the oversampler name)
    #[arg(long)]
    pub row_label: Option<String>,
    /// Oversampler applied inside training folds: none, smote, gsmote, adasyn
    #[arg(long)]
    pub resample: Option<String>,
    #[command(flatten)]
    pub resample_flags: ResampleFlags,
    #[command(flatten)]
    pub classifier: ClassifierFlags,
}

pub fn run(args: CvArgs, config: &PipelineConfig, seed: u64) -> Result<(), CliError> {
    let resample_config =
        args.resample_flags
            .resolve(args.resample.as_deref(), &config.resample, seed, true)?;
    let spec = args.classifier.resolve(&config.train, seed)?;
    let folds = pick(args.folds, config.eval.folds, imbr::eval::DEFAULT_FOLDS);

    let matrix = FeatureMatrix::read_csv(open_reader(&args.input)?)?;
    let result = cross_validate(&matrix, resample_config.as_ref(), &spec, folds, seed)?;

    write_atomic(&args.report, |w| {
        save_report(&result.report, w).map_err(CliError::from)
    })?;

    let block = TableBlock {
        title: args
            .block_title
            .clone()
            .unwrap_or_else(|| ClassifierFlags::block_title(&spec).to_string()),
        rows: vec![TableRow::from_report(
            args.row_label
                .clone()
                .unwrap_or_else(|| row_label(resample_config.as_ref()).to_string()),
            &result.report,
        )],
    };
    let blocks = [block];
    write_atomic(&args.table, |w| {
        w.write_all(render_text(&blocks).as_bytes())
            .map_err(|e| CliError::usage(e.to_string()))
    })?;
    if let Some(path) = &args.csv {
        write_atomic(path, |w| {
            w.write_all(render_csv(&blocks).as_bytes())
                .map_err(|e| CliError::usage(e.to_string()))
        })?;
    }

    let mean = &result.report.mean;
    println!(
        "{}-fold mean: accuracy {:.2}, precision {:.2}, recall {:.2}, F1 {:.2}",
        folds, mean.accuracy, mean.macro_precision, mean.macro_recall, mean.macro_f1
    );
    Ok(())
}

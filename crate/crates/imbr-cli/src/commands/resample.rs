//! `imbr resample`: oversample a feature matrix, optionally recording
//! per-row provenance as JSONL.

use std::path::PathBuf;

use imbr::matrix::FeatureMatrix;
use imbr::resample::resample_dataset;

use crate::config::PipelineConfig;
use crate::io_util::{open_reader, write_atomic};
use crate::CliError;

use super::ResampleFlags;

#[derive(Debug, clap::Args)]
pub struct ResampleArgs {
    /// Feature matrix CSV
    #[arg(long)]
    pub input: PathBuf,
    /// Resampled matrix CSV
    #[arg(long)]
    pub output: PathBuf,
    /// JSONL sidecar with one provenance record per synthetic row
    #[arg(long)]
    pub provenance: Option<PathBuf>,
    /// Oversampler: smote, gsmote, or adasyn
    #[arg(long)]
    pub algorithm: Option<String>,
    #[command(flatten)]
    pub resample: ResampleFlags,
}

pub fn run(args: ResampleArgs, config: &PipelineConfig, seed: u64) -> Result<(), CliError> {
    // validate flags before touching the input
    let resample_config = args
        .resample
        .resolve(args.algorithm.as_deref(), &config.resample, seed, false)?
        .expect("algorithm required");

    let matrix = FeatureMatrix::read_csv(open_reader(&args.input)?)?;
    let (out, provenance) = resample_dataset(&matrix, &resample_config)?;

    write_atomic(&args.output, |w| out.write_csv(w).map_err(CliError::from))?;
    if let Some(path) = &args.provenance {
        write_atomic(path, |w| {
            for record in &provenance {
                serde_json::to_writer(&mut *w, record)
                    .map_err(|e| CliError::usage(format!("write provenance: {e}")))?;
                writeln!(w).map_err(|e| CliError::usage(e.to_string()))?;
            }
            Ok(())
        })?;
    }
    println!(
        "wrote {} rows ({} original + {} synthetic)",
        out.n_rows(),
        matrix.n_rows(),
        provenance.len()
    );
    Ok(())
}

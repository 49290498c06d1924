//! `imbr synth`: generate seeded Gaussian-blob benchmark matrices, either
//! from an explicit spec file or from the bundled job-category profile.

use std::path::PathBuf;

use imbr::synth::{job_profile_spec, make_blobs, BlobSpec};

use crate::config::PipelineConfig;
use crate::io_util::{open_reader, write_atomic};
use crate::CliError;

#[derive(Debug, clap::Args)]
pub struct SynthArgs {
    /// Blob spec JSON: {"dimension", "seed", "classes": [{"center", "std_dev", "count"}]}
    #[arg(long, conflicts_with = "profile")]
    pub spec: Option<PathBuf>,
    /// Named class-size profile; "jobs" is the bundled 23-category long tail
    #[arg(long)]
    pub profile: Option<String>,
    /// Total rows for --profile
    #[arg(long)]
    pub total: Option<usize>,
    /// Dimensionality for --profile
    #[arg(long, default_value_t = 20)]
    pub dim: usize,
    /// Per-class standard deviation for --profile
    #[arg(long, default_value_t = 1.0)]
    pub std: f64,
    /// Scale of the randomly placed class centers for --profile
    #[arg(long, default_value_t = 10.0)]
    pub spread: f64,
    /// Feature matrix CSV output
    #[arg(long)]
    pub output: PathBuf,
}

pub fn run(args: SynthArgs, seed_flag: Option<u64>, config: &PipelineConfig) -> Result<(), CliError> {
    let spec: BlobSpec = match (&args.spec, &args.profile) {
        (Some(path), None) => {
            let mut spec: BlobSpec = serde_json::from_reader(open_reader(path)?)
                .map_err(|e| CliError::usage(format!("bad spec {}: {e}", path.display())))?;
            if let Some(seed) = seed_flag.or(config.seed) {
                spec.seed = seed;
            }
            spec
        }
        (None, Some(name)) => {
            if name != "jobs" {
                return Err(CliError::usage(format!(
                    "unknown profile {name:?}; available: jobs"
                )));
            }
            let total = args
                .total
                .ok_or_else(|| CliError::usage("--profile needs --total"))?;
            let seed = seed_flag.or(config.seed).unwrap_or(0);
            job_profile_spec(total, args.dim, args.std, args.spread, seed)?
        }
        _ => return Err(CliError::usage("exactly one of --spec or --profile is required")),
    };

    spec.validate()?;
    let matrix = make_blobs(&spec)?;
    write_atomic(&args.output, |w| matrix.write_csv(w).map_err(CliError::from))?;
    println!(
        "wrote {} rows x {} columns, {} classes",
        matrix.n_rows(),
        matrix.n_cols(),
        matrix.num_classes()
    );
    Ok(())
}

//! `imbr report`: render results tables from a block description that mixes
//! explicit metric values and references to report files.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use imbr::eval::{load_report, render_csv, render_text, TableBlock, TableRow};

use crate::io_util::{open_reader, write_atomic};
use crate::CliError;

#[derive(Debug, clap::Args)]
pub struct ReportArgs {
    /// Table description JSON (imbr-table/1)
    #[arg(long)]
    pub input: PathBuf,
    /// Plain-text table output
    #[arg(long)]
    pub output: PathBuf,
    /// CSV table output
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Deserialize)]
struct TableSpecFile {
    format: String,
    blocks: Vec<BlockSpec>,
}

#[derive(Deserialize)]
struct BlockSpec {
    title: String,
    rows: Vec<RowSpec>,
}

/// A row either points at a report file or carries its four values inline.
#[derive(Deserialize)]
#[serde(untagged)]
enum RowSpec {
    FromReport {
        label: String,
        report: PathBuf,
    },
    Inline {
        label: String,
        accuracy: f64,
        precision: f64,
        recall: f64,
        f1: f64,
    },
}

impl RowSpec {
    fn into_row(self, base: &Path) -> Result<TableRow, CliError> {
        match self {
            RowSpec::Inline {
                label,
                accuracy,
                precision,
                recall,
                f1,
            } => Ok(TableRow {
                label,
                accuracy,
                precision,
                recall,
                f1,
            }),
            RowSpec::FromReport { label, report } => {
                let path = if report.is_relative() {
                    base.join(&report)
                } else {
                    report
                };
                let loaded = load_report(open_reader(&path)?)?;
                Ok(TableRow::from_report(label, &loaded))
            }
        }
    }
}

pub fn run(args: ReportArgs) -> Result<(), CliError> {
    let file: TableSpecFile = serde_json::from_reader(open_reader(&args.input)?)
        .map_err(|e| CliError::usage(format!("bad table spec {}: {e}", args.input.display())))?;
    if file.format != "imbr-table/1" {
        return Err(CliError::usage(format!(
            "unknown table format {:?}",
            file.format
        )));
    }

    let base = args
        .input
        .parent()
        .map(Path::to_path_buf)
        .unwrap_or_default();
    let mut blocks = Vec::with_capacity(file.blocks.len());
    for spec in file.blocks {
        let mut rows = Vec::with_capacity(spec.rows.len());
        for row in spec.rows {
            rows.push(row.into_row(&base)?);
        }
        blocks.push(TableBlock {
            title: spec.title,
            rows,
        });
    }

    write_atomic(&args.output, |w| {
        w.write_all(render_text(&blocks).as_bytes())
            .map_err(|e| CliError::usage(e.to_string()))
    })?;
    if let Some(path) = &args.csv {
        write_atomic(path, |w| {
            w.write_all(render_csv(&blocks).as_bytes())
                .map_err(|e| CliError::usage(e.to_string()))
        })?;
    }
    println!("rendered {} block(s)", blocks.len());
    Ok(())
}

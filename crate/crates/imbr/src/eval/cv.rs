//! K-fold cross-validation with oversampling fitted inside each training
//! partition, never on the held-out rows.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linear::{ClassifierSpec, TrainedClassifier};
use crate::matrix::FeatureMatrix;
use crate::resample::{resample_dataset, ResampleConfig, SyntheticProvenance};

use super::kfold::stratified_kfold;
use super::metrics::{confusion, metrics, MetricsReport, Summary};

/// Format string every report file must carry.
pub const REPORT_FORMAT: &str = "imbr-report/1";

/// Cross-validation results: the mean of the per-fold summaries is the
/// headline; the pooled-confusion view is kept alongside.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub mean: Summary,
    pub folds: Vec<MetricsReport>,
    pub pooled: MetricsReport,
    pub k: usize,
    pub seed: u64,
}

/// Everything the audit needs about one fold: which original rows were
/// trained on and held out, and the provenance of every synthetic row added
/// to the training partition.
#[derive(Debug, Clone, PartialEq)]
pub struct FoldTrace {
    pub fold: usize,
    /// Original-matrix row indices of the training partition, in order.
    pub train_rows: Vec<usize>,
    /// Original-matrix row indices of the held-out partition, in order.
    pub test_rows: Vec<usize>,
    /// Provenance of synthetic training rows; `output_row`, `center`, and
    /// `neighbor` index into the training partition, so every value below
    /// `train_rows.len()` refers to an original row.
    pub synthetic: Vec<SyntheticProvenance>,
}

/// Report plus per-fold audit traces.
#[derive(Debug, Clone, PartialEq)]
pub struct CvResult {
    pub report: EvalReport,
    pub traces: Vec<FoldTrace>,
}

/// Runs stratified K-fold evaluation of the classifier, oversampling (when
/// configured) fitted and applied to each training partition only.
pub fn cross_validate(
    matrix: &FeatureMatrix,
    resample: Option<&ResampleConfig>,
    classifier: &ClassifierSpec,
    k: usize,
    seed: u64,
) -> Result<CvResult> {
    let plan = stratified_kfold(matrix.labels(), k, seed)?;
    cross_validate_with_plan(matrix, resample, classifier, &plan)
}

/// [`cross_validate`] against an externally supplied fold plan. Evaluation
/// depends on the rows only through their fold membership.
pub fn cross_validate_with_plan(
    matrix: &FeatureMatrix,
    resample: Option<&ResampleConfig>,
    classifier: &ClassifierSpec,
    plan: &super::kfold::FoldPlan,
) -> Result<CvResult> {
    if plan.assignments.len() != matrix.n_rows() {
        return Err(crate::error::Error::LengthMismatch {
            left: plan.assignments.len(),
            right: matrix.n_rows(),
        });
    }
    let k = plan.k;
    let seed = plan.seed;
    let num_classes = matrix.num_classes();

    let mut folds = Vec::with_capacity(k);
    let mut traces = Vec::with_capacity(k);
    let mut pooled_cm = super::metrics::ConfusionMatrix::zeros(num_classes);
    for fold in 0..k {
        let (train_rows, test_rows) = plan.split(fold);
        let train = matrix.select_rows(&train_rows);
        let (train, synthetic) = match resample {
            Some(config) => resample_dataset(&train, config)?,
            None => (train, Vec::new()),
        };

        let model = TrainedClassifier::train(classifier, &train, num_classes)?;
        let y_true: Vec<usize> = test_rows.iter().map(|&i| matrix.label(i)).collect();
        let y_pred: Vec<usize> = test_rows
            .iter()
            .map(|&i| model.predict(matrix.row(i)))
            .collect::<Result<_>>()?;
        let cm = confusion(&y_true, &y_pred, num_classes)?;
        pooled_cm.merge(&cm);
        folds.push(metrics(&cm));
        traces.push(FoldTrace {
            fold,
            train_rows,
            test_rows,
            synthetic,
        });
    }

    let report = EvalReport {
        mean: mean_summary(folds.iter().map(|f| &f.summary)),
        folds,
        pooled: metrics(&pooled_cm),
        k,
        seed,
    };
    Ok(CvResult { report, traces })
}

fn mean_summary<'a>(summaries: impl Iterator<Item = &'a Summary>) -> Summary {
    let mut acc = Summary {
        accuracy: 0.0,
        macro_precision: 0.0,
        macro_recall: 0.0,
        macro_f1: 0.0,
        micro_precision: 0.0,
        micro_recall: 0.0,
        micro_f1: 0.0,
        weighted_precision: 0.0,
        weighted_recall: 0.0,
        weighted_f1: 0.0,
    };
    let mut n = 0usize;
    for s in summaries {
        acc.accuracy += s.accuracy;
        acc.macro_precision += s.macro_precision;
        acc.macro_recall += s.macro_recall;
        acc.macro_f1 += s.macro_f1;
        acc.micro_precision += s.micro_precision;
        acc.micro_recall += s.micro_recall;
        acc.micro_f1 += s.micro_f1;
        acc.weighted_precision += s.weighted_precision;
        acc.weighted_recall += s.weighted_recall;
        acc.weighted_f1 += s.weighted_f1;
        n += 1;
    }
    if n > 0 {
        let n = n as f64;
        acc.accuracy /= n;
        acc.macro_precision /= n;
        acc.macro_recall /= n;
        acc.macro_f1 /= n;
        acc.micro_precision /= n;
        acc.micro_recall /= n;
        acc.micro_f1 /= n;
        acc.weighted_precision /= n;
        acc.weighted_recall /= n;
        acc.weighted_f1 /= n;
    }
    acc
}

#[derive(Serialize, Deserialize)]
struct ReportFile {
    format: String,
    #[serde(flatten)]
    report: EvalReport,
}

/// Writes a report as `imbr-report/1` JSON.
pub fn save_report<W: Write>(report: &EvalReport, w: W) -> Result<()> {
    let file = ReportFile {
        format: REPORT_FORMAT.to_string(),
        report: report.clone(),
    };
    serde_json::to_writer_pretty(w, &file).map_err(|e| Error::Format {
        line: 0,
        message: e.to_string(),
    })
}

/// Reads a report back, rejecting unknown format strings.
pub fn load_report<R: Read>(r: R) -> Result<EvalReport> {
    let file: ReportFile = serde_json::from_reader(r).map_err(|e| Error::Format {
        line: e.line(),
        message: e.to_string(),
    })?;
    if file.format != REPORT_FORMAT {
        return Err(Error::Format {
            line: 1,
            message: format!("unknown report format {:?}", file.format),
        });
    }
    Ok(file.report)
}

//! Stratified cross-validation with leakage-safe oversampling, confusion
//! matrices, the four headline metrics, and the results-table renderer.

mod cv;
mod kfold;
mod metrics;
mod table;

/// Default fold count for cross-validation.
pub const DEFAULT_FOLDS: usize = 5;

pub use cv::{
    cross_validate, cross_validate_with_plan, load_report, save_report, CvResult, EvalReport,
    FoldTrace, REPORT_FORMAT,
};
pub use kfold::{stratified_kfold, FoldPlan};
pub use metrics::{confusion, metrics, ClassMetrics, ConfusionMatrix, MetricsReport, Summary};
pub use table::{render_csv, render_text, TableBlock, TableRow};

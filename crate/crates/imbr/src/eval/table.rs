//! Plain-text and CSV rendering of results tables: one block per classifier,
//! one row per dataset variant, columns Accuracy, Precision, Recall, F1.

use serde::{Deserialize, Serialize};

use super::cv::EvalReport;

/// One rendered line: a label and the four headline values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub label: String,
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl TableRow {
    /// Headline row of a cross-validation report: mean accuracy and the
    /// macro-averaged precision/recall/F1.
    pub fn from_report(label: impl Into<String>, report: &EvalReport) -> Self {
        Self {
            label: label.into(),
            accuracy: report.mean.accuracy,
            precision: report.mean.macro_precision,
            recall: report.mean.macro_recall,
            f1: report.mean.macro_f1,
        }
    }
}

/// A titled block of rows, typically one per classifier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableBlock {
    pub title: String,
    pub rows: Vec<TableRow>,
}

const HEADERS: [&str; 4] = ["Accuracy", "Precision", "Recall", "F1"];

/// Aligned plain text; values rendered at two decimals.
pub fn render_text(blocks: &[TableBlock]) -> String {
    let label_width = blocks
        .iter()
        .flat_map(|b| b.rows.iter().map(|r| r.label.len()).chain([b.title.len()]))
        .max()
        .unwrap_or(0);

    let mut out = String::new();
    for (i, block) in blocks.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!("{:<label_width$}", block.title));
        for h in HEADERS {
            out.push_str(&format!("  {h:>9}"));
        }
        out.push('\n');
        for row in &block.rows {
            out.push_str(&format!("{:<label_width$}", row.label));
            for v in [row.accuracy, row.precision, row.recall, row.f1] {
                out.push_str(&format!("  {v:>9.2}"));
            }
            out.push('\n');
        }
    }
    out
}

/// CSV form with the same column order, values at full precision.
pub fn render_csv(blocks: &[TableBlock]) -> String {
    let mut out = String::from("classifier,dataset,accuracy,precision,recall,f1\n");
    for block in blocks {
        for row in &block.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                block.title, row.label, row.accuracy, row.precision, row.recall, row.f1
            ));
        }
    }
    out
}

//! Confusion matrices and the accuracy/precision/recall/F1 family.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ClassId;

/// `C x C` counts; rows are true classes, columns predicted classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    rows: Vec<Vec<u64>>,
}

impl ConfusionMatrix {
    pub fn zeros(num_classes: usize) -> Self {
        Self {
            rows: vec![vec![0; num_classes]; num_classes],
        }
    }

    pub fn num_classes(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, true_class: usize, predicted: usize) -> u64 {
        self.rows[true_class][predicted]
    }

    pub fn add(&mut self, true_class: usize, predicted: usize) {
        self.rows[true_class][predicted] += 1;
    }

    pub fn total(&self) -> u64 {
        self.rows.iter().flatten().sum()
    }

    pub fn trace(&self) -> u64 {
        (0..self.num_classes()).map(|c| self.rows[c][c]).sum()
    }

    pub fn row_sum(&self, c: usize) -> u64 {
        self.rows[c].iter().sum()
    }

    pub fn col_sum(&self, c: usize) -> u64 {
        self.rows.iter().map(|r| r[c]).sum()
    }

    /// Element-wise sum; both sides must have the same class count.
    pub fn merge(&mut self, other: &ConfusionMatrix) {
        assert_eq!(self.num_classes(), other.num_classes());
        for (a, b) in self.rows.iter_mut().zip(&other.rows) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
    }
}

/// Counts `cm[t][p]` over paired label sequences.
pub fn confusion(
    y_true: &[ClassId],
    y_pred: &[ClassId],
    num_classes: usize,
) -> Result<ConfusionMatrix> {
    if y_true.len() != y_pred.len() {
        return Err(Error::LengthMismatch {
            left: y_true.len(),
            right: y_pred.len(),
        });
    }
    let mut cm = ConfusionMatrix::zeros(num_classes);
    for (&t, &p) in y_true.iter().zip(y_pred) {
        for id in [t, p] {
            if id >= num_classes {
                return Err(Error::ClassOutOfRange {
                    class_id: id,
                    num_classes,
                });
            }
        }
        cm.add(t, p);
    }
    Ok(cm)
}

/// Precision/recall/F1 of one class, with its support (true count).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: u64,
}

/// The headline numbers under the three averaging schemes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub accuracy: f64,
    pub macro_precision: f64,
    pub macro_recall: f64,
    pub macro_f1: f64,
    pub micro_precision: f64,
    pub micro_recall: f64,
    pub micro_f1: f64,
    pub weighted_precision: f64,
    pub weighted_recall: f64,
    pub weighted_f1: f64,
}

/// Full evaluation of one confusion matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub summary: Summary,
    pub per_class: Vec<ClassMetrics>,
    pub confusion: ConfusionMatrix,
}

/// Computes every metric from the matrix alone. Any 0/0 is defined as 0;
/// macro averages run over the classes actually present (support > 0),
/// weighted averages weight by support, micro counts are pooled.
pub fn metrics(cm: &ConfusionMatrix) -> MetricsReport {
    let c = cm.num_classes();
    let total = cm.total();
    let accuracy = ratio(cm.trace(), total);

    let mut per_class = Vec::with_capacity(c);
    for class in 0..c {
        let tp = cm.get(class, class);
        let precision = ratio(tp, cm.col_sum(class));
        let recall = ratio(tp, cm.row_sum(class));
        let f1 = harmonic(precision, recall);
        per_class.push(ClassMetrics {
            precision,
            recall,
            f1,
            support: cm.row_sum(class),
        });
    }

    let present: Vec<&ClassMetrics> = per_class.iter().filter(|m| m.support > 0).collect();
    let macro_avg = |f: fn(&ClassMetrics) -> f64| -> f64 {
        if present.is_empty() {
            0.0
        } else {
            present.iter().map(|m| f(m)).sum::<f64>() / present.len() as f64
        }
    };
    let weighted_avg = |f: fn(&ClassMetrics) -> f64| -> f64 {
        if total == 0 {
            0.0
        } else {
            per_class
                .iter()
                .map(|m| f(m) * m.support as f64)
                .sum::<f64>()
                / total as f64
        }
    };
    let micro = accuracy; // single-label multiclass: pooled P = R = F1 = accuracy

    MetricsReport {
        summary: Summary {
            accuracy,
            macro_precision: macro_avg(|m| m.precision),
            macro_recall: macro_avg(|m| m.recall),
            macro_f1: macro_avg(|m| m.f1),
            micro_precision: micro,
            micro_recall: micro,
            micro_f1: micro,
            weighted_precision: weighted_avg(|m| m.precision),
            weighted_recall: weighted_avg(|m| m.recall),
            weighted_f1: weighted_avg(|m| m.f1),
        },
        per_class,
        confusion: cm.clone(),
    }
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn harmonic(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_predictions() {
        let cm = confusion(&[0, 1, 2], &[0, 1, 2], 3).unwrap();
        for t in 0..3 {
            for p in 0..3 {
                assert_eq!(cm.get(t, p), u64::from(t == p));
            }
        }
        let report = metrics(&cm);
        assert_eq!(report.summary.accuracy, 1.0);
        assert_eq!(report.summary.macro_f1, 1.0);
    }

    #[test]
    fn hand_counted_matrix() {
        let cm = confusion(&[0, 0, 1, 1], &[0, 1, 1, 1], 2).unwrap();
        assert_eq!(cm.get(0, 0), 1);
        assert_eq!(cm.get(0, 1), 1);
        assert_eq!(cm.get(1, 0), 0);
        assert_eq!(cm.get(1, 1), 2);

        let report = metrics(&cm);
        assert!((report.summary.accuracy - 0.75).abs() < 1e-12);
        assert!((report.per_class[0].precision - 1.0).abs() < 1e-12);
        assert!((report.per_class[1].precision - 2.0 / 3.0).abs() < 1e-12);
        assert!((report.per_class[0].recall - 0.5).abs() < 1e-12);
        assert!((report.per_class[1].recall - 1.0).abs() < 1e-12);
        assert!((report.per_class[0].f1 - 2.0 / 3.0).abs() < 1e-12);
        assert!((report.per_class[1].f1 - 0.8).abs() < 1e-12);
        assert!((report.summary.macro_f1 - (2.0 / 3.0 + 0.8) / 2.0).abs() < 1e-4);
    }

    #[test]
    fn empty_inputs_are_all_zero() {
        let cm = confusion(&[], &[], 2).unwrap();
        assert_eq!(cm.total(), 0);
        let report = metrics(&cm);
        assert_eq!(report.summary.accuracy, 0.0);
        assert_eq!(report.summary.macro_f1, 0.0);
        assert_eq!(report.summary.weighted_f1, 0.0);
    }

    #[test]
    fn length_mismatch_and_range_errors() {
        assert!(matches!(
            confusion(&[0, 1], &[0], 2),
            Err(Error::LengthMismatch { left: 2, right: 1 })
        ));
        assert!(matches!(
            confusion(&[0, 2], &[0, 0], 2),
            Err(Error::ClassOutOfRange { class_id: 2, .. })
        ));
    }

    #[test]
    fn macro_ignores_absent_classes() {
        // class 2 never occurs as a true label; macro runs over classes 0, 1
        let cm = confusion(&[0, 0, 1, 1], &[0, 2, 1, 1], 3).unwrap();
        let report = metrics(&cm);
        let expected_recall = (0.5 + 1.0) / 2.0;
        assert!((report.summary.macro_recall - expected_recall).abs() < 1e-12);
    }

    #[test]
    fn macro_f1_invariant_under_relabeling() {
        let y_true = [0usize, 0, 1, 2, 2, 1, 0, 2];
        let y_pred = [0usize, 1, 1, 2, 0, 1, 0, 2];
        let report = metrics(&confusion(&y_true, &y_pred, 3).unwrap());
        // permutation 0->2, 1->0, 2->1
        let perm = [2usize, 0, 1];
        let yt: Vec<usize> = y_true.iter().map(|&c| perm[c]).collect();
        let yp: Vec<usize> = y_pred.iter().map(|&c| perm[c]).collect();
        let permuted = metrics(&confusion(&yt, &yp, 3).unwrap());
        assert!((report.summary.macro_f1 - permuted.summary.macro_f1).abs() < 1e-12);
    }

    #[test]
    fn merge_adds_counts() {
        let mut a = confusion(&[0, 1], &[0, 1], 2).unwrap();
        let b = confusion(&[0, 1], &[1, 1], 2).unwrap();
        a.merge(&b);
        assert_eq!(a.get(0, 0), 1);
        assert_eq!(a.get(0, 1), 1);
        assert_eq!(a.get(1, 1), 2);
        assert_eq!(a.total(), 4);
    }
}

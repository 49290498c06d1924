//! Multinomial naive Bayes with Laplace smoothing, for count-valued features.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::FeatureMatrix;

/// Log priors plus per-class log feature likelihoods.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NaiveBayesModel {
    log_priors: Vec<f64>,
    log_likelihood: Vec<f64>,
    num_classes: usize,
    dim: usize,
    pub alpha: f64,
}

impl NaiveBayesModel {
    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn log_priors(&self) -> &[f64] {
        &self.log_priors
    }

    /// Log likelihoods of class `c`, one per feature.
    pub fn class_log_likelihood(&self, c: usize) -> &[f64] {
        &self.log_likelihood[c * self.dim..(c + 1) * self.dim]
    }

    pub(crate) fn from_parts(
        log_priors: Vec<f64>,
        log_likelihood: Vec<f64>,
        num_classes: usize,
        dim: usize,
        alpha: f64,
    ) -> Self {
        Self {
            log_priors,
            log_likelihood,
            num_classes,
            dim,
            alpha,
        }
    }

    /// Posterior class probabilities via log-sum-exp; sums to 1 within 1e-9.
    pub fn predict_proba(&self, row: &[f64]) -> Result<Vec<f64>> {
        if row.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: row.len(),
            });
        }
        let scores: Vec<f64> = (0..self.num_classes)
            .map(|c| {
                self.log_priors[c]
                    + self
                        .class_log_likelihood(c)
                        .iter()
                        .zip(row)
                        .map(|(ll, x)| ll * x)
                        .sum::<f64>()
            })
            .collect();
        let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let exps: Vec<f64> = scores.iter().map(|s| (s - max).exp()).collect();
        let sum: f64 = exps.iter().sum();
        Ok(exps.into_iter().map(|e| e / sum).collect())
    }

    pub fn predict(&self, row: &[f64]) -> Result<usize> {
        Ok(super::argmax(&self.predict_proba(row)?))
    }
}

/// Multinomial fit: `P(f|c) = (count(f,c) + alpha) / (sum_f count(f,c) + alpha*d)`,
/// priors proportional to class counts. Features must be nonnegative.
pub fn train_nb(matrix: &FeatureMatrix, alpha: f64) -> Result<NaiveBayesModel> {
    train_nb_with_classes(matrix, alpha, matrix.num_classes())
}

/// [`train_nb`] with an explicit class count, for evaluation settings where
/// some classes can be absent from the training rows (their prior is zero).
pub fn train_nb_with_classes(
    matrix: &FeatureMatrix,
    alpha: f64,
    num_classes: usize,
) -> Result<NaiveBayesModel> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::InvalidConfig("alpha must be positive".into()));
    }
    let num_classes = num_classes.max(matrix.num_classes());
    let d = matrix.n_cols();

    let mut feature_sums = vec![0.0f64; num_classes * d];
    let mut class_counts = vec![0usize; num_classes];
    for (i, (row, &label)) in matrix.rows().zip(matrix.labels()).enumerate() {
        if let Some(column) = row.iter().position(|&v| v < 0.0) {
            return Err(Error::NegativeFeature { row: i, column });
        }
        class_counts[label] += 1;
        let sums = &mut feature_sums[label * d..(label + 1) * d];
        for (s, v) in sums.iter_mut().zip(row) {
            *s += v;
        }
    }

    let total: usize = class_counts.iter().sum();
    let log_priors: Vec<f64> = class_counts
        .iter()
        .map(|&n| {
            if n == 0 {
                f64::NEG_INFINITY
            } else {
                (n as f64 / total as f64).ln()
            }
        })
        .collect();

    let mut log_likelihood = vec![0.0f64; num_classes * d];
    for c in 0..num_classes {
        let sums = &feature_sums[c * d..(c + 1) * d];
        let denom: f64 = sums.iter().sum::<f64>() + alpha * d as f64;
        let lls = &mut log_likelihood[c * d..(c + 1) * d];
        for (ll, s) in lls.iter_mut().zip(sums) {
            *ll = ((s + alpha) / denom).ln();
        }
    }

    Ok(NaiveBayesModel::from_parts(
        log_priors,
        log_likelihood,
        num_classes,
        d,
        alpha,
    ))
}

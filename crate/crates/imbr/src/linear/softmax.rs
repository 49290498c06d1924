//! Softmax regression trained by mini-batch gradient descent on the weighted
//! cross-entropy.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::FeatureMatrix;
use crate::rng::seeded_rng;

use super::{weighted_ce, ClassWeights, TrainConfig};

/// Linear multiclass model: `C x d` weights plus a length-`C` bias.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SoftmaxModel {
    weights: Vec<f64>,
    bias: Vec<f64>,
    num_classes: usize,
    dim: usize,
    pub meta: TrainConfig,
}

impl SoftmaxModel {
    /// Zero-initialized model; predicts the uniform distribution everywhere.
    pub fn zeroed(num_classes: usize, dim: usize, meta: TrainConfig) -> Self {
        Self {
            weights: vec![0.0; num_classes * dim],
            bias: vec![0.0; num_classes],
            num_classes,
            dim,
            meta,
        }
    }

    /// Builds a model from raw parameters (row-major `C x d` weights).
    pub fn from_parts(weights: Vec<f64>, bias: Vec<f64>, num_classes: usize, dim: usize) -> Self {
        assert_eq!(weights.len(), num_classes * dim);
        assert_eq!(bias.len(), num_classes);
        Self {
            weights,
            bias,
            num_classes,
            dim,
            meta: TrainConfig::default(),
        }
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn bias(&self) -> &[f64] {
        &self.bias
    }

    fn class_weights_row(&self, c: usize) -> &[f64] {
        &self.weights[c * self.dim..(c + 1) * self.dim]
    }

    /// Raw scores `Wx + b`.
    pub fn logits(&self, row: &[f64]) -> Result<Vec<f64>> {
        if row.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: row.len(),
            });
        }
        Ok((0..self.num_classes)
            .map(|c| {
                self.bias[c]
                    + self
                        .class_weights_row(c)
                        .iter()
                        .zip(row)
                        .map(|(w, x)| w * x)
                        .sum::<f64>()
            })
            .collect())
    }

    /// Class probabilities; sums to 1 within 1e-9.
    pub fn predict_proba(&self, row: &[f64]) -> Result<Vec<f64>> {
        Ok(softmax(&self.logits(row)?))
    }

    pub fn predict(&self, row: &[f64]) -> Result<usize> {
        Ok(super::argmax(&self.predict_proba(row)?))
    }

    /// Mean weighted cross-entropy over the matrix at the current parameters.
    pub fn mean_loss(&self, matrix: &FeatureMatrix, weights: &ClassWeights) -> Result<f64> {
        let mut total = 0.0;
        for (row, &label) in matrix.rows().zip(matrix.labels()) {
            total += weighted_ce(&self.predict_proba(row)?, label, weights);
        }
        Ok(total / matrix.n_rows().max(1) as f64)
    }

    /// Analytic gradient of [`mean_loss`](Self::mean_loss) with respect to
    /// the weights (row-major `C x d`) and bias. Samples whose true-class
    /// probability sits at the clamp floor contribute nothing, exactly as in
    /// the clamped loss.
    pub fn loss_gradient(
        &self,
        matrix: &FeatureMatrix,
        weights: &ClassWeights,
    ) -> Result<(Vec<f64>, Vec<f64>)> {
        let mut grad_w = vec![0.0; self.num_classes * self.dim];
        let mut grad_b = vec![0.0; self.num_classes];
        let scale = 1.0 / matrix.n_rows().max(1) as f64;
        for (row, &label) in matrix.rows().zip(matrix.labels()) {
            let probs = self.predict_proba(row)?;
            if probs[label] <= super::PROB_CLAMP {
                continue;
            }
            let w_true = weights.get(label);
            for c in 0..self.num_classes {
                let coef = scale * w_true * (probs[c] - if c == label { 1.0 } else { 0.0 });
                grad_b[c] += coef;
                let grad_row = &mut grad_w[c * self.dim..(c + 1) * self.dim];
                for (g, x) in grad_row.iter_mut().zip(row) {
                    *g += coef * x;
                }
            }
        }
        Ok((grad_w, grad_b))
    }
}

/// Numerically stable softmax.
pub(crate) fn softmax(logits: &[f64]) -> Vec<f64> {
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = logits.iter().map(|z| (z - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / sum).collect()
}

/// Trains from zero initialization: per epoch the rows are reshuffled with
/// the seeded generator and consumed in consecutive batches (the final short
/// batch is kept); each batch takes one step against the mean weighted
/// cross-entropy gradient. The class count is `weights.len()`.
pub fn train_softmax(
    matrix: &FeatureMatrix,
    config: &TrainConfig,
    weights: &ClassWeights,
) -> Result<SoftmaxModel> {
    config.validate()?;
    let num_classes = weights.len();
    if num_classes < 2 {
        return Err(Error::NotEnoughClasses {
            found: num_classes,
        });
    }
    if let Some(&bad) = matrix.labels().iter().find(|&&l| l >= num_classes) {
        return Err(Error::ClassOutOfRange {
            class_id: bad,
            num_classes,
        });
    }

    let dim = matrix.n_cols();
    let mut model = SoftmaxModel::zeroed(num_classes, dim, config.clone());
    let mut order: Vec<usize> = (0..matrix.n_rows()).collect();
    let mut rng = seeded_rng(config.seed);

    for epoch in 0..config.epochs {
        order.shuffle(&mut rng);
        for (batch_no, batch) in order.chunks(config.batch_size).enumerate() {
            let scale = 1.0 / batch.len() as f64;
            let mut grad_w = vec![0.0; num_classes * dim];
            let mut grad_b = vec![0.0; num_classes];
            let mut batch_loss = 0.0;
            for &i in batch {
                let row = matrix.row(i);
                let label = matrix.label(i);
                let probs = model.predict_proba(row)?;
                batch_loss += scale * weighted_ce(&probs, label, weights);
                let w_true = weights.get(label);
                for c in 0..num_classes {
                    let coef = scale * w_true * (probs[c] - if c == label { 1.0 } else { 0.0 });
                    grad_b[c] += coef;
                    let grad_row = &mut grad_w[c * dim..(c + 1) * dim];
                    for (g, x) in grad_row.iter_mut().zip(row) {
                        *g += coef * x;
                    }
                }
            }
            if !batch_loss.is_finite() {
                return Err(Error::NonFiniteLoss {
                    epoch,
                    batch: batch_no,
                });
            }
            for (w, g) in model.weights.iter_mut().zip(&grad_w) {
                *w -= config.learning_rate * g;
            }
            for (b, g) in model.bias.iter_mut().zip(&grad_b) {
                *b -= config.learning_rate * g;
            }
        }
    }
    Ok(model)
}

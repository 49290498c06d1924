//! Class weighting, weighted cross-entropy, and the two baseline
//! classifiers: softmax regression and multinomial naive Bayes.

mod naive_bayes;
mod persist;
mod softmax;

pub use naive_bayes::{train_nb, train_nb_with_classes, NaiveBayesModel};
pub use persist::{load_model, save_model, MODEL_FORMAT};
pub use softmax::{train_softmax, SoftmaxModel};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::FeatureMatrix;

/// Per-class positive multipliers on the loss.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassWeights(Vec<f64>);

impl ClassWeights {
    /// Inverse-frequency balancing: `w_c = N / (C * n_c)`. Balanced counts
    /// give all-ones.
    pub fn balanced(class_counts: &[usize]) -> Result<Self> {
        if let Some(class_id) = class_counts.iter().position(|&c| c == 0) {
            return Err(Error::EmptyClass { class_id });
        }
        let n: usize = class_counts.iter().sum();
        let c = class_counts.len();
        Ok(Self(
            class_counts
                .iter()
                .map(|&n_c| n as f64 / (c as f64 * n_c as f64))
                .collect(),
        ))
    }

    /// Like [`balanced`](Self::balanced) but tolerates absent classes: they
    /// get weight 1 (they contribute no samples, so the value never enters a
    /// loss) and `C` counts only the classes present.
    pub fn balanced_lenient(class_counts: &[usize]) -> Self {
        let n: usize = class_counts.iter().sum();
        let c = class_counts.iter().filter(|&&n_c| n_c > 0).count().max(1);
        Self(
            class_counts
                .iter()
                .map(|&n_c| {
                    if n_c == 0 {
                        1.0
                    } else {
                        n as f64 / (c as f64 * n_c as f64)
                    }
                })
                .collect(),
        )
    }

    /// All-ones weights (unweighted loss) for `num_classes` classes.
    pub fn uniform(num_classes: usize) -> Self {
        Self(vec![1.0; num_classes])
    }

    /// Weights from raw values; all must be positive and finite.
    pub fn from_vec(weights: Vec<f64>) -> Result<Self> {
        if let Some(class_id) = weights.iter().position(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::InvalidConfig(format!(
                "class weight {} for class {class_id} is not positive",
                weights[class_id]
            )));
        }
        Ok(Self(weights))
    }

    pub fn get(&self, class_id: usize) -> f64 {
        self.0[class_id]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// Probabilities below this are clamped before taking the log.
pub const PROB_CLAMP: f64 = 1e-12;

/// Weighted cross-entropy of one prediction: `-w_true * ln(p_true)`, with
/// `p_true` clamped to `[1e-12, 1]`. Total by construction.
pub fn weighted_ce(probabilities: &[f64], true_class: usize, weights: &ClassWeights) -> f64 {
    let p = probabilities[true_class].clamp(PROB_CLAMP, 1.0);
    -weights.get(true_class) * p.ln()
}

/// Mini-batch gradient-descent settings for the softmax trainer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub epochs: usize,
    pub batch_size: usize,
    pub learning_rate: f64,
    pub seed: u64,
    pub use_class_weights: bool,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            epochs: 10,
            batch_size: 32,
            learning_rate: 0.05,
            seed: 0,
            use_class_weights: true,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.epochs < 1 {
            return Err(Error::InvalidConfig("epochs must be at least 1".into()));
        }
        if self.batch_size < 1 {
            return Err(Error::InvalidConfig("batch_size must be at least 1".into()));
        }
        if !self.learning_rate.is_finite() || self.learning_rate <= 0.0 {
            return Err(Error::InvalidConfig(
                "learning_rate must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Which classifier to train, with its settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ClassifierSpec {
    Softmax { config: TrainConfig },
    #[serde(rename = "nb")]
    NaiveBayes { alpha: f64 },
}

/// A trained model of either kind; prediction and persistence are uniform.
#[derive(Debug, Clone, PartialEq)]
pub enum TrainedClassifier {
    Softmax(SoftmaxModel),
    NaiveBayes(NaiveBayesModel),
}

impl TrainedClassifier {
    /// Trains the classifier described by `spec`. For softmax the class
    /// count is `num_classes` and weights follow `use_class_weights`; naive
    /// Bayes takes no weights.
    pub fn train(
        spec: &ClassifierSpec,
        matrix: &FeatureMatrix,
        num_classes: usize,
    ) -> Result<Self> {
        match spec {
            ClassifierSpec::Softmax { config } => {
                let mut counts = matrix.class_counts();
                counts.resize(num_classes.max(counts.len()), 0);
                let weights = if config.use_class_weights {
                    ClassWeights::balanced_lenient(&counts)
                } else {
                    ClassWeights::uniform(counts.len())
                };
                Ok(Self::Softmax(train_softmax(matrix, config, &weights)?))
            }
            ClassifierSpec::NaiveBayes { alpha } => Ok(Self::NaiveBayes(train_nb_with_classes(
                matrix,
                *alpha,
                num_classes,
            )?)),
        }
    }

    pub fn num_classes(&self) -> usize {
        match self {
            Self::Softmax(m) => m.num_classes(),
            Self::NaiveBayes(m) => m.num_classes(),
        }
    }

    pub fn predict_proba(&self, row: &[f64]) -> Result<Vec<f64>> {
        match self {
            Self::Softmax(m) => m.predict_proba(row),
            Self::NaiveBayes(m) => m.predict_proba(row),
        }
    }

    pub fn predict(&self, row: &[f64]) -> Result<usize> {
        Ok(argmax(&self.predict_proba(row)?))
    }

    /// Row-wise predictions for a whole matrix.
    pub fn predict_matrix(&self, matrix: &FeatureMatrix) -> Result<Vec<usize>> {
        matrix.rows().map(|row| self.predict(row)).collect()
    }
}

/// Index of the largest value; ties go to the smaller index.
pub(crate) fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

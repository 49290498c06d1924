//! Synthetic minority oversampling: SMOTE, Geometric-SMOTE, and ADASYN,
//! plus the multiclass orchestrator that applies them class by class.
//!
//! All three algorithms draw every synthetic row from a generator derived
//! from `(seed, class_id, sample_index)`, so output is reproducible and
//! independent of generation order.

mod adasyn;
mod gsmote;
mod smote;

pub use adasyn::adasyn;
pub use gsmote::geometric_smote;
pub use smote::{smote, smote_with};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{ClassId, FeatureMatrix};

/// Oversampling algorithm choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Smote,
    #[serde(rename = "gsmote")]
    GeometricSmote,
    Adasyn,
}

/// How many synthetic rows each class should receive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetStrategy {
    /// Raise every class to the majority count.
    Auto,
    /// Absolute synthetic counts per class id; unlisted classes get zero.
    Explicit(BTreeMap<ClassId, usize>),
}

/// How the center instance of each synthetic row is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CenterSelection {
    /// Cycle through the class members in row order; guarantees every member
    /// is used ⌊n/m⌋ or ⌈n/m⌉ times.
    #[default]
    RoundRobin,
    /// Uniformly random member per row.
    Uniform,
}

/// Where Geometric-SMOTE picks the surface point that sets the radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceSelection {
    /// A uniformly chosen same-class neighbor of the center.
    Minority,
    /// The nearest instance outside the class.
    Majority,
    /// The nearer of the minority and majority candidates.
    #[default]
    Combined,
}

/// Full oversampling configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResampleConfig {
    pub algorithm: Algorithm,
    /// Neighbor count; clamped to class size − 1 per class, with a warning.
    pub k: usize,
    pub strategy: TargetStrategy,
    pub seed: u64,
    pub center_selection: CenterSelection,
    /// In [-1, 1]; 1 keeps the half-ball toward the surface point.
    pub gsmote_truncation: f64,
    /// In [0, 1]; 1 flattens the ball onto the hyperplane through the center.
    pub gsmote_deformation: f64,
    pub gsmote_selection: SurfaceSelection,
    /// In (0, 1]; fraction of the majority gap ADASYN fills.
    pub adasyn_beta: f64,
}

impl ResampleConfig {
    pub fn new(algorithm: Algorithm) -> Self {
        Self {
            algorithm,
            k: 5,
            strategy: TargetStrategy::Auto,
            seed: 0,
            center_selection: CenterSelection::RoundRobin,
            gsmote_truncation: 1.0,
            gsmote_deformation: 0.0,
            gsmote_selection: SurfaceSelection::Combined,
            adasyn_beta: 1.0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    /// Range checks; call before doing any work.
    pub fn validate(&self) -> Result<()> {
        if self.k < 1 {
            return Err(Error::InvalidConfig("k must be at least 1".into()));
        }
        if !(-1.0..=1.0).contains(&self.gsmote_truncation) {
            return Err(Error::InvalidConfig(format!(
                "gsmote_truncation {} outside [-1, 1]",
                self.gsmote_truncation
            )));
        }
        if !(0.0..=1.0).contains(&self.gsmote_deformation) {
            return Err(Error::InvalidConfig(format!(
                "gsmote_deformation {} outside [0, 1]",
                self.gsmote_deformation
            )));
        }
        if !(self.adasyn_beta > 0.0 && self.adasyn_beta <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "adasyn_beta {} outside (0, 1]",
                self.adasyn_beta
            )));
        }
        if let TargetStrategy::Explicit(_) = self.strategy {
            // class ids are checked against the data in plan_targets
        }
        Ok(())
    }
}

/// Where one synthetic row came from: the class member it was centered on,
/// the neighbor (or surface point) that closed the segment or set the
/// radius, and the interpolation draw `u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub center: usize,
    pub neighbor: usize,
    pub draw: f64,
}

/// Synthetic rows of one class with per-row provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticBatch {
    pub class_id: ClassId,
    pub rows: Vec<Vec<f64>>,
    pub provenance: Vec<Provenance>,
}

impl SyntheticBatch {
    pub(crate) fn empty(class_id: ClassId) -> Self {
        Self {
            class_id,
            rows: Vec::new(),
            provenance: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Dataset-level provenance: one record per synthetic output row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticProvenance {
    /// Row index in the resampled matrix.
    pub output_row: usize,
    pub class_id: ClassId,
    /// Row index of the center in the original matrix.
    pub center: usize,
    /// Row index of the neighbor/surface point in the original matrix.
    pub neighbor: usize,
    pub draw: f64,
}

/// Synthetic counts per class under a strategy.
///
/// `Auto` raises every non-empty class to the majority count (the majority
/// itself gets zero); classes absent from the data stay at zero since there
/// is nothing to interpolate from. `Explicit` passes through and rejects
/// class ids not present in the counts.
pub fn plan_targets(class_counts: &[usize], strategy: &TargetStrategy) -> Result<Vec<usize>> {
    match strategy {
        TargetStrategy::Auto => {
            let max = class_counts.iter().copied().max().unwrap_or(0);
            Ok(class_counts
                .iter()
                .map(|&c| if c == 0 { 0 } else { max - c })
                .collect())
        }
        TargetStrategy::Explicit(map) => {
            let mut targets = vec![0usize; class_counts.len()];
            for (&class_id, &count) in map {
                if class_id >= class_counts.len() || class_counts[class_id] == 0 {
                    return Err(Error::UnknownClass { class_id });
                }
                targets[class_id] = count;
            }
            Ok(targets)
        }
    }
}

/// Applies the configured algorithm to every class with a positive planned
/// target, neighbors always computed against the original matrix.
///
/// Output: the original rows unchanged and in order, then the synthetic rows
/// grouped by ascending class id. ADASYN decides its own per-class total from
/// `adasyn_beta`; the plan only selects which classes participate.
pub fn resample_dataset(
    matrix: &FeatureMatrix,
    config: &ResampleConfig,
) -> Result<(FeatureMatrix, Vec<SyntheticProvenance>)> {
    config.validate()?;
    let counts = matrix.class_counts();
    let present = counts.iter().filter(|&&c| c > 0).count();
    if present < 2 {
        return Err(Error::NotEnoughClasses { found: present });
    }
    let targets = plan_targets(&counts, &config.strategy)?;

    let mut out = matrix.clone();
    let mut provenance = Vec::new();
    let mut generated = 0usize;
    for (class_id, &target) in targets.iter().enumerate() {
        if target == 0 {
            continue;
        }
        let batch = match config.algorithm {
            Algorithm::Smote => smote_with(
                matrix,
                class_id,
                target,
                config.k,
                config.seed,
                config.center_selection,
            )?,
            Algorithm::GeometricSmote => {
                geometric_smote(matrix, class_id, target, config, config.seed)?
            }
            Algorithm::Adasyn => adasyn(matrix, class_id, config.k, config.adasyn_beta, config.seed)?,
        };
        for (row, p) in batch.rows.iter().zip(&batch.provenance) {
            provenance.push(SyntheticProvenance {
                output_row: out.n_rows(),
                class_id,
                center: p.center,
                neighbor: p.neighbor,
                draw: p.draw,
            });
            out.push_row(row, class_id)?;
            generated += 1;
        }
    }
    if generated == 0 {
        log::warn!("resampling generated no synthetic rows; output equals input");
    }
    Ok((out, provenance))
}

/// Clamp k to `class_size - 1`, warning when the class is too small for the
/// requested neighborhood.
pub(crate) fn effective_k(k: usize, class_size: usize, class_id: ClassId) -> usize {
    let k_eff = k.min(class_size - 1);
    if k_eff < k {
        log::warn!(
            "class {class_id}: k={k} clamped to {k_eff} (class has {class_size} members)"
        );
    }
    k_eff
}

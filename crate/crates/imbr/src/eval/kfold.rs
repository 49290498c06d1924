//! Stratified fold assignment.

use serde::{Deserialize, Serialize};

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::matrix::ClassId;
use crate::rng::seeded_rng;

/// Per-row fold ids in `[0, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldPlan {
    pub assignments: Vec<usize>,
    pub k: usize,
    pub seed: u64,
}

impl FoldPlan {
    /// `(train, test)` row indices for fold `fold`, both in ascending order.
    pub fn split(&self, fold: usize) -> (Vec<usize>, Vec<usize>) {
        let mut train = Vec::new();
        let mut test = Vec::new();
        for (i, &f) in self.assignments.iter().enumerate() {
            if f == fold {
                test.push(i);
            } else {
                train.push(i);
            }
        }
        (train, test)
    }
}

/// Shuffles each class with the seeded generator and deals its members
/// round-robin to folds, carrying the dealing position across classes so
/// fold sizes stay within one of each other globally as well as per class.
///
/// Classes smaller than `k` are allowed; the folds they miss are logged.
pub fn stratified_kfold(labels: &[ClassId], k: usize, seed: u64) -> Result<FoldPlan> {
    if k < 2 {
        return Err(Error::InvalidConfig("k must be at least 2".into()));
    }
    if labels.len() < k {
        return Err(Error::TooFewRows {
            rows: labels.len(),
            k,
        });
    }

    let num_classes = labels.iter().max().map(|m| m + 1).unwrap_or(0);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); num_classes];
    for (i, &l) in labels.iter().enumerate() {
        members[l].push(i);
    }

    let mut rng = seeded_rng(seed);
    let mut assignments = vec![0usize; labels.len()];
    let mut next_fold = 0usize;
    for (class_id, rows) in members.iter_mut().enumerate() {
        if rows.is_empty() {
            continue;
        }
        if rows.len() < k {
            log::warn!(
                "class {class_id} has {} member(s) for k={k}; some folds will lack it",
                rows.len()
            );
        }
        rows.shuffle(&mut rng);
        for &row in rows.iter() {
            assignments[row] = next_fold;
            next_fold = (next_fold + 1) % k;
        }
    }

    Ok(FoldPlan {
        assignments,
        k,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn per_class_fold_counts(plan: &FoldPlan, labels: &[usize]) -> Vec<Vec<usize>> {
        let c = labels.iter().max().unwrap() + 1;
        let mut counts = vec![vec![0usize; plan.k]; c];
        for (i, &l) in labels.iter().enumerate() {
            counts[l][plan.assignments[i]] += 1;
        }
        counts
    }

    #[test]
    fn exact_divisibility() {
        let labels = vec![0, 0, 0, 0, 0, 1, 1, 1, 1, 1];
        let plan = stratified_kfold(&labels, 5, 3).unwrap();
        for class_counts in per_class_fold_counts(&plan, &labels) {
            assert_eq!(class_counts, vec![1; 5]);
        }
    }

    #[test]
    fn seven_members_in_five_folds() {
        let labels = vec![0; 7];
        let plan = stratified_kfold(&labels, 5, 11).unwrap();
        let mut sizes = per_class_fold_counts(&plan, &labels)[0].clone();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(sizes, vec![2, 2, 1, 1, 1]);
    }

    #[test]
    fn deterministic() {
        let labels: Vec<usize> = (0..40).map(|i| i % 3).collect();
        let a = stratified_kfold(&labels, 5, 7).unwrap();
        let b = stratified_kfold(&labels, 5, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn folds_cover_all_rows_and_are_nonempty() {
        // several small classes; the continuous deal keeps every fold filled
        let labels = vec![0, 0, 1, 1, 2, 2, 3, 3];
        let plan = stratified_kfold(&labels, 5, 1).unwrap();
        let mut fold_sizes = vec![0usize; 5];
        for &f in &plan.assignments {
            fold_sizes[f] += 1;
        }
        assert!(fold_sizes.iter().all(|&s| s > 0), "{fold_sizes:?}");
        assert_eq!(fold_sizes.iter().sum::<usize>(), labels.len());
    }

    #[test]
    fn spread_within_one_per_class() {
        let labels: Vec<usize> = (0..53).map(|i| (i * 7) % 4).collect();
        for k in [2usize, 5, 10] {
            let plan = stratified_kfold(&labels, k, 99).unwrap();
            for class_counts in per_class_fold_counts(&plan, &labels) {
                let max = class_counts.iter().max().unwrap();
                let min = class_counts.iter().min().unwrap();
                assert!(max - min <= 1);
            }
        }
    }

    #[test]
    fn too_few_rows() {
        assert!(matches!(
            stratified_kfold(&[0, 1], 5, 0),
            Err(Error::TooFewRows { rows: 2, k: 5 })
        ));
    }

    #[test]
    fn split_partitions_rows() {
        let labels: Vec<usize> = (0..20).map(|i| i % 2).collect();
        let plan = stratified_kfold(&labels, 4, 5).unwrap();
        for fold in 0..4 {
            let (train, test) = plan.split(fold);
            assert_eq!(train.len() + test.len(), 20);
            let mut all: Vec<usize> = train.iter().chain(&test).copied().collect();
            all.sort_unstable();
            assert_eq!(all, (0..20).collect::<Vec<_>>());
        }
    }
}

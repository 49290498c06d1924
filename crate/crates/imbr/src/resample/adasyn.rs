//! Density-adaptive oversampling: instances whose neighborhoods contain more
//! out-of-class points receive more synthetic rows.

use rand::Rng;

use crate::apportion::largest_remainder;
use crate::error::{Error, Result};
use crate::knn::{knn, CandidateFilter};
use crate::matrix::{ClassId, FeatureMatrix};
use crate::rng::derive_rng;

use super::{effective_k, Provenance, SyntheticBatch};

/// ADASYN for one class.
///
/// The total is `G = round(beta * (n_majority - n_class))`. Each member's
/// share is proportional to the fraction of out-of-class points among its k
/// nearest neighbors in the full dataset (self excluded), resolved to whole
/// rows by largest-remainder apportionment; when no member sees an outsider
/// the shares fall back to uniform. Rows are interpolated toward same-class
/// neighbors exactly as in SMOTE.
pub fn adasyn(
    matrix: &FeatureMatrix,
    class_id: ClassId,
    k: usize,
    beta: f64,
    seed: u64,
) -> Result<SyntheticBatch> {
    assert!(k >= 1, "k must be at least 1");
    assert!(beta > 0.0 && beta <= 1.0, "beta must be in (0, 1]");
    let members = matrix.class_members(class_id);
    if members.is_empty() {
        return Err(Error::ClassTooSmall { class_id, size: 0 });
    }
    let counts = matrix.class_counts();
    let majority = counts.iter().copied().max().unwrap();
    let n_class = members.len();
    let strict_majority =
        n_class == majority && counts.iter().filter(|&&c| c == majority).count() == 1;
    if strict_majority {
        return Err(Error::ClassIsMajority { class_id });
    }

    let total = (beta * (majority - n_class) as f64).round() as usize;
    if total == 0 {
        return Ok(SyntheticBatch::empty(class_id));
    }

    // Density criterion over the full dataset.
    let full = knn(matrix, &members, k, CandidateFilter::All, true)?;
    let ratios: Vec<f64> = (0..members.len())
        .map(|pos| {
            let outsiders = full
                .of(pos)
                .iter()
                .filter(|n| matrix.label(n.index) != class_id)
                .count();
            outsiders as f64 / k as f64
        })
        .collect();

    let allocations = if ratios.iter().sum::<f64>() > 0.0 {
        largest_remainder(total, &ratios)
    } else {
        log::warn!(
            "class {class_id}: no out-of-class neighbors anywhere; falling back to uniform allocation"
        );
        largest_remainder(total, &vec![1.0; members.len()])
    };

    if n_class < 2 {
        // allocations exist but there is no same-class neighbor to
        // interpolate toward
        return Err(Error::ClassTooSmall {
            class_id,
            size: n_class,
        });
    }
    let k_eff = effective_k(k, n_class, class_id);
    let same = knn(
        matrix,
        &members,
        k_eff,
        CandidateFilter::SameClass(class_id),
        true,
    )?;

    let mut batch = SyntheticBatch::empty(class_id);
    let mut sample_index = 0u64;
    for (pos, &share) in allocations.iter().enumerate() {
        let center = members[pos];
        let x_center = matrix.row(center);
        for _ in 0..share {
            let mut rng = derive_rng(seed, class_id as u64, sample_index);
            sample_index += 1;
            let neighbor = same.of(pos)[rng.random_range(0..k_eff)].index;
            let u: f64 = rng.random();
            let row: Vec<f64> = x_center
                .iter()
                .zip(matrix.row(neighbor))
                .map(|(c, n)| c + u * (n - c))
                .collect();
            batch.rows.push(row);
            batch.provenance.push(Provenance {
                center,
                neighbor,
                draw: u,
            });
        }
    }
    debug_assert_eq!(batch.len(), total);
    Ok(batch)
}

//! Linear-interpolation oversampling: each synthetic row sits on the segment
//! between a class member and one of its k same-class nearest neighbors.

use rand::Rng;

use crate::error::{Error, Result};
use crate::knn::{knn, CandidateFilter};
use crate::matrix::{ClassId, FeatureMatrix};
use crate::rng::derive_rng;

use super::{effective_k, CenterSelection, Provenance, SyntheticBatch};

/// `n_new` synthetic rows for one class, centers cycled round-robin over the
/// class members.
///
/// Row `s` is `x_i + u * (x_nn - x_i)` where `x_i` is the center, `x_nn` a
/// uniformly chosen element of its k same-class nearest neighbors, and
/// `u ~ Uniform[0, 1)`, all drawn from the `(seed, class_id, s)` stream.
pub fn smote(
    matrix: &FeatureMatrix,
    class_id: ClassId,
    n_new: usize,
    k: usize,
    seed: u64,
) -> Result<SyntheticBatch> {
    smote_with(matrix, class_id, n_new, k, seed, CenterSelection::RoundRobin)
}

/// [`smote`] with an explicit center-selection policy.
pub fn smote_with(
    matrix: &FeatureMatrix,
    class_id: ClassId,
    n_new: usize,
    k: usize,
    seed: u64,
    centers: CenterSelection,
) -> Result<SyntheticBatch> {
    assert!(k >= 1, "k must be at least 1");
    let members = matrix.class_members(class_id);
    if members.len() < 2 {
        return Err(Error::ClassTooSmall {
            class_id,
            size: members.len(),
        });
    }
    if n_new == 0 {
        return Ok(SyntheticBatch::empty(class_id));
    }

    let k_eff = effective_k(k, members.len(), class_id);
    let neighbors = knn(
        matrix,
        &members,
        k_eff,
        CandidateFilter::SameClass(class_id),
        true,
    )?;

    let mut batch = SyntheticBatch::empty(class_id);
    for s in 0..n_new {
        let mut rng = derive_rng(seed, class_id as u64, s as u64);
        let member_pos = match centers {
            CenterSelection::RoundRobin => s % members.len(),
            CenterSelection::Uniform => rng.random_range(0..members.len()),
        };
        let center = members[member_pos];
        let neighbor = neighbors.of(member_pos)[rng.random_range(0..k_eff)].index;
        let u: f64 = rng.random();

        let x_center = matrix.row(center);
        let x_neighbor = matrix.row(neighbor);
        let row: Vec<f64> = x_center
            .iter()
            .zip(x_neighbor)
            .map(|(c, n)| c + u * (n - c))
            .collect();
        batch.rows.push(row);
        batch.provenance.push(Provenance {
            center,
            neighbor,
            draw: u,
        });
    }
    Ok(batch)
}

//! Hyper-spheroid oversampling: each synthetic row is drawn inside a ball
//! around a class member, with the radius set by a selected surface point
//! and the ball optionally truncated to a half-ball and deformed toward a
//! hyperplane.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::knn::{knn, CandidateFilter, NeighborTable};
use crate::matrix::{ClassId, FeatureMatrix};
use crate::rng::derive_rng;

use super::{effective_k, CenterSelection, Provenance, ResampleConfig, SurfaceSelection, SyntheticBatch};

/// `n_new` synthetic rows for one class.
///
/// Per row: pick a center `x_c` from the class; pick a surface point `x_s`
/// per the configured selection; let `R = ‖x_s − x_c‖`; draw a point `g`
/// inside the unit ball as `u·(v/‖v‖)` with `v` standard normal and
/// `u ~ Uniform[0, 1)`; reflect `g` across the hyperplane orthogonal to
/// `p = (x_s − x_c)/R` when it falls outside the truncated region; shrink its
/// parallel component by the deformation factor; emit `x_c + R·g`. A zero
/// radius emits `x_c` exactly.
pub fn geometric_smote(
    matrix: &FeatureMatrix,
    class_id: ClassId,
    n_new: usize,
    config: &ResampleConfig,
    seed: u64,
) -> Result<SyntheticBatch> {
    config.validate()?;
    let members = matrix.class_members(class_id);
    if members.is_empty() {
        return Err(Error::ClassTooSmall { class_id, size: 0 });
    }
    let selection = config.gsmote_selection;
    let wants_minority = matches!(
        selection,
        SurfaceSelection::Minority | SurfaceSelection::Combined
    );
    let wants_majority = matches!(
        selection,
        SurfaceSelection::Majority | SurfaceSelection::Combined
    );
    if selection == SurfaceSelection::Minority && members.len() < 2 {
        return Err(Error::ClassTooSmall {
            class_id,
            size: members.len(),
        });
    }
    if wants_majority && members.len() == matrix.n_rows() {
        return Err(Error::NoMajorityAvailable { class_id });
    }
    if n_new == 0 {
        return Ok(SyntheticBatch::empty(class_id));
    }

    // Combined with a single-member class has no minority candidate and
    // falls back to the majority one.
    let minority_table: Option<(usize, NeighborTable)> = if wants_minority && members.len() >= 2 {
        let k_eff = effective_k(config.k, members.len(), class_id);
        Some((
            k_eff,
            knn(
                matrix,
                &members,
                k_eff,
                CandidateFilter::SameClass(class_id),
                true,
            )?,
        ))
    } else {
        None
    };
    let majority_table: Option<NeighborTable> = if wants_majority {
        Some(knn(
            matrix,
            &members,
            1,
            CandidateFilter::OtherClass(class_id),
            false,
        )?)
    } else {
        None
    };

    let d = matrix.n_cols();
    let mut batch = SyntheticBatch::empty(class_id);
    for s in 0..n_new {
        let mut rng = derive_rng(seed, class_id as u64, s as u64);
        let member_pos = match config.center_selection {
            CenterSelection::RoundRobin => s % members.len(),
            CenterSelection::Uniform => rng.random_range(0..members.len()),
        };
        let center = members[member_pos];

        // Surface candidates; in combined mode the nearer one wins, ties to
        // the minority side.
        let minority_candidate = minority_table.as_ref().map(|(k_eff, table)| {
            let choice = rng.random_range(0..*k_eff);
            table.of(member_pos)[choice]
        });
        let majority_candidate = majority_table.as_ref().map(|table| table.of(member_pos)[0]);
        let surface = match (minority_candidate, majority_candidate) {
            (Some(a), Some(b)) => {
                if a.distance <= b.distance {
                    a
                } else {
                    b
                }
            }
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => unreachable!("selection guarantees a candidate"),
        };

        let mut direction = vec![0.0f64; d];
        loop {
            let mut norm_sq = 0.0;
            for g in direction.iter_mut() {
                let value: f64 = rng.sample(StandardNormal);
                *g = value;
                norm_sq += value * value;
            }
            if norm_sq > 0.0 {
                let norm = norm_sq.sqrt();
                for g in direction.iter_mut() {
                    *g /= norm;
                }
                break;
            }
        }
        let u: f64 = rng.random();
        let mut g: Vec<f64> = direction.iter().map(|v| v * u).collect();

        let x_center = matrix.row(center);
        let radius = surface.distance;
        let row = if radius == 0.0 {
            x_center.to_vec()
        } else {
            let x_surface = matrix.row(surface.index);
            let unit_to_surface: Vec<f64> = x_surface
                .iter()
                .zip(x_center)
                .map(|(s, c)| (s - c) / radius)
                .collect();
            let dot: f64 = g.iter().zip(&unit_to_surface).map(|(a, b)| a * b).sum();
            let truncation = config.gsmote_truncation;
            if (truncation > 0.0 && dot < truncation - 1.0)
                || (truncation < 0.0 && dot > truncation + 1.0)
            {
                for (gi, pi) in g.iter_mut().zip(&unit_to_surface) {
                    *gi -= 2.0 * dot * pi;
                }
            }
            let dot: f64 = g.iter().zip(&unit_to_surface).map(|(a, b)| a * b).sum();
            for (gi, pi) in g.iter_mut().zip(&unit_to_surface) {
                *gi -= config.gsmote_deformation * dot * pi;
            }
            x_center
                .iter()
                .zip(&g)
                .map(|(c, gi)| c + radius * gi)
                .collect()
        };

        batch.rows.push(row);
        batch.provenance.push(Provenance {
            center,
            neighbor: surface.index,
            draw: u,
        });
    }
    Ok(batch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knn::euclidean;
    use crate::resample::Algorithm;

    fn config() -> ResampleConfig {
        ResampleConfig::new(Algorithm::GeometricSmote)
    }

    fn cluster() -> FeatureMatrix {
        FeatureMatrix::from_rows(
            &[
                vec![0.0, 0.0, 0.0],
                vec![1.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0],
                vec![5.0, 5.0, 5.0],
                vec![6.0, 5.0, 5.0],
            ],
            &[0, 0, 0, 1, 1],
        )
        .unwrap()
    }

    #[test]
    fn rows_stay_inside_the_radius() {
        let m = cluster();
        let batch = geometric_smote(&m, 0, 40, &config(), 5).unwrap();
        for (row, p) in batch.rows.iter().zip(&batch.provenance) {
            let r = euclidean(m.row(p.center), m.row(p.neighbor));
            let dist = euclidean(row, m.row(p.center));
            assert!(dist <= r * (1.0 + 1e-9), "dist {dist} beyond radius {r}");
        }
    }

    #[test]
    fn full_deformation_collapses_onto_hyperplane() {
        let mut cfg = config();
        cfg.gsmote_deformation = 1.0;
        cfg.gsmote_truncation = 0.0;
        let m = cluster();
        let batch = geometric_smote(&m, 0, 30, &cfg, 9).unwrap();
        for (row, p) in batch.rows.iter().zip(&batch.provenance) {
            let c = m.row(p.center);
            let s = m.row(p.neighbor);
            let dot: f64 = row
                .iter()
                .zip(c)
                .zip(s.iter().zip(c))
                .map(|((x, xc), (sv, sc))| (x - xc) * (sv - sc))
                .sum();
            assert!(dot.abs() <= 1e-9, "parallel component {dot} not zeroed");
        }
    }

    #[test]
    fn zero_radius_duplicates_the_center() {
        let m = FeatureMatrix::from_rows(
            &[vec![2.0, 2.0], vec![2.0, 2.0], vec![7.0, 7.0]],
            &[0, 0, 1],
        )
        .unwrap();
        let mut cfg = config();
        cfg.gsmote_selection = SurfaceSelection::Minority;
        let batch = geometric_smote(&m, 0, 6, &cfg, 1).unwrap();
        for row in &batch.rows {
            assert_eq!(row.as_slice(), &[2.0, 2.0]);
        }
    }

    #[test]
    fn majority_selection_uses_nearest_outsider() {
        let m = FeatureMatrix::from_rows(
            &[vec![0.0, 0.0], vec![3.0, 0.0], vec![0.5, 0.0]],
            &[0, 0, 1],
        )
        .unwrap();
        let mut cfg = config();
        cfg.gsmote_selection = SurfaceSelection::Majority;
        let batch = geometric_smote(&m, 0, 2, &cfg, 2).unwrap();
        // round-robin centers: row 0 then row 1, surface is always row 2
        assert_eq!(batch.provenance[0].center, 0);
        assert_eq!(batch.provenance[0].neighbor, 2);
        assert_eq!(batch.provenance[1].center, 1);
        assert_eq!(batch.provenance[1].neighbor, 2);
    }

    #[test]
    fn minority_selection_needs_two_members() {
        let m = FeatureMatrix::from_rows(&[vec![0.0], vec![1.0]], &[0, 1]).unwrap();
        let mut cfg = config();
        cfg.gsmote_selection = SurfaceSelection::Minority;
        assert!(matches!(
            geometric_smote(&m, 0, 1, &cfg, 0),
            Err(Error::ClassTooSmall { .. })
        ));
    }

    #[test]
    fn majority_selection_needs_an_outsider() {
        let m = FeatureMatrix::from_rows(&[vec![0.0], vec![1.0]], &[0, 0]).unwrap();
        assert!(matches!(
            geometric_smote(&m, 0, 1, &config(), 0),
            Err(Error::NoMajorityAvailable { class_id: 0 })
        ));
    }

    #[test]
    fn combined_single_member_falls_back_to_majority() {
        let m = FeatureMatrix::from_rows(&[vec![0.0], vec![1.0], vec![2.0]], &[0, 1, 1]).unwrap();
        let batch = geometric_smote(&m, 0, 3, &config(), 4).unwrap();
        assert_eq!(batch.len(), 3);
        for p in &batch.provenance {
            assert_eq!(p.neighbor, 1, "nearest outsider sets the radius");
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let m = cluster();
        let a = geometric_smote(&m, 0, 10, &config(), 21).unwrap();
        let b = geometric_smote(&m, 0, 10, &config(), 21).unwrap();
        assert_eq!(a, b);
    }
}

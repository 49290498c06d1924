//! Seeded imbalanced Gaussian-blob datasets for tests and benchmarks, plus a
//! bundled 23-category job-ads class-size profile with a realistic long tail.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::apportion::largest_remainder;
use crate::error::{Error, Result};
use crate::matrix::FeatureMatrix;
use crate::rng::{derive_rng, seeded_rng};

/// One isotropic Gaussian class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlobClass {
    pub center: Vec<f64>,
    pub std_dev: f64,
    pub count: usize,
}

/// A full blob dataset description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlobSpec {
    pub dimension: usize,
    pub seed: u64,
    pub classes: Vec<BlobClass>,
}

impl BlobSpec {
    pub fn validate(&self) -> Result<()> {
        if self.dimension == 0 {
            return Err(Error::InvalidConfig("dimension must be at least 1".into()));
        }
        if self.classes.is_empty() {
            return Err(Error::InvalidConfig("at least one class required".into()));
        }
        for (i, class) in self.classes.iter().enumerate() {
            if class.count == 0 {
                return Err(Error::InvalidConfig(format!("class {i}: count must be >= 1")));
            }
            if !class.std_dev.is_finite() || class.std_dev <= 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "class {i}: std_dev must be > 0"
                )));
            }
            if class.center.len() != self.dimension {
                return Err(Error::InvalidConfig(format!(
                    "class {i}: center has dimension {}, expected {}",
                    class.center.len(),
                    self.dimension
                )));
            }
        }
        Ok(())
    }
}

/// Draws every class from its isotropic Gaussian, rows grouped by class in
/// spec order. Each class uses its own derived stream, so class order and
/// count changes never perturb the other classes.
pub fn make_blobs(spec: &BlobSpec) -> Result<FeatureMatrix> {
    spec.validate()?;
    let mut m = FeatureMatrix::with_dim(spec.dimension)?;
    let mut row = vec![0.0; spec.dimension];
    for (class_id, class) in spec.classes.iter().enumerate() {
        let mut rng = derive_rng(spec.seed, class_id as u64, 0);
        for _ in 0..class.count {
            for (value, center) in row.iter_mut().zip(&class.center) {
                let z: f64 = rng.sample(StandardNormal);
                *value = center + class.std_dev * z;
            }
            m.push_row(&row, class_id)?;
        }
    }
    Ok(m)
}

/// Reference long-tail class sizes of a 23-category job-ads corpus
/// (deduplicated), majority "Sales" down to a 41-instance "Mining" tail.
/// The counts sum to 57,572.
pub const JOB_CATEGORY_PROFILE: [(&str, usize); 23] = [
    ("Sales", 13_002),
    ("Administration", 8_730),
    ("Call center", 8_453),
    ("Technology", 5_559),
    ("Trades", 3_973),
    ("Human Resources", 2_359),
    ("Logistics", 2_206),
    ("Marketing", 1_663),
    ("Health", 1_610),
    ("Gastronomy", 1_343),
    ("Financing", 1_267),
    ("Secretary", 1_236),
    ("Production", 1_129),
    ("Engineering", 881),
    ("Education", 702),
    ("Design", 661),
    ("Legal", 645),
    ("Construction", 622),
    ("Insurance", 573),
    ("Communication", 417),
    ("Management", 272),
    ("Foreign Trade", 228),
    ("Mining", 41),
];

/// Sum of [`JOB_CATEGORY_PROFILE`] counts.
pub const JOB_CATEGORY_TOTAL: usize = 57_572;

/// Smallest total for which every scaled class keeps at least one row.
pub const MIN_PROFILE_TOTAL: usize = 2_300;

/// Scales the 23-class profile to the requested total, largest-remainder
/// rounded so the counts sum to `total` exactly. At the reference total the
/// original counts come back unchanged.
pub fn job_category_profile(total: usize) -> Result<Vec<usize>> {
    if total < MIN_PROFILE_TOTAL {
        return Err(Error::TotalTooSmall {
            total,
            minimum: MIN_PROFILE_TOTAL,
        });
    }
    let weights: Vec<f64> = JOB_CATEGORY_PROFILE
        .iter()
        .map(|(_, count)| *count as f64)
        .collect();
    Ok(largest_remainder(total, &weights))
}

/// A ready-to-sample blob spec with the job-category class sizes: class
/// centers are drawn from `spread * N(0, I)` with a stream of their own, so
/// the layout depends only on the seed.
pub fn job_profile_spec(
    total: usize,
    dimension: usize,
    std_dev: f64,
    center_spread: f64,
    seed: u64,
) -> Result<BlobSpec> {
    let counts = job_category_profile(total)?;
    let mut center_rng = seeded_rng(seed ^ 0x6a6f_6273);
    let classes = counts
        .into_iter()
        .map(|count| BlobClass {
            center: (0..dimension)
                .map(|_| {
                    let z: f64 = center_rng.sample(StandardNormal);
                    center_spread * z
                })
                .collect(),
            std_dev,
            count,
        })
        .collect();
    let spec = BlobSpec {
        dimension,
        seed,
        classes,
    };
    spec.validate()?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn near_degenerate_spread_sits_on_the_center() {
        let spec = BlobSpec {
            dimension: 2,
            seed: 0,
            classes: vec![BlobClass {
                center: vec![1.0, 1.0],
                std_dev: 1e-12,
                count: 3,
            }],
        };
        let m = make_blobs(&spec).unwrap();
        for row in m.rows() {
            assert!((row[0] - 1.0).abs() <= 1e-9);
            assert!((row[1] - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn zero_std_rejected() {
        let spec = BlobSpec {
            dimension: 1,
            seed: 0,
            classes: vec![BlobClass {
                center: vec![0.0],
                std_dev: 0.0,
                count: 1,
            }],
        };
        assert!(matches!(make_blobs(&spec), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn imbalance_shows_in_distribution() {
        let spec = BlobSpec {
            dimension: 2,
            seed: 1,
            classes: vec![
                BlobClass {
                    center: vec![0.0, 0.0],
                    std_dev: 1.0,
                    count: 1000,
                },
                BlobClass {
                    center: vec![5.0, 5.0],
                    std_dev: 1.0,
                    count: 10,
                },
            ],
        };
        let m = make_blobs(&spec).unwrap();
        let counts = m.class_counts();
        let total = m.n_rows() as f64;
        let p0 = 100.0 * counts[0] as f64 / total;
        let p1 = 100.0 * counts[1] as f64 / total;
        assert!((p0 - 99.0099).abs() < 0.001);
        assert!((p1 - 0.9901).abs() < 0.001);
    }

    #[test]
    fn deterministic_given_seed() {
        let spec = BlobSpec {
            dimension: 4,
            seed: 33,
            classes: vec![BlobClass {
                center: vec![0.0; 4],
                std_dev: 2.0,
                count: 25,
            }],
        };
        let a = make_blobs(&spec).unwrap();
        let b = make_blobs(&spec).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn profile_reference_total_is_exact() {
        let counts = job_category_profile(JOB_CATEGORY_TOTAL).unwrap();
        let expected: Vec<usize> = JOB_CATEGORY_PROFILE.iter().map(|(_, c)| *c).collect();
        assert_eq!(counts, expected);
    }

    #[test]
    fn profile_scales_and_sums_exactly() {
        for total in [2_300usize, 5_757, 10_000] {
            let counts = job_category_profile(total).unwrap();
            assert_eq!(counts.len(), 23);
            assert_eq!(counts.iter().sum::<usize>(), total);
            assert!(counts.iter().all(|&c| c >= 1));
        }
    }

    #[test]
    fn profile_tenth_scale_tail() {
        // 5,757 total: the tail class quota is 41 * 5757/57572 ≈ 4.1
        let counts = job_category_profile(5_757).unwrap();
        assert_eq!(*counts.last().unwrap(), 4);
    }

    #[test]
    fn profile_total_too_small() {
        assert!(matches!(
            job_category_profile(2_299),
            Err(Error::TotalTooSmall { .. })
        ));
    }

    #[test]
    fn empirical_means_near_centers() {
        let spec = BlobSpec {
            dimension: 3,
            seed: 17,
            classes: vec![
                BlobClass {
                    center: vec![2.0, -1.0, 0.5],
                    std_dev: 0.7,
                    count: 400,
                },
                BlobClass {
                    center: vec![-3.0, 4.0, 1.0],
                    std_dev: 1.5,
                    count: 900,
                },
            ],
        };
        let m = make_blobs(&spec).unwrap();
        for (class_id, class) in spec.classes.iter().enumerate() {
            let members = m.class_members(class_id);
            let mut mean = [0.0; 3];
            for &i in &members {
                for (acc, v) in mean.iter_mut().zip(m.row(i)) {
                    *acc += v;
                }
            }
            for acc in mean.iter_mut() {
                *acc /= members.len() as f64;
            }
            let dist: f64 = mean
                .iter()
                .zip(&class.center)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            let bound = 5.0 * class.std_dev / (members.len() as f64).sqrt();
            assert!(dist <= bound, "class {class_id}: {dist} > {bound}");
        }
    }
}

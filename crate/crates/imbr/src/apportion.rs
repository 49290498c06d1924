//! Largest-remainder apportionment.
//!
//! Shared by ADASYN's per-instance allocation and the benchmark profile
//! generator; one implementation so both resolve fractional quotas the same
//! way.

/// Splits `total` units proportionally to `weights`, largest remainder first.
///
/// Quotas are `total * w_i / sum(w)`; every entry gets its quota's floor and
/// the leftover units go to the largest fractional remainders, ties to the
/// smaller index. The result always sums to `total` exactly.
///
/// Weights must be nonnegative with a positive sum.
pub fn largest_remainder(total: usize, weights: &[f64]) -> Vec<usize> {
    if weights.is_empty() || total == 0 {
        return vec![0; weights.len()];
    }
    let sum: f64 = weights.iter().sum();
    assert!(
        sum > 0.0 && weights.iter().all(|w| *w >= 0.0),
        "weights must be nonnegative with positive sum"
    );

    let mut counts = Vec::with_capacity(weights.len());
    let mut remainders = Vec::with_capacity(weights.len());
    let mut assigned = 0usize;
    for (i, w) in weights.iter().enumerate() {
        let quota = total as f64 * (w / sum);
        let base = quota.floor() as usize;
        counts.push(base);
        remainders.push((i, quota - base as f64));
        assigned += base;
    }

    remainders.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    let mut leftover = total.saturating_sub(assigned);
    while leftover > 0 {
        for (i, _) in &remainders {
            if leftover == 0 {
                break;
            }
            counts[*i] += 1;
            leftover -= 1;
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_split() {
        assert_eq!(largest_remainder(10, &[1.0, 1.0]), vec![5, 5]);
    }

    #[test]
    fn remainders_go_to_largest_fraction() {
        // quotas 0.5, 0.25, 0.25: the single unit goes to index 0
        assert_eq!(largest_remainder(1, &[2.0, 1.0, 1.0]), vec![1, 0, 0]);
    }

    #[test]
    fn tie_breaks_to_smaller_index() {
        // quotas 1.5, 1.5: one leftover unit, index 0 wins
        assert_eq!(largest_remainder(3, &[1.0, 1.0]), vec![2, 1]);
    }

    #[test]
    fn zero_total() {
        assert_eq!(largest_remainder(0, &[3.0, 1.0]), vec![0, 0]);
    }

    #[test]
    fn sums_to_total() {
        let weights = [0.3, 7.1, 0.0, 2.2, 5.5, 1.9, 0.01];
        for total in [1usize, 13, 97, 1000] {
            let counts = largest_remainder(total, &weights);
            assert_eq!(counts.iter().sum::<usize>(), total);
            assert_eq!(counts[2], 0, "zero weight gets nothing");
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn always_sums_to_total_and_tracks_quotas(
                total in 0usize..5_000,
                weights in proptest::collection::vec(0.0f64..100.0, 1..20),
            ) {
                prop_assume!(weights.iter().sum::<f64>() > 0.0);
                let counts = largest_remainder(total, &weights);
                prop_assert_eq!(counts.iter().sum::<usize>(), total);
                let sum: f64 = weights.iter().sum();
                for (count, w) in counts.iter().zip(&weights) {
                    let quota = total as f64 * w / sum;
                    // floor(q) <= count <= ceil(q): no entry drifts from its quota
                    prop_assert!((*count as f64) >= quota.floor() - 1e-9);
                    prop_assert!((*count as f64) <= quota.ceil() + 1e-9);
                    if *w == 0.0 {
                        prop_assert_eq!(*count, 0);
                    }
                }
            }
        }
    }
}

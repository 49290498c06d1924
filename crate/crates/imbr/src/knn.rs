//! Exact brute-force k-nearest-neighbor search over dense rows.
//!
//! This is the substrate every oversampler stands on. Search is exhaustive:
//! at the row counts this crate targets, exactness and testability beat
//! indexing tricks.

use crate::error::{Error, Result};
use crate::matrix::{ClassId, FeatureMatrix};

/// Which rows may serve as neighbor candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateFilter {
    /// Every row.
    All,
    /// Only rows of this class (SMOTE, minority surface selection).
    SameClass(ClassId),
    /// Only rows outside this class (majority surface selection).
    OtherClass(ClassId),
}

impl CandidateFilter {
    fn admits(&self, label: ClassId) -> bool {
        match *self {
            CandidateFilter::All => true,
            CandidateFilter::SameClass(c) => label == c,
            CandidateFilter::OtherClass(c) => label != c,
        }
    }
}

/// One neighbor of a query row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Neighbor {
    pub index: usize,
    pub distance: f64,
}

/// Ordered neighbor lists, one per query, aligned with the query slice.
#[derive(Debug, Clone)]
pub struct NeighborTable {
    pub queries: Vec<usize>,
    pub neighbors: Vec<Vec<Neighbor>>,
}

impl NeighborTable {
    /// Neighbor list of the query at position `pos` in the query slice.
    pub fn of(&self, pos: usize) -> &[Neighbor] {
        &self.neighbors[pos]
    }
}

/// Euclidean distance between two rows.
pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// The `k` candidates closest to each query row, sorted by
/// `(distance, index)` ascending; ties go to the smaller row index.
///
/// Queries are row indices into `matrix`. `exclude_self` drops the query row
/// itself from its own candidate set.
pub fn knn(
    matrix: &FeatureMatrix,
    queries: &[usize],
    k: usize,
    filter: CandidateFilter,
    exclude_self: bool,
) -> Result<NeighborTable> {
    assert!(k >= 1, "k must be at least 1");
    let mut neighbors = Vec::with_capacity(queries.len());
    let mut candidates: Vec<Neighbor> = Vec::new();

    for &q in queries {
        let query_row = matrix.row(q);
        candidates.clear();
        for i in 0..matrix.n_rows() {
            if exclude_self && i == q {
                continue;
            }
            if !filter.admits(matrix.label(i)) {
                continue;
            }
            candidates.push(Neighbor {
                index: i,
                distance: euclidean(query_row, matrix.row(i)),
            });
        }
        if candidates.len() < k {
            return Err(Error::InsufficientNeighbors {
                query: q,
                eligible: candidates.len(),
                k,
            });
        }
        candidates.select_nth_unstable_by(k - 1, |a, b| {
            a.distance
                .total_cmp(&b.distance)
                .then(a.index.cmp(&b.index))
        });
        let mut top: Vec<Neighbor> = candidates[..k].to_vec();
        top.sort_by(|a, b| {
            a.distance
                .total_cmp(&b.distance)
                .then(a.index.cmp(&b.index))
        });
        neighbors.push(top);
    }

    Ok(NeighborTable {
        queries: queries.to_vec(),
        neighbors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(points: &[[f64; 2]], labels: &[usize]) -> FeatureMatrix {
        let rows: Vec<Vec<f64>> = points.iter().map(|p| p.to_vec()).collect();
        FeatureMatrix::from_rows(&rows, labels).unwrap()
    }

    #[test]
    fn line_of_points() {
        let m = matrix(&[[0.0, 0.0], [1.0, 0.0], [3.0, 0.0]], &[0, 0, 0]);
        let t = knn(&m, &[0], 2, CandidateFilter::All, true).unwrap();
        let n = t.of(0);
        assert_eq!((n[0].index, n[0].distance), (1, 1.0));
        assert_eq!((n[1].index, n[1].distance), (2, 3.0));
    }

    #[test]
    fn duplicate_points_have_zero_distance() {
        let m = matrix(&[[5.0, 5.0], [5.0, 5.0]], &[0, 0]);
        let t = knn(&m, &[0], 1, CandidateFilter::All, true).unwrap();
        assert_eq!((t.of(0)[0].index, t.of(0)[0].distance), (1, 0.0));
    }

    #[test]
    fn tie_breaks_to_smaller_index() {
        let m = matrix(&[[0.0, 1.0], [0.0, -1.0], [0.0, 0.0]], &[0, 0, 0]);
        let t = knn(&m, &[2], 1, CandidateFilter::All, true).unwrap();
        assert_eq!(t.of(0)[0].index, 0);
    }

    #[test]
    fn class_filters() {
        let m = matrix(&[[0.0, 0.0], [0.1, 0.0], [0.2, 0.0]], &[0, 1, 0]);
        let same = knn(&m, &[0], 1, CandidateFilter::SameClass(0), true).unwrap();
        assert_eq!(same.of(0)[0].index, 2);
        let other = knn(&m, &[0], 1, CandidateFilter::OtherClass(0), false).unwrap();
        assert_eq!(other.of(0)[0].index, 1);
    }

    #[test]
    fn insufficient_candidates() {
        let m = matrix(&[[0.0, 0.0], [1.0, 0.0]], &[0, 1]);
        match knn(&m, &[0], 2, CandidateFilter::SameClass(0), true) {
            Err(Error::InsufficientNeighbors { query, eligible, k }) => {
                assert_eq!((query, eligible, k), (0, 0, 2));
            }
            other => panic!("expected InsufficientNeighbors, got {other:?}"),
        }
    }

    #[test]
    fn distance_symmetry() {
        let a = [1.5, -2.25, 0.125];
        let b = [0.5, 3.75, -1.0];
        assert!((euclidean(&a, &b) - euclidean(&b, &a)).abs() <= 1e-12);
    }

    #[test]
    fn invariant_under_row_permutation() {
        let points = [
            [0.0, 0.0],
            [1.5, 0.5],
            [3.0, -1.0],
            [0.25, 2.0],
            [-2.0, 1.0],
        ];
        let m = matrix(&points, &[0; 5]);
        let base = knn(&m, &[0, 3], 3, CandidateFilter::All, true).unwrap();

        // reverse the rows: index i becomes 4 - i
        let reversed: Vec<[f64; 2]> = points.iter().rev().copied().collect();
        let m2 = matrix(&reversed, &[0; 5]);
        let moved = knn(&m2, &[4, 1], 3, CandidateFilter::All, true).unwrap();

        for (a, b) in base.neighbors.iter().zip(&moved.neighbors) {
            for (x, y) in a.iter().zip(b) {
                assert_eq!(4 - x.index, y.index, "relabeled index must match");
                assert_eq!(x.distance.to_bits(), y.distance.to_bits());
            }
        }
    }
}

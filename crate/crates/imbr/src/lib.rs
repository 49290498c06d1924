//! Imbalanced multiclass learning toolkit: synthetic minority oversampling
//! (SMOTE, Geometric-SMOTE, ADASYN) over exact k-nearest-neighbor search,
//! text ingestion and vectorization, class-weighted linear classifiers, and a
//! stratified cross-validation harness that keeps synthetic rows out of the
//! held-out partitions.
//!
//! Every randomized stage takes one seed and derives independent per-sample
//! streams from it, so results are reproducible bit for bit and independent
//! of evaluation order.
//!
//! ```
//! use imbr::matrix::FeatureMatrix;
//! use imbr::resample::{resample_dataset, Algorithm, ResampleConfig};
//!
//! // a 6:2 imbalanced toy dataset
//! let rows = vec![
//!     vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0],
//!     vec![1.0, 1.0], vec![0.5, 0.5], vec![0.2, 0.8],
//!     vec![9.0, 9.0], vec![10.0, 9.5],
//! ];
//! let labels = vec![0, 0, 0, 0, 0, 0, 1, 1];
//! let matrix = FeatureMatrix::from_rows(&rows, &labels)?;
//!
//! let config = ResampleConfig::new(Algorithm::Smote).with_seed(7);
//! let (balanced, provenance) = resample_dataset(&matrix, &config)?;
//! assert_eq!(balanced.class_counts(), vec![6, 6]);
//! assert_eq!(provenance.len(), 4);
//! # Ok::<(), imbr::Error>(())
//! ```
//!
//! The accompanying guide under `book/` walks through each stage; its code
//! samples are compiled and run as part of `cargo test --doc`.

pub mod apportion;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod knn;
pub mod linear;
pub mod matrix;
pub mod resample;
mod rng;
pub mod synth;

pub use error::{Error, Result};
pub use matrix::{ClassId, FeatureMatrix};

// The guide's code samples run as doctests so the book can never drift from
// the library.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            pub struct $name;
        };
    }

    chapter!(Introduction, "../../../book/src/introduction.md");
    chapter!(TextPipeline, "../../../book/src/text-pipeline.md");
    chapter!(NearestNeighbors, "../../../book/src/nearest-neighbors.md");
    chapter!(Smote, "../../../book/src/smote.md");
    chapter!(GeometricSmote, "../../../book/src/geometric-smote.md");
    chapter!(Adasyn, "../../../book/src/adasyn.md");
    chapter!(Classifiers, "../../../book/src/classifiers.md");
    chapter!(Evaluation, "../../../book/src/evaluation.md");
    chapter!(SyntheticData, "../../../book/src/synthetic-data.md");
    chapter!(CommandLine, "../../../book/src/command-line.md");
}

//! Error types shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A structured input file (embedding table, CSV matrix, JSONL corpus,
    /// JSON spec) violated its format. `line` is 1-based.
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    /// No token survived the frequency threshold when building a vocabulary.
    #[error("no token meets the frequency threshold; vocabulary would be empty")]
    EmptyVocabulary,

    /// A document had an empty text field at ingestion time.
    #[error("document {index}: text is empty")]
    EmptyText { index: usize },

    /// A document had an empty label.
    #[error("document {index}: label is empty")]
    EmptyLabel { index: usize },

    /// A query had fewer eligible neighbor candidates than requested.
    #[error("query {query}: only {eligible} eligible candidates for k={k}")]
    InsufficientNeighbors {
        query: usize,
        eligible: usize,
        k: usize,
    },

    /// An oversampler needs at least two members of the class to interpolate.
    #[error("class {class_id} has {size} member(s); need at least 2")]
    ClassTooSmall { class_id: usize, size: usize },

    /// Geometric surface selection needs at least one instance outside the class.
    #[error("class {class_id}: no instance outside the class is available")]
    NoMajorityAvailable { class_id: usize },

    /// ADASYN was asked to oversample the strict majority class.
    #[error("class {class_id} is the majority class; nothing to adapt to")]
    ClassIsMajority { class_id: usize },

    /// An explicit target referenced a class id absent from the data.
    #[error("unknown class {class_id} in explicit targets")]
    UnknownClass { class_id: usize },

    /// Resampling and softmax training need at least two classes.
    #[error("found {found} class(es); need at least 2")]
    NotEnoughClasses { found: usize },

    /// Class-weight computation saw a zero count.
    #[error("class {class_id} has no members; weights are undefined")]
    EmptyClass { class_id: usize },

    /// The training loss left the finite range (learning-rate divergence).
    #[error("non-finite loss at epoch {epoch}, batch {batch}; lower the learning rate")]
    NonFiniteLoss { epoch: usize, batch: usize },

    /// A row's dimension does not match the model or matrix.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// Multinomial features must be nonnegative counts.
    #[error("negative feature value at row {row}, column {column}")]
    NegativeFeature { row: usize, column: usize },

    /// A value that must be finite was NaN or infinite.
    #[error("non-finite value at row {row}")]
    NonFiniteValue { row: usize },

    /// Fewer rows than folds.
    #[error("{rows} row(s) cannot be split into {k} folds")]
    TooFewRows { rows: usize, k: usize },

    /// Paired sequences of different lengths.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// A class id at or above the declared class count.
    #[error("class id {class_id} out of range for {num_classes} classes")]
    ClassOutOfRange {
        class_id: usize,
        num_classes: usize,
    },

    /// Requested profile total too small to give every class at least one row.
    #[error("total {total} below minimum {minimum}")]
    TotalTooSmall { total: usize, minimum: usize },

    /// A configuration value outside its legal range.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code contract: 2 for usage/format errors that a caller
    /// could have avoided up front, 3 for algorithm failures driven by the
    /// data itself.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Format { .. }
            | Error::InvalidConfig(_)
            | Error::UnknownClass { .. }
            | Error::TooFewRows { .. }
            | Error::TotalTooSmall { .. }
            | Error::Io(_) => 2,
            _ => 3,
        }
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

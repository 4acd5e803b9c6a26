use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition {0:?}: parts must be weakly decreasing")]
    InvalidPartition(Vec<i64>),

    #[error("partition {partition:?} does not fit in a {rows}x{cols} box")]
    NotInBox {
        partition: Vec<usize>,
        rows: usize,
        cols: usize,
    },

    #[error("partition {partition:?} has more than {bound} rows")]
    TooManyRows { partition: Vec<usize>, bound: usize },

    #[error("quasi-index {entries:?} violates m[j] >= j - a at position {position}")]
    QuasiIndexBound { entries: Vec<i64>, position: usize },

    #[error("incompatible variable bounds {0:?} and {1:?}")]
    BoundMismatch(Option<usize>, Option<usize>),

    #[error("weight mismatch: expected {expected}, found {found}")]
    WeightMismatch { expected: i64, found: i64 },

    #[error("non-integral coefficient {coeff} on {term}")]
    NonIntegral { coeff: String, term: String },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid category: {0}")]
    InvalidCategory(String),

    #[error("complex too large: {entries} matrix entries exceed the guard of {limit}")]
    SizeGuard { entries: usize, limit: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

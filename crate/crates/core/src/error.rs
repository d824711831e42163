use thiserror::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by the library.
///
/// The CLI maps these onto its exit codes: input problems, predicate
/// failures (`NotJordan`), axiom failures and theorem falsifications each
/// get a distinct code.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partition mismatch between operands")]
    PartitionMismatch,

    #[error("dimension mismatch: expected {expected}, found {found} ({what})")]
    DimensionMismatch {
        expected: usize,
        found: usize,
        what: &'static str,
    },

    #[error("entry ({row},{col}) lies below the block diagonal and must be zero")]
    SupportViolation { row: usize, col: usize },

    #[error("partition has a single block and cannot be split")]
    NotSplittable,

    #[error("map is not a Jordan derivation: {0}")]
    NotJordan(crate::maps::KindWitness),

    #[error("decomposition step `{step}` violated: {detail}")]
    TheoremViolation { step: String, detail: String },

    #[error("bimodule axiom `{axiom}` fails{}", match .pair {
        Some((a, b)) => format!(" at basis pair ({a}, {b})"),
        None => String::new(),
    })]
    AxiomViolation {
        axiom: String,
        pair: Option<(usize, usize)>,
    },

    #[error("cannot parse rational `{0}`: expected `p` or `p/q` with q > 0")]
    ParseRational(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

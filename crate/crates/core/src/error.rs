use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: dimension mismatch between {left:?} and {right:?} (cod × dom)")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("{what}: size {size} exceeds limit {limit}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("invalid duality: snake residual {residual}")]
    InvalidDuality { residual: f64 },

    #[error("{op}: {detail}")]
    Shape { op: &'static str, detail: String },

    #[error("laws fail: {0}")]
    LawFailure(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("degenerate structure: {0}")]
    Degenerate(String),

    #[error("vector is not a basis vector of the context")]
    NotCopyable,

    #[error("table is not a permutation: {0}")]
    NotAPermutation(String),

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("invalid bit function: {0}")]
    InvalidBitFn(String),

    #[error("state has no support")]
    EmptyState,

    #[error("not a measurement: {0}")]
    NotAMeasurement(String),

    #[error("invalid input: field `{field}`: {detail}")]
    Input { field: String, detail: String },
}

impl Error {
    pub(crate) fn shape(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Shape {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn input(field: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Input {
            field: field.into(),
            detail: detail.into(),
        }
    }
}

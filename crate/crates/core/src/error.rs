use thiserror::Error;

/// Errors raised by field arithmetic, code construction and distance search.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("operands belong to different fields ({0} vs {1})")]
    FieldMismatch(String, String),

    #[error("GF({q}) has no element of order {order}: {order} does not divide {q}-1")]
    UnsupportedOrder { order: u64, q: u64 },

    #[error("{what} of size {size} exceeds the limit {limit}")]
    SizeGuard {
        what: &'static str,
        size: u64,
        limit: u64,
    },

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("row {0} of the generator matrix is zero")]
    ZeroRow(usize),

    #[error("matrix has rank {rank} over the rational function field, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error("precondition `{name}` violated: {detail}")]
    Precondition { name: &'static str, detail: String },

    #[error("rank condition violated by slice {slice}: {detail}")]
    RankCondition { slice: usize, detail: String },

    #[error("{what} needs {needed} steps, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u64,
        budget: u64,
    },

    #[error("no codeword of weight at most {weight_cap} found within the search caps")]
    NoWitness { weight_cap: usize },

    #[error("record has provenance {found}, expected {expected}")]
    WrongProvenance {
        expected: &'static str,
        found: String,
    },

    #[error("cannot read or write {path}: {msg}")]
    Io { path: String, msg: String },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn precondition(name: &'static str, detail: impl Into<String>) -> Self {
        Error::Precondition {
            name,
            detail: detail.into(),
        }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

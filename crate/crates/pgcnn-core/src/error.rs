use thiserror::Error;

/// Errors produced by group construction, algebra operations, and budgets.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group size must be at least 1")]
    EmptyGroup,

    #[error("{what} of size {requested} exceeds the supported limit {limit}")]
    SizeLimit {
        what: &'static str,
        requested: u128,
        limit: u128,
    },

    #[error("budget exceeded: {what} would need {requested} (budget {budget})")]
    Budget {
        what: &'static str,
        requested: u128,
        budget: u128,
    },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("operands live on different groups")]
    GroupMismatch,

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("filter domain is not a power group")]
    NotPowerGroup,

    #[error("scalar must be nonzero")]
    ZeroScalar,

    #[error("invalid configuration: {0}")]
    Config(String),
}

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series is zero to its truncation and cannot be inverted")]
    NotInvertible,
    #[error("operation on an exact non-monomial needs an explicit truncation")]
    UnboundedPrecision,
    #[error("fractional power needs valuation 0 and constant term 1")]
    BranchAmbiguity,
    #[error("substituted series must have positive valuation (got {0})")]
    BadSubstitution(i64),
    #[error("outer series must be a power series (valuation {0} < 0)")]
    NegativeValuation(i64),
    #[error("insufficient precision: need truncation {needed}, have {available}")]
    InsufficientPrecision { needed: i64, available: i64 },
    #[error("missing table entry {0}")]
    MissingEntry(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, SeriesError>;

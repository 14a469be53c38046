use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unknown atom {name:?}; valid atoms: {valid}")]
    UnknownAtom { name: String, valid: String },
    #[error("unknown inequality id {0:?}")]
    UnknownId(String),
    #[error("index {index} is below the start index {start} of sequence {seq}")]
    BelowStart { seq: char, index: u32, start: u32 },
    #[error("{0}")]
    Parity(String),
    #[error("series has zero constant term; reciprocal undefined")]
    ZeroConstantTerm,
    #[error("division by an interval containing zero")]
    DivisionByZero,
    #[error("comparison still indeterminate at pi precision floor 1e-{0}")]
    Indeterminate(u32),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

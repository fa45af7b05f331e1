//! Error type shared by every module.

use thiserror::Error;

/// Errors raised by ring construction, arithmetic and the verification layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(u32, u32),
    #[error("division by an element that is zero at the working precision")]
    DivisionByZero,
    #[error("element is not a unit")]
    NotUnit,
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("hensel lifting failed: {0}")]
    Hensel(String),
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("missing family member: {0}")]
    MissingMember(String),
    #[error("indivisible: {0}")]
    Indivisible(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

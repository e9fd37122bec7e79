//! Error type shared by the whole pipeline.
//!
//! Every failure mode carries a stable machine-readable code (`Error::code`)
//! and a distinct process exit code (`Error::exit_code`) so that callers can
//! dispatch without parsing messages.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("input polynomial is zero")]
    ZeroInput,

    #[error("arity mismatch: expected {expected} variables, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("invalid weights: {0}")]
    BadWeights(String),

    #[error("ideal is not zero-dimensional: no pure power of variable {var} among leading terms")]
    NonZeroDimensional { var: usize },

    #[error("not strongly tame: Sing(g) != {{0}}; variable {var} has no pure-power leading term in Jacob(g)")]
    NotTame { var: usize },

    #[error("b = {0} is a critical value (root of S)")]
    CriticalValue(String),

    #[error("exceptional value b = {b}: d_beta sum {got} != (d-1)*mu = {expected}")]
    ExceptionalValue {
        b: String,
        got: usize,
        expected: usize,
    },

    #[error("fiber dimension n = {0} is odd; Hodge-cycle criterion needs n even")]
    OddDimension(usize),

    #[error("dimension mismatch in Hodge basis at (weight {weight}, k {k}): basis has {got}, expected {expected}")]
    DimensionMismatch {
        weight: usize,
        k: u32,
        got: usize,
        expected: usize,
    },

    #[error("denominator survived in H' reduction at coordinate {index}: {value}")]
    DenominatorSurvived { index: usize, value: String },

    #[error("remainder is nonzero: S does not annihilate modulo the Jacobian ideal")]
    NonzeroRemainder,

    #[error("input is not a sum of univariate polynomials")]
    NonSeparable,

    #[error("computation cancelled")]
    Cancelled,

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroInput => "zero-input",
            Error::ArityMismatch { .. } => "arity-mismatch",
            Error::ZeroDenominator => "zero-denominator",
            Error::BadWeights(_) => "bad-weights",
            Error::NonZeroDimensional { .. } => "non-zero-dimensional",
            Error::NotTame { .. } => "not-tame",
            Error::CriticalValue(_) => "critical-value",
            Error::ExceptionalValue { .. } => "exceptional-value",
            Error::OddDimension(_) => "odd-dimension",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::DenominatorSurvived { .. } => "denominator-survived",
            Error::NonzeroRemainder => "nonzero-remainder",
            Error::NonSeparable => "non-separable",
            Error::Cancelled => "cancelled",
            Error::Parse { .. } => "parse-error",
            Error::Internal(_) => "internal",
        }
    }

    /// Process exit code; 0 is reserved for success.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::NotTame { .. } | Error::NonZeroDimensional { .. } => 3,
            Error::CriticalValue(_) => 4,
            Error::ExceptionalValue { .. } => 5,
            Error::OddDimension(_) => 6,
            Error::ZeroInput
            | Error::ArityMismatch { .. }
            | Error::ZeroDenominator
            | Error::BadWeights(_)
            | Error::NonSeparable => 7,
            Error::Cancelled => 8,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A square root or twiddle was requested beyond the precomputed table.
    #[error("root table exhausted: level {level} requested, table depth is {depth_max}")]
    RootTableExhausted { level: u32, depth_max: u32 },

    #[error("unsupported transform size: {0}")]
    UnsupportedTransformSize(String),

    #[error("invalid root exponent: index {index} is not below 2^{level}")]
    InvalidExponent { level: u32, index: u64 },

    #[error("Fermat ring parameter mismatch: K = {left} vs K = {right}")]
    FermatMismatch { left: u32, right: u32 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("coefficient bound {bound} exceeds exact range {limit}")]
    CoefficientOverflow { bound: String, limit: String },

    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Location-tagged parse diagnostic. Lines and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

use std::fmt;

/// Errors produced anywhere in the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A signed 64-bit addition or subtraction left the representable range.
    #[error("arithmetic overflow in 64-bit integer computation")]
    Overflow,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index ({row}, {col}) out of range for a {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    /// A matrix or index whose structure violates a documented invariant.
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    /// A Monge-only algorithm observed a negative density entry.
    #[error("input is not Monge: {0}")]
    NotMonge(String),

    #[error("not a permutation: {0}")]
    NotPermutation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn dims(msg: impl fmt::Display) -> Self {
        Error::DimensionMismatch(msg.to_string())
    }

    pub(crate) fn invalid(msg: impl fmt::Display) -> Self {
        Error::InvalidMatrix(msg.to_string())
    }

    pub(crate) fn parse(line: usize, msg: impl fmt::Display) -> Self {
        Error::Parse {
            line,
            msg: msg.to_string(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[inline]
pub(crate) fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or_else(|| Error::Overflow)
}

#[inline]
pub(crate) fn sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or_else(|| Error::Overflow)
}

/// `upper_right + lower_left - upper_left - lower_right`, the mixed second
/// difference of a 2x2 block.
#[inline]
pub(crate) fn mixed_difference(
    upper_left: i64,
    upper_right: i64,
    lower_left: i64,
    lower_right: i64,
) -> Result<i64> {
    sub(sub(add(upper_right, lower_left)?, upper_left)?, lower_right)
}

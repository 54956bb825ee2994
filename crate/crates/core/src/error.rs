use std::fmt;

/// Matrix axis, used to phrase contraction errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Column,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Row => f.write_str("row"),
            Axis::Column => f.write_str("column"),
        }
    }
}

/// Errors raised by builders, engines and parsers. Indices in messages are 1-based.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("empty matrix family: n must be at least 1")]
    EmptyFamily,

    #[error("invalid matrix shape: {0}")]
    Shape(String),

    #[error("dimension mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("contraction needs at least a 2x2 matrix, got {rows}x{cols}")]
    TooSmallToContract { rows: usize, cols: usize },

    #[error("{axis} index {index} out of range 1..={len}")]
    IndexOutOfRange {
        axis: Axis,
        index: usize,
        len: usize,
    },

    #[error(
        "not contractible on {axis} {index}: found {nonzeros} nonzero entries, need exactly 2"
    )]
    NotContractible {
        axis: Axis,
        index: usize,
        nonzeros: usize,
    },

    #[error("{engine} permanent refused: n = {n} exceeds the cap of {cap}")]
    OverCap {
        engine: &'static str,
        n: usize,
        cap: usize,
    },

    #[error(
        "contraction invariance requires nonnegative matrix (entry ({row},{col}) is negative)"
    )]
    NegativeEntry { row: usize, col: usize },

    #[error("stuck: no contractible column in {size}x{size} matrix")]
    Stuck { size: usize },

    #[error("inverted bounds: from = {from} is greater than to = {to}")]
    InvertedRange { from: u64, to: u64 },

    #[error("index out of domain: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

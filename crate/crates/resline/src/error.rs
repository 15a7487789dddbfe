//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("lambda must be nonzero")]
    ZeroLambda,

    #[error("division by zero")]
    DivisionByZero,

    #[error("leading coefficient of x0 must be nonzero (outside the general-position stratum)")]
    ZeroLeadingCoefficient,

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquareMatrix { rows: usize, cols: usize },

    #[error("one-form is not closed: d c_{i}/d x_{j} != d c_{j}/d x_{i}")]
    NotClosed { i: usize, j: usize },

    #[error("composition requires ord(g) >= 1, got {ord}")]
    CompositionOrder { ord: i64 },

    #[error("fractional power needs leading coefficient 1, or an integral total exponent")]
    FractionalPower,

    #[error("precision window [{ord}, {prec}) excludes required exponent {needed}")]
    PrecisionWindow { ord: i64, prec: i64, needed: i64 },

    #[error("exact division failed: {0}")]
    InexactDivision(String),

    #[error("index {index} out of range [{lo}, {hi}]")]
    IndexOutOfRange { index: i64, lo: i64, hi: i64 },

    #[error("incompatible moduli: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("incompatible weights: lambda + lambda' must be -1 and mu + mu' an integer")]
    IncompatiblePairing,

    #[error("{0}")]
    Unsupported(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

use thiserror::Error;

use crate::subset::Subset;

/// Errors raised by the library.
///
/// `SizeCap` is kept separate from the other variants so front ends can
/// distinguish a refusal to start exponential work from malformed input.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("universe of size {n} exceeds the cap of {cap} for {operation}")]
    SizeCap {
        operation: &'static str,
        n: usize,
        cap: usize,
    },
    #[error("universe size mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("invalid metric: {0}")]
    InvalidMetric(String),
    #[error("duplicate points {0} and {1} (zero distance)")]
    DuplicatePoints(String, String),
    #[error("not an ultrametric: strong triangle inequality fails at ({0}, {1}, {2})")]
    NotUltrametric(usize, usize, usize),
    #[error("function is not maximum-submodular: violated at X={x:?}, Y={y:?}")]
    NotMaximumSubmodular { x: Subset, y: Subset },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("invalid subset family: {0}")]
    InvalidFamily(String),
    #[error("invalid dendogram: {0}")]
    InvalidDendogram(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_cap(operation: &'static str, n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::SizeCap { operation, n, cap })
    } else {
        Ok(())
    }
}

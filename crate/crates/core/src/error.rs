use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("dimension must be at least 2, got {0}")]
    Dimension(usize),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error(
        "quadrature of exactness {degree} in d={d} needs {required} nodes, above the budget of {budget}"
    )]
    NodeBudget {
        d: usize,
        degree: usize,
        required: u128,
        budget: usize,
    },
    #[error("point with |x| = {radius} lies outside the shell [{inner}, {outer}]")]
    OutsideShell { radius: f64, inner: f64, outer: f64 },
    #[error("singular linear system: {0}")]
    Singular(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("boundary data: {0}")]
    BoundaryData(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        Err(Error::Dimension(d))
    } else {
        Ok(())
    }
}

pub(crate) fn check_same_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        Err(Error::DimensionMismatch { expected, found })
    } else {
        Ok(())
    }
}

use thiserror::Error;

/// Errors raised by the symbol calculus.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected n = {expected}, found n = {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("form degree mismatch: expected p = {expected}, found p = {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("degenerate grade: k + p = 0 has no A/B splitting")]
    DegenerateGrade,

    #[error("order of the zero operator is undefined")]
    UndefinedOrder,

    #[error("symbol is not homogeneous in xi: {0}")]
    MixedDegree(String),

    #[error("inconsistent basis: {0}")]
    InconsistentBasis(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

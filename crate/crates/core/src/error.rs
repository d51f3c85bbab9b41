use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("degenerate quadratic form: {0}")]
    DegenerateForm(String),

    #[error("lattice is not certified: {0}")]
    Uncertified(String),

    /// The finite-enumeration argument needs `d >= 5`, `r >= 2` and a
    /// positive discriminant.
    #[error("enumeration does not terminate for these parameters: {0}")]
    NonTerminating(String),

    #[error("hypotheses violated: {0}")]
    HypothesisViolation(String),

    /// A value guaranteed by the gonality theorem was contradicted by the
    /// exhaustive computation.
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("i/o: {0}")]
    Io(String),
}

use thiserror::Error;

/// Errors raised by the algebra and geometry routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("composition error: {0}")]
    Composition(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("not transversal: eigenvalues {i} and {j} coincide")]
    NotTransversal { i: usize, j: usize },

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// An identity that must hold by construction did not.
    #[error("internal invariant failure: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

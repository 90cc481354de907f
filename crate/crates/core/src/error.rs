use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("jet group element must be based at the origin")]
    NonOriginBase,

    #[error("singular first-order part")]
    Singular,

    #[error("vanishing first derivative")]
    VanishingDerivative,

    #[error("malformed jet: {0}")]
    Malformed(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("algebra error: {0}")]
    Algebra(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

use crate::scalars::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("basis index {index} out of range for dimension {dim}")]
    InvalidBasis { index: usize, dim: usize },
    #[error("structural error: {0}")]
    Structural(String),
    #[error("normalization impossible: {0}")]
    NotFactorizable(String),
    #[error("ribbon data inconsistent: {0}")]
    RibbonInconsistent(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("term budget exceeded: {needed} terms needed, limit {limit}")]
    Budget { limit: usize, needed: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("axiom check failed: {0}")]
    Axioms(String),
}

pub type Result<T> = std::result::Result<T, Error>;

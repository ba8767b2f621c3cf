use crate::scalar::Field;

/// Errors surfaced by the exact-arithmetic layers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("division by a non-invertible element ({0})")]
    NotInvertible(String),
    #[error("matrix is singular")]
    Singular,
    #[error("{0} requires a finite field, got {1}")]
    FiniteFieldRequired(&'static str, Field),
    #[error("annihilator is zero; nothing to decompose")]
    ZeroAnnihilator,
    #[error("no lift exists: {0}")]
    NoLift(String),
    #[error("not an automorphism of the given algebra")]
    NotAutomorphism,
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("unknown catalog entry: {0}")]
    UnknownEntry(String),
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

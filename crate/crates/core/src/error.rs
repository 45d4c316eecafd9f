use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank {rank} is out of range for type {ty} (allowed {min}..={max})")]
    RankOutOfRange {
        ty: char,
        rank: usize,
        min: usize,
        max: usize,
    },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("not a root of the system: {0}")]
    NotARoot(String),
    #[error("{0} is not a minimal coset representative")]
    NotMinimal(String),
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("curve degree {0} is not effective")]
    NotEffective(String),
}

pub type Result<T> = std::result::Result<T, Error>;

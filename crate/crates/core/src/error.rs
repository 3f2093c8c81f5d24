use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("field mismatch: d = {0} vs d = {1}")]
    FieldMismatch(i64, i64),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("generator search exhausted for ideal {0}")]
    GeneratorSearchExceeded(String),
    #[error("y-quadratic has no root in O_E")]
    NotRM,
    #[error("Weil bounds violated: {0}")]
    WeilBoundViolated(String),
    #[error("quartic is reducible over Q")]
    ReducibleQuartic,
    #[error("discriminant is zero; use the scalar path")]
    DiscZero,
    #[error("no u satisfies the basis conditions modulo {0}")]
    NoWitness(String),
    #[error("non-integral matrix entry: {0}")]
    NonIntegralEntry(String),
    #[error("ideal is not prime to p = {0}")]
    NotPrimeToP(u64),
    #[error("embedding failed: {0}")]
    EmbeddingFailed(String),
    #[error("point enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("bad curve model: {0}")]
    BadModel(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

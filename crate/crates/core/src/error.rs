use thiserror::Error;

/// Every failure the library reports to callers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum AodeError {
    #[error("dimension error: component of dimension {dimension} (expected at most 1)")]
    DimensionError { dimension: usize },
    #[error("trivial system: only constant solutions")]
    TrivialSystem,
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("autonomy error at line {line}, column {col}: the independent variable may not appear")]
    Autonomy { line: usize, col: usize },
    #[error("derivative order {order} exceeds the limit {limit}")]
    OrderLimit { order: usize, limit: usize },
    #[error("factorization limit: degree {degree} exceeds bound {bound}")]
    FactorizationLimit { degree: usize, bound: usize },
    #[error("extension tower limit: {0}")]
    ExtensionTowerLimit(String),
    #[error("constant polynomial has no leading variable")]
    ConstantPolynomial,
    #[error("not a differential system: {0}")]
    NotDifferential(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl AodeError {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            AodeError::DimensionError { .. } => 2,
            AodeError::Parse { .. } | AodeError::Autonomy { .. } | AodeError::OrderLimit { .. } => 3,
            AodeError::FactorizationLimit { .. } | AodeError::ExtensionTowerLimit(_) => 4,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, AodeError>;

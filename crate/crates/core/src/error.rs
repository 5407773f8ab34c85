use thiserror::Error;

/// Errors raised by the algebraic layer and the verification driver.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },

    #[error("expected an element of degree {expected}, found {found}")]
    WrongDegree { expected: String, found: String },

    #[error("metric is not invertible")]
    SingularMetric,

    #[error("metric is not symmetric")]
    AsymmetricMetric,

    #[error("|det eta| is not the square of a rational")]
    NonSquareDeterminant,

    #[error("element does not lie in the subcomplex F_c")]
    NotInFc,

    #[error("slot mismatch: {0}")]
    SlotMismatch(String),

    #[error("could not parse rational {0:?}")]
    ParseRational(String),

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),

    #[error("unknown relation {0:?}")]
    UnknownRelation(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;

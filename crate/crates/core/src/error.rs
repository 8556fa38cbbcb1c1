use thiserror::Error;

use crate::wd::Violation;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid coefficient field: {0}")]
    InvalidField(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("root moduli could not be certified to width {eps}")]
    CertificationFailed { eps: String },

    #[error("tensor space {n}^{d} exceeds the resource cap {cap}")]
    ResourceCap { n: usize, d: usize, cap: usize },

    #[error("invalid Weil-Deligne representation: {0}")]
    Validation(Violation),

    #[error("residue field sizes differ: {0} vs {1}")]
    MismatchedQ(u64, u64),

    #[error("coefficient fields differ: {0} vs {1}")]
    MismatchedField(String, String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("Sp_t requires zero monodromy")]
    NonzeroMonodromy,

    #[error("operator is not nilpotent")]
    NotNilpotent,

    #[error("inferred weight {0} is not an integer")]
    NonIntegralWeight(String),

    #[error("purity is a property of specializations; coefficient field {0} is not allowed")]
    PurityOverFunctionField(String),

    #[error("a denominator vanishes at t = {0}")]
    DenominatorVanishes(String),

    #[error("Frobenius is singular at t = {0}")]
    SingularFrobenius(String),

    #[error("inertia labels differ: {0}")]
    InertiaLabelMismatch(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

impl Error {
    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

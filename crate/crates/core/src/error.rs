use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("singular matrix: determinant {det} vanishes identically")]
    SingularMatrix { det: String },

    #[error("level {level}: factorization leaves non-linear remainder {remainder}")]
    IncompleteFactorization { level: usize, remainder: String },

    #[error("Casimir solve for weight {weight} at level {level} is singular at C = {charge}")]
    SingularSolve {
        weight: String,
        level: usize,
        charge: String,
    },

    #[error("inconsistent system: {0}")]
    InconsistentSystem(String),

    #[error("unsupported weight {0}; expected 1, 2 or 3")]
    UnsupportedWeight(String),

    #[error("bound derivation failed for denominator {0}")]
    BoundDerivationFailure(String),

    #[error("audit failure at {cell}: expected {expected}, computed {computed}")]
    AuditFailure {
        cell: String,
        expected: String,
        computed: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

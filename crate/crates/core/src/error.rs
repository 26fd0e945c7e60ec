use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vector must be nonzero")]
    ZeroVector,
    #[error("linear system has no solution")]
    NoSolution,
    #[error("source subspace must be nonempty")]
    EmptySubspace,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,
    #[error("interpolation node listed more than once")]
    DuplicateNode,
    #[error("interpolation node needs {expected} derivative values, got {found}")]
    DerivativeCount { expected: usize, found: usize },
    #[error("operator has eigenvalue 1; use the general completeness test")]
    EigenvalueOnePresent,
    #[error("observational set is not complete for the source space")]
    NotComplete,
    #[error("no single observational vector can recover this source direction")]
    NotRecoverable,
    #[error("supplied eigenvalue factorization does not match the minimal polynomial")]
    BadFactorization,
    #[error("sensor {sensor} has {found} samples, recovery needs {needed}")]
    InsufficientSamples {
        sensor: usize,
        needed: usize,
        found: usize,
    },
    #[error("sensor is orthogonal to the source direction")]
    OrthogonalSensor,
    #[error("vector is not an eigenvector for the stated eigenvalue")]
    NotAnEigenvector,
    #[error("recursive and closed-form simulation disagree at step {step}")]
    SimulationMismatch { step: usize },
    #[error("invalid tolerance profile: {0}")]
    Tolerance(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use num_complex::Complex64;
use thiserror::Error;

/// Error type shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree must be at least 3, got {0}")]
    InvalidDegree(usize),
    #[error("coefficient vector must have {expected} entries, got {got}")]
    BadCoeffCount { expected: usize, got: usize },
    #[error("zero base with non-positive exponent")]
    SingularInput,
    #[error("order {0} out of range for this operation")]
    UnsupportedOrder(usize),
    #[error("series orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("series must have zero constant term for a binomial power")]
    NonzeroConstantTerm,
    #[error("quadrature did not converge: error estimate {achieved:e} exceeds {requested:e}")]
    QuadratureFailure { achieved: f64, requested: f64 },
    #[error("integrand winds across the branch cut; increase |lambda| or move arg(lambda) away from +-pi")]
    BranchCutCrossing,
    #[error("start radius {0} is too small for the requested seed accuracy")]
    SeedAccuracy(f64),
    #[error("ODE step size underflow at path parameter {0}")]
    Stiffness(f64),
    #[error("root search did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("converged onto an already accepted root near {0}")]
    DuplicateRoot(Complex64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("odd degree where an even-degree form is required")]
    OddDegree,
    #[error("form is not positive semidefinite")]
    NotPsd,
    #[error("quadratic is not positive definite")]
    NotPositiveDefinite,
    #[error("form is not strictly positive (min on sphere ≈ {0:.3e})")]
    NotStrictlyPositive(f64),
    #[error("genericity condition {condition} holds: {detail}")]
    Genericity { condition: String, detail: String },
    #[error("exact arithmetic unavailable here: {0}")]
    ExactUnavailable(String),
    #[error("ambiguous float clustering: {0}")]
    AmbiguousClustering(String),
    #[error("division residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    DivisionResidual { residual: f64, tol: f64 },
    #[error("path tracking failed: {0}")]
    Tracking(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("malformed input: {0}")]
    Shape(String),
}

pub type Result<T> = std::result::Result<T, Error>;

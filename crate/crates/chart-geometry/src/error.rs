use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("derivative order {order} is not supported (max {max})")]
    UnsupportedOrder { order: usize, max: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("metric is not invertible at the evaluation point (|det| = {det:e})")]
    NonInvertibleMetric { det: f64 },
    #[error("determinant is not positive at the evaluation point ({det:e})")]
    NonPositiveDeterminant { det: f64 },
    #[error("matrix is not positive definite (min eigenvalue {min_eig:e})")]
    NotPositive { min_eig: f64 },
    #[error("identity {identity} requires {requirement}")]
    Precondition { identity: String, requirement: String },
}

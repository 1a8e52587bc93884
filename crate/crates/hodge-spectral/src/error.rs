use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HodgeError {
    #[error("expected {expected} components, found {found}")]
    ComponentCount { expected: usize, found: usize },
    #[error("Fourier mode {mode:?} is not resolved by the grid")]
    Unresolved { mode: Vec<i32> },
    #[error("operator acts on ({ep},{eq})-forms, got a ({p},{q})-form")]
    Bidegree { ep: usize, eq: usize, p: usize, q: usize },
    #[error("right-hand side has a kernel component of relative size {relative:e} (tolerance {tol:e})")]
    IllPosedRhs { relative: f64, tol: f64 },
    #[error("metric segment is not positive at t = {t} (min eigenvalue {min_eig:e})")]
    SegmentNotPositive { t: f64, min_eig: f64 },
    #[error("metric is not positive at a grid point (min eigenvalue {min_eig:e})")]
    NotPositive { min_eig: f64 },
    #[error("characteristic data incompatible: Tr R∧R − Tr F∧F has kernel component {relative:e}")]
    Incompatible { relative: f64 },
    #[error("(2,2)-form is not positive: {reason}")]
    PsiNotPositive { reason: String },
    #[error(transparent)]
    Geometry(#[from] chart_geometry::GeometryError),
}

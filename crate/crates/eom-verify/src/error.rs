use chart_geometry::GeometryError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EomError {
    #[error("metric is not conformally balanced: d(|Ω|ω²) = {residual:e} > {tol:e} at {point:?}")]
    NotBalanced { residual: f64, tol: f64, point: Vec<f64> },
    #[error("no evaluation points")]
    NoPoints,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

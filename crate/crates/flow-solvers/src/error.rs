use chart_geometry::GeometryError;
use geometry_scenarios::LieError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FlowError {
    #[error("invalid stepper configuration: {0}")]
    Config(String),
    #[error("invalid flow state: {0}")]
    State(String),
    #[error("invalid scenario: {0}")]
    Scenario(String),
    #[error("cannot resume from checkpoint: {0}")]
    Resume(String),
    #[error("blow-up at t = {time}: value {value:e} at {location:?}")]
    Blowup { time: f64, value: f64, location: Option<Vec<f64>> },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

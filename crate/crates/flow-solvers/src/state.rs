use crate::error::FlowError;
use crate::torus::Torus;
use chart_geometry::FourierScalarField;
use hodge_spectral::Grid;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlowKind {
    Surface,
    FuYau,
    Iwasawa,
    Lie,
}

impl FlowKind {
    pub fn real_dims(self) -> usize {
        match self {
            FlowKind::Surface => 2,
            FlowKind::FuYau | FlowKind::Iwasawa => 4,
            FlowKind::Lie => 0,
        }
    }
}

/// Torus flows store the coefficients of `e^field` (the quantity the
/// reduced equations evolve); [`FlowState::field`] returns the field itself.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowState {
    pub kind: FlowKind,
    pub grid: Option<Grid>,
    pub coeffs: Vec<C64>,
    pub rho: Option<f64>,
    pub time: f64,
    pub step_count: u64,
}

impl FlowState {
    pub fn from_field(kind: FlowKind, torus: &Torus, field: &FourierScalarField) -> Result<Self, FlowError> {
        let vals: Vec<f64> = torus.sample(field).iter().map(|v| v.exp()).collect();
        Self::from_exp_values(kind, torus, &vals)
    }

    pub fn from_exp_values(kind: FlowKind, torus: &Torus, vals: &[f64]) -> Result<Self, FlowError> {
        if kind == FlowKind::Lie || torus.real_dims != kind.real_dims() {
            return Err(FlowError::State(format!("{kind:?} flow on a {}-torus", torus.real_dims)));
        }
        let s = FlowState { kind, grid: Some(torus.grid), coeffs: torus.coeffs(vals), rho: None, time: 0.0, step_count: 0 };
        s.validate()?;
        Ok(s)
    }

    pub fn lie(rho: f64) -> Result<Self, FlowError> {
        let s = FlowState { kind: FlowKind::Lie, grid: None, coeffs: Vec::new(), rho: Some(rho), time: 0.0, step_count: 0 };
        s.validate()?;
        Ok(s)
    }

    pub fn torus(&self) -> Option<Torus> {
        self.grid.map(|g| Torus::from_grid(g, self.kind.real_dims()))
    }

    /// Grid values of `e^field`.
    pub fn exp_values(&self) -> Vec<f64> {
        match self.torus() {
            Some(t) => t.values(&self.coeffs),
            None => Vec::new(),
        }
    }

    /// `f` (surface) or `u` (torus flows) as a Fourier field.
    pub fn field(&self) -> Option<FourierScalarField> {
        let t = self.torus()?;
        let logs: Vec<f64> = self.exp_values().iter().map(|v| v.ln()).collect();
        Some(t.to_field(&t.coeffs(&logs), 0.0))
    }

    pub fn validate(&self) -> Result<(), FlowError> {
        if !(self.time >= 0.0) {
            return Err(FlowError::State(format!("time {} is negative", self.time)));
        }
        match self.kind {
            FlowKind::Lie => match self.rho {
                Some(r) if r > 0.0 && r.is_finite() => Ok(()),
                r => Err(FlowError::State(format!("frame scale must be positive, got {r:?}"))),
            },
            _ => {
                let t = self.torus().ok_or_else(|| FlowError::State("torus flow without a grid".into()))?;
                if self.coeffs.len() != t.len() {
                    return Err(FlowError::State(format!("{} coefficients on a grid of {}", self.coeffs.len(), t.len())));
                }
                let vals = self.exp_values();
                match vals.iter().position(|v| !(*v > 0.0 && v.is_finite())) {
                    Some(i) => Err(FlowError::State(format!(
                        "e^field = {} at {:?} is not positive",
                        vals[i],
                        t.point(i)
                    ))),
                    None => Ok(()),
                }
            }
        }
    }
}

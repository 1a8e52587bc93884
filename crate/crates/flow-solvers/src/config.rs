use crate::error::FlowError;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Classical explicit Runge–Kutta on the logarithm of the evolved scalar.
    Rk4,
    /// Laplacian as an implicit Fourier multiplier, remainder explicit.
    Imex,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepperConfig {
    pub scheme: Scheme,
    /// Step size, or the largest step when `cfl` is set.
    pub dt: f64,
    /// Adaptive steps: no grid value may change by more than this fraction
    /// of itself (estimated from the current rate).
    #[serde(default)]
    pub cfl: Option<f64>,
    pub t_max: f64,
    /// Bounds for the pointwise values of `e^{±field}`.
    #[serde(default = "default_bounds")]
    pub blowup_bounds: (f64, f64),
    /// Sup norm of the discrete time derivative that counts as stationary.
    #[serde(default = "default_tol")]
    pub convergence_tol: f64,
    #[serde(default = "default_quiet")]
    pub convergence_steps: usize,
    /// A diagnostics record every this many steps (plus the first and last).
    #[serde(default = "default_record")]
    pub record_every: usize,
    /// Sample points for the geometric diagnostics; 0 disables them.
    #[serde(default = "default_points")]
    pub geometry_points: usize,
    /// Adaptive steps below this size are reported as a singularity.
    #[serde(default = "default_min_dt")]
    pub min_dt: f64,
}

fn default_bounds() -> (f64, f64) {
    (1e-6, 1e6)
}
fn default_tol() -> f64 {
    1e-8
}
fn default_quiet() -> usize {
    10
}
fn default_record() -> usize {
    1
}
fn default_points() -> usize {
    2
}
fn default_min_dt() -> f64 {
    1e-12
}

impl StepperConfig {
    pub fn new(scheme: Scheme, dt: f64, t_max: f64) -> Self {
        StepperConfig {
            scheme,
            dt,
            cfl: None,
            t_max,
            blowup_bounds: default_bounds(),
            convergence_tol: default_tol(),
            convergence_steps: default_quiet(),
            record_every: default_record(),
            geometry_points: default_points(),
            min_dt: default_min_dt(),
        }
    }

    pub fn imex(dt: f64, t_max: f64) -> Self {
        Self::new(Scheme::Imex, dt, t_max)
    }

    pub fn rk4(dt: f64, t_max: f64) -> Self {
        Self::new(Scheme::Rk4, dt, t_max)
    }

    pub fn adaptive(mut self, cfl: f64) -> Self {
        self.cfl = Some(cfl);
        self
    }

    pub fn validate(&self) -> Result<(), FlowError> {
        let bad = |m: &str| Err(FlowError::Config(m.to_string()));
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad("dt must be positive");
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return bad("t_max must be positive");
        }
        let (lo, hi) = self.blowup_bounds;
        if !(lo > 0.0 && lo < hi && hi.is_finite()) {
            return bad("blowup bounds need 0 < lo < hi < ∞");
        }
        if let Some(c) = self.cfl {
            if !(c > 0.0 && c.is_finite()) {
                return bad("cfl must be positive");
            }
        }
        if !(self.convergence_tol > 0.0) {
            return bad("convergence_tol must be positive");
        }
        if self.convergence_steps == 0 || self.record_every == 0 {
            return bad("convergence_steps and record_every must be at least 1");
        }
        if !(self.min_dt > 0.0) {
            return bad("min_dt must be positive");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_inverted_bounds() {
        let mut c = StepperConfig::imex(0.1, 1.0);
        assert!(c.validate().is_ok());
        c.blowup_bounds = (2.0, 1.0);
        assert!(c.validate().is_err());
        c.blowup_bounds = (1e-6, 1e6);
        c.dt = 0.0;
        assert!(c.validate().is_err());
    }
}

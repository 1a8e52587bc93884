//! `∂ₜe^f = λ⁻¹ ∂∂̄u − κu`, `u = e^f + (α′/2)κe^{-f}`, on a flat 2-torus
//! with metric `λ|dz|²` (so `∂∂̄ = ¼Δ`).

use crate::config::{Scheme, StepperConfig};
use crate::diagnostics::FlowDiagnostics;
use crate::error::FlowError;
use crate::run::{rk4_log, single_step, Flow};
use crate::state::{FlowKind, FlowState};
use crate::torus::Torus;
use geometry_scenarios::SurfaceData;
use num_complex::Complex64 as C64;

#[derive(Clone, Debug)]
pub struct SurfaceFlow {
    pub torus: Torus,
    pub alpha_prime: f64,
    kappa: Vec<f64>,
    inv_lambda: Vec<f64>,
}

impl SurfaceFlow {
    pub fn new(torus: Torus, data: &SurfaceData, alpha_prime: f64) -> Result<Self, FlowError> {
        if torus.real_dims != 2 {
            return Err(FlowError::Scenario("the surface flow lives on a 2-torus".into()));
        }
        let lambda = torus.sample(&data.conformal_factor);
        if let Some(l) = lambda.iter().find(|l| !(**l > 0.0)) {
            return Err(FlowError::Scenario(format!("conformal factor {l} is not positive")));
        }
        let kappa = torus.sample(&data.kappa);
        Ok(SurfaceFlow { alpha_prime, kappa, inv_lambda: lambda.iter().map(|l| 1.0 / l).collect(), torus })
    }

    /// `u = v + (α′/2)κ/v` at the grid points, for `v = e^f`.
    pub fn u_values(&self, v: &[f64]) -> Vec<f64> {
        v.iter().zip(&self.kappa).map(|(v, k)| v + 0.5 * self.alpha_prime * k / v).collect()
    }

    fn rhs(&self, vc: &[C64]) -> Vec<f64> {
        let v = self.torus.values(vc);
        let u = self.u_values(&v);
        let lap = self.torus.values(&self.torus.laplacian(&self.torus.coeffs(&u)));
        (0..v.len()).map(|i| self.inv_lambda[i] * lap[i] - self.kappa[i] * u[i]).collect()
    }

    fn imex(&self, vc: &[C64], dt: f64) -> Vec<C64> {
        let v = self.torus.values(vc);
        // frozen coefficient of ∂∂̄v in λ⁻¹∂∂̄u
        let s = v
            .iter()
            .zip(&self.kappa)
            .zip(&self.inv_lambda)
            .map(|((v, k), il)| il * (1.0 - 0.5 * self.alpha_prime * k / (v * v)))
            .fold(0.0, f64::max);
        let r = self.torus.coeffs(&self.rhs(vc));
        let lap = self.torus.laplacian(vc);
        let mut out: Vec<C64> = (0..vc.len())
            .map(|k| (vc[k] + (r[k] - lap[k] * s) * dt) / (1.0 - dt * s * self.torus.laplacian_symbol(k)))
            .collect();
        self.torus.filter(&mut out);
        out
    }
}

impl Flow for SurfaceFlow {
    fn kind(&self) -> FlowKind {
        FlowKind::Surface
    }

    /// Projected on the resolved band, where the state lives.
    fn rate(&self, s: &FlowState) -> Vec<f64> {
        self.torus.values(&self.torus.coeffs(&self.rhs(&s.coeffs)))
    }

    fn advance(&self, s: &FlowState, dt: f64, scheme: Scheme) -> FlowState {
        let coeffs = match scheme {
            Scheme::Imex => self.imex(&s.coeffs, dt),
            Scheme::Rk4 => rk4_log(&self.torus, &s.coeffs, dt, |c| self.rhs(c)),
        };
        FlowState { coeffs, ..s.clone() }
    }

    /// `|Ω| = e^{-f}`.
    fn omega_norm(&self, s: &FlowState) -> Vec<f64> {
        s.exp_values().iter().map(|v| 1.0 / v).collect()
    }

    fn geometry(&self, _s: &FlowState, _points: usize, d: &mut FlowDiagnostics) -> Result<(), FlowError> {
        d.balanced_residual = None;
        d.alpha_r_sup = None;
        d.h_est_ratio = None;
        Ok(())
    }
}

pub fn step_surface_flow(
    state: &FlowState,
    data: &SurfaceData,
    alpha_prime: f64,
    cfg: &StepperConfig,
) -> Result<FlowState, FlowError> {
    let torus = state.torus().ok_or_else(|| FlowError::State("surface flow needs a grid".into()))?;
    single_step(&SurfaceFlow::new(torus, data, alpha_prime)?, state, cfg)
}

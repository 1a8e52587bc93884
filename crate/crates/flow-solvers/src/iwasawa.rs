//! `∂ₜe^u = ½(Δ_c e^u + 1)` on the flat 4-torus; the metric is
//! `e^u ω_{T⁴} + iθ∧θ̄` with `θ = dz − x̄ dy`.

use crate::config::{Scheme, StepperConfig};
use crate::diagnostics::{sample_points, FlowDiagnostics};
use crate::error::FlowError;
use crate::run::{rk4_log, single_step, Flow};
use crate::state::{FlowKind, FlowState};
use crate::torus::Torus;
use chart_geometry::identities::{identity_residual, IdentityContext};
use chart_geometry::{IdentityId, PointGeometry, ScalarField};
use geometry_scenarios::iwasawa::make_iwasawa_metric_from_conformal;
use num_complex::Complex64 as C64;

#[derive(Clone, Debug)]
pub struct IwasawaFlow {
    pub torus: Torus,
}

impl IwasawaFlow {
    pub fn new(torus: Torus) -> Result<Self, FlowError> {
        if torus.real_dims != 4 {
            return Err(FlowError::Scenario("the Iwasawa flow lives on a 4-torus".into()));
        }
        Ok(IwasawaFlow { torus })
    }

    fn rhs(&self, wc: &[C64]) -> Vec<f64> {
        self.torus.values(&self.torus.laplacian(wc)).iter().map(|l| 0.5 * (l + 1.0)).collect()
    }
}

impl Flow for IwasawaFlow {
    fn kind(&self) -> FlowKind {
        FlowKind::Iwasawa
    }

    fn rate(&self, s: &FlowState) -> Vec<f64> {
        self.rhs(&s.coeffs)
    }

    fn advance(&self, s: &FlowState, dt: f64, scheme: Scheme) -> FlowState {
        let coeffs = match scheme {
            Scheme::Imex => {
                let mut out: Vec<C64> = (0..s.coeffs.len())
                    .map(|k| {
                        let src = if k == 0 { 0.5 * dt } else { 0.0 };
                        (s.coeffs[k] + src) / (1.0 - 0.5 * dt * self.torus.laplacian_symbol(k))
                    })
                    .collect();
                self.torus.filter(&mut out);
                out
            }
            Scheme::Rk4 => rk4_log(&self.torus, &s.coeffs, dt, |c| self.rhs(c)),
        };
        FlowState { coeffs, ..s.clone() }
    }

    /// `|Ω|_ω = e^{-u}`.
    fn omega_norm(&self, s: &FlowState) -> Vec<f64> {
        s.exp_values().iter().map(|v| 1.0 / v).collect()
    }

    fn geometry(&self, s: &FlowState, points: usize, d: &mut FlowDiagnostics) -> Result<(), FlowError> {
        d.alpha_r_sup = Some(0.0);
        d.h_est_ratio = None;
        if points == 0 {
            return Ok(());
        }
        let w = ScalarField::Fourier(self.torus.to_field(&s.coeffs, 1e-12));
        let m = make_iwasawa_metric_from_conformal(w);
        let mut worst = 0.0f64;
        for x in sample_points(points) {
            let pg = PointGeometry::from_metric(&m, &x, 2)?;
            let cx = IdentityContext { geom: &pg, bundle: None, alpha_prime: 0.0 };
            worst = worst.max(identity_residual(IdentityId::BalancedResidual, &cx)?);
        }
        d.balanced_residual = Some(worst);
        Ok(())
    }
}

pub fn step_iwasawa_flow(state: &FlowState, cfg: &StepperConfig) -> Result<FlowState, FlowError> {
    let torus = state.torus().ok_or_else(|| FlowError::State("Iwasawa flow needs a grid".into()))?;
    single_step(&IwasawaFlow::new(torus)?, state, cfg)
}

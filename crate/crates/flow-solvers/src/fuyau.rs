//! The Fu–Yau reduction on the flat 4-torus,
//! `∂ₜe^u ω² = Δ_c e^u ω² − α′ i∂∂̄(e^{-u})∧ρ + (α′/2)(i∂∂̄u)² + μ ω²`,
//! with every `(2,2)` term divided by `ω_{T⁴}²`. The 3-fold metric is
//! `e^u ω_{T⁴} + a iθ∧θ̄`.

use crate::config::{Scheme, StepperConfig};
use crate::diagnostics::{sample_points, FlowDiagnostics};
use crate::error::FlowError;
use crate::run::{rk4_log, single_step, Flow};
use crate::state::{FlowKind, FlowState};
use crate::torus::Torus;
use chart_geometry::identities::{identity_residual, IdentityContext};
use chart_geometry::norms::{curvature_operator_norm, torsion_derivative_norm, torsion_norm};
use chart_geometry::{ConnectionKind, IdentityId, PointGeometry, ScalarField};
use geometry_scenarios::FuYauTorusData;
use hodge_spectral::i_ddbar;
use hodge_spectral::wedge::product_table;
use num_complex::Complex64 as C64;

#[derive(Clone, Debug)]
pub struct FuYauFlow {
    pub torus: Torus,
    pub data: FuYauTorusData,
    /// Size `a` of the fibre term `a iθ∧θ̄` used by the diagnostics.
    pub fiber_scale: f64,
    mu: Vec<f64>,
    rho: [C64; 9],
    /// `(a, b, sign)` with `(x ∧ y)_{dz¹dz²dz̄¹dz̄²} = Σ sign x_a y_b`.
    top: Vec<(usize, usize, f64)>,
    volume: f64,
}

impl FuYauFlow {
    pub fn new(torus: Torus, data: FuYauTorusData, fiber_scale: f64) -> Result<Self, FlowError> {
        if torus.real_dims != 4 {
            return Err(FlowError::Scenario("the Fu–Yau flow lives on a 4-torus".into()));
        }
        if !(fiber_scale > 0.0) {
            return Err(FlowError::Scenario(format!("fibre scale must be positive, got {fiber_scale}")));
        }
        if !(data.alpha_prime >= 0.0) {
            return Err(FlowError::Scenario(format!("alpha_prime must be nonnegative, got {}", data.alpha_prime)));
        }
        let mu = torus.sample(&data.mu);
        let mut rho = [C64::new(0.0, 0.0); 9];
        for m in 0..2 {
            for n in 0..2 {
                rho[m * 3 + n] = data.rho[m][n];
            }
        }
        let top: Vec<(usize, usize, f64)> =
            product_table(1, 1, 1, 1).iter().filter(|p| p.out == 0).map(|p| (p.a, p.b, p.sign)).collect();
        let mut omega = [C64::new(0.0, 0.0); 9];
        omega[0] = C64::new(0.0, 1.0);
        omega[4] = C64::new(0.0, 1.0);
        let volume: f64 = top.iter().map(|&(a, b, s)| (omega[a] * omega[b] * s).re).sum();
        Ok(FuYauFlow { torus, data, fiber_scale, mu, rho, top, volume })
    }

    fn hessian(&self, values: &[f64]) -> Vec<Vec<C64>> {
        i_ddbar(&self.torus.form(&self.torus.coeffs(values))).values()
    }

    /// The explicit part `N(w)` and the largest imaginary part dropped from it.
    pub fn nonlinear(&self, wc: &[C64]) -> (Vec<f64>, f64) {
        let w = self.torus.values(wc);
        let ap = self.data.alpha_prime;
        let mut out = self.mu.clone();
        if ap == 0.0 {
            return (out, 0.0);
        }
        let u: Vec<f64> = w.iter().map(|v| v.ln()).collect();
        let hu = self.hessian(&u);
        let has_rho = self.rho.iter().any(|c| c.norm() > 0.0);
        let he = if has_rho { Some(self.hessian(&w.iter().map(|v| 1.0 / v).collect::<Vec<_>>())) } else { None };
        let mut imag = 0.0f64;
        for i in 0..w.len() {
            let mut acc = C64::new(0.0, 0.0);
            for &(a, b, s) in &self.top {
                acc += hu[a][i] * hu[b][i] * (0.5 * ap * s);
                if let Some(he) = &he {
                    acc -= he[a][i] * self.rho[b] * (ap * s);
                }
            }
            acc /= self.volume;
            imag = imag.max(acc.im.abs());
            out[i] += acc.re;
        }
        (out, imag)
    }

    fn rhs(&self, wc: &[C64]) -> Vec<f64> {
        let lap = self.torus.values(&self.torus.laplacian(wc));
        let (n, _) = self.nonlinear(wc);
        lap.iter().zip(&n).map(|(l, n)| l + n).collect()
    }

    /// The 3-fold metric built from the current `e^u`.
    pub fn metric(&self, s: &FlowState) -> chart_geometry::MetricField {
        let w = ScalarField::Fourier(self.torus.to_field(&s.coeffs, 1e-12));
        self.data.metric_from_conformal(w, self.fiber_scale)
    }
}

impl Flow for FuYauFlow {
    fn kind(&self) -> FlowKind {
        FlowKind::FuYau
    }

    /// Projected on the resolved band, where the state lives.
    fn rate(&self, s: &FlowState) -> Vec<f64> {
        self.torus.values(&self.torus.coeffs(&self.rhs(&s.coeffs)))
    }

    fn advance(&self, s: &FlowState, dt: f64, scheme: Scheme) -> FlowState {
        let coeffs = match scheme {
            Scheme::Imex => {
                let n = self.torus.coeffs(&self.nonlinear(&s.coeffs).0);
                let mut out: Vec<C64> = (0..s.coeffs.len())
                    .map(|k| (s.coeffs[k] + n[k] * dt) / (1.0 - dt * self.torus.laplacian_symbol(k)))
                    .collect();
                self.torus.filter(&mut out);
                out
            }
            Scheme::Rk4 => rk4_log(&self.torus, &s.coeffs, dt, |c| self.rhs(c)),
        };
        FlowState { coeffs, ..s.clone() }
    }

    /// `|Ω|_ω = e^{-u}/√a`.
    fn omega_norm(&self, s: &FlowState) -> Vec<f64> {
        let r = 1.0 / self.fiber_scale.sqrt();
        s.exp_values().iter().map(|v| r / v).collect()
    }

    fn geometry(&self, s: &FlowState, points: usize, d: &mut FlowDiagnostics) -> Result<(), FlowError> {
        if points == 0 {
            return Ok(());
        }
        let m = self.metric(s);
        let ap = self.data.alpha_prime;
        let (mut bal, mut curv, mut h) = (0.0f64, 0.0f64, 0.0f64);
        for x in sample_points(points) {
            let pg = PointGeometry::from_metric(&m, &x, 2)?;
            let cx = IdentityContext { geom: &pg, bundle: None, alpha_prime: ap };
            bal = bal.max(identity_residual(IdentityId::BalancedResidual, &cx)?);
            curv = curv.max(ap * curvature_operator_norm(&pg, ConnectionKind::Chern));
            if ap > 0.0 {
                h = h.max(torsion_norm(&pg) + torsion_derivative_norm(&pg));
            }
        }
        d.balanced_residual = Some(bal);
        d.alpha_r_sup = Some(curv);
        d.h_est_ratio = if ap > 0.0 { Some(h / ap.sqrt()) } else { None };
        Ok(())
    }
}

pub fn step_fuyau_flow(state: &FlowState, data: &FuYauTorusData, cfg: &StepperConfig) -> Result<FlowState, FlowError> {
    let torus = state.torus().ok_or_else(|| FlowError::State("Fu–Yau flow needs a grid".into()))?;
    single_step(&FuYauFlow::new(torus, data.clone(), 1.0)?, state, cfg)
}

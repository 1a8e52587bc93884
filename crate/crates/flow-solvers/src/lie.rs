//! The left-invariant reduction: `ω = ρ Σ i θᵃ∧θ̄ᵃ` evolves by the scalar
//! ODE `ρ̇ = G(ρ; α′)`.

use crate::config::{Scheme, StepperConfig};
use crate::diagnostics::FlowDiagnostics;
use crate::error::FlowError;
use crate::run::{single_step, Flow};
use crate::state::{FlowKind, FlowState};
use chart_geometry::identities::{identity_residual, IdentityContext};
use chart_geometry::norms::{curvature_operator_norm, torsion_derivative_norm, torsion_norm};
use chart_geometry::{ConnectionKind, IdentityId, PointGeometry};
use geometry_scenarios::lie::sl2c_chart_metric;
use geometry_scenarios::{LieFlowLaw, LieFrameAlgebra};

/// Chart point `(a, b, c)` of SL(2,ℂ) used for the pointwise diagnostics.
const CHART_POINT: [f64; 6] = [0.9, 0.1, 0.2, -0.1, 0.15, 0.05];

#[derive(Clone, Debug)]
pub struct LieFlow {
    pub algebra: LieFrameAlgebra,
    pub law: LieFlowLaw,
    sl2c: bool,
}

impl LieFlow {
    pub fn new(algebra: LieFrameAlgebra, alpha_prime: f64) -> Result<Self, FlowError> {
        let law = LieFlowLaw::new(&algebra, alpha_prime)?;
        let sl2c = algebra.structure_constants == LieFrameAlgebra::sl2c(1.0).structure_constants;
        Ok(LieFlow { algebra, law, sl2c })
    }

    fn rho_dot(&self, rho: f64) -> f64 {
        self.law.data(rho).rho_dot
    }

    fn rho(s: &FlowState) -> f64 {
        s.rho.unwrap_or(f64::NAN)
    }

    /// Cubic Hermite interpolant of `ρ` over a step of length `h`.
    fn hermite(&self, r0: f64, r1: f64, h: f64, th: f64) -> f64 {
        let (d0, d1) = (self.rho_dot(r0) * h, self.rho_dot(r1) * h);
        let (t2, t3) = (th * th, th * th * th);
        (2.0 * t3 - 3.0 * t2 + 1.0) * r0 + (t3 - 2.0 * t2 + th) * d0 + (-2.0 * t3 + 3.0 * t2) * r1 + (t3 - t2) * d1
    }
}

impl Flow for LieFlow {
    fn kind(&self) -> FlowKind {
        FlowKind::Lie
    }

    fn rate(&self, s: &FlowState) -> Vec<f64> {
        vec![self.rho_dot(Self::rho(s))]
    }

    fn evolved(&self, s: &FlowState) -> Vec<f64> {
        vec![Self::rho(s)]
    }

    fn bounded(&self, s: &FlowState) -> Vec<f64> {
        self.omega_norm(s)
    }

    /// Classical RK4 for either scheme; there is no spatial operator.
    fn advance(&self, s: &FlowState, dt: f64, _scheme: Scheme) -> FlowState {
        let r = Self::rho(s);
        let k1 = self.rho_dot(r);
        let k2 = self.rho_dot(r + 0.5 * dt * k1);
        let k3 = self.rho_dot(r + 0.5 * dt * k2);
        let k4 = self.rho_dot(r + dt * k3);
        FlowState { rho: Some(r + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)), ..s.clone() }
    }

    /// `|Ω|_ω = ρ^{-3/2}`.
    fn omega_norm(&self, s: &FlowState) -> Vec<f64> {
        vec![LieFlowLaw::norm_omega(Self::rho(s))]
    }

    fn geometry(&self, s: &FlowState, points: usize, d: &mut FlowDiagnostics) -> Result<(), FlowError> {
        d.grad_log_omega_sup = 0.0;
        if points == 0 || !self.sl2c {
            return Ok(());
        }
        // left-invariant, so one point represents the whole group
        let m = sl2c_chart_metric(Self::rho(s));
        let pg = PointGeometry::from_metric(&m, &CHART_POINT, 2)?;
        let ap = self.law.alpha_prime;
        let cx = IdentityContext { geom: &pg, bundle: None, alpha_prime: ap };
        d.balanced_residual = Some(identity_residual(IdentityId::BalancedResidual, &cx)?);
        d.alpha_r_sup = Some(ap * curvature_operator_norm(&pg, ConnectionKind::Chern));
        d.h_est_ratio = if ap > 0.0 { Some((torsion_norm(&pg) + torsion_derivative_norm(&pg)) / ap.sqrt()) } else { None };
        Ok(())
    }

    /// Dense output: the Hermite interpolant of `ρ` is solved for the level.
    fn crossing(&self, before: &FlowState, after: &FlowState, dt: f64, _index: usize, level: f64) -> Option<f64> {
        let (r0, r1) = (Self::rho(before), Self::rho(after));
        if !r1.is_finite() {
            return None;
        }
        let target = level.powf(-2.0 / 3.0);
        let f = |th: f64| self.hermite(r0, r1, dt, th) - target;
        let (mut lo, mut hi) = (0.0, 1.0);
        if f(lo).signum() == f(hi).signum() {
            return None;
        }
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if f(mid).signum() == f(lo).signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(before.time + 0.5 * (lo + hi) * dt)
    }
}

pub fn step_lie_flow(
    state: &FlowState,
    algebra: &LieFrameAlgebra,
    alpha_prime: f64,
    cfg: &StepperConfig,
) -> Result<FlowState, FlowError> {
    single_step(&LieFlow::new(algebra.clone(), alpha_prime)?, state, cfg)
}

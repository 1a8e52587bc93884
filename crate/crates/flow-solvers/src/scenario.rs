use crate::error::FlowError;
use crate::fuyau::FuYauFlow;
use crate::iwasawa::IwasawaFlow;
use crate::lie::LieFlow;
use crate::run::Flow;
use crate::state::{FlowKind, FlowState};
use crate::surface::SurfaceFlow;
use crate::torus::Torus;
use chart_geometry::FourierScalarField;
use geometry_scenarios::fuyau::make_fuyau_data_with;
use geometry_scenarios::{FuYauTorusData, IwasawaAnsatz, LieFrameAlgebra, SurfaceData};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "flow", rename_all = "snake_case", deny_unknown_fields)]
pub enum FlowScenario {
    /// `e^{f₀}` is multiplied by `scale` before the run.
    Surface { data: SurfaceData, alpha_prime: f64, n: usize, initial: FourierScalarField, scale: f64 },
    /// Starts from `data.u`; `fiber_scale` is the `a` of `a iθ∧θ̄`.
    FuYau { data: FuYauTorusData, n: usize, fiber_scale: f64 },
    Iwasawa { initial: FourierScalarField, n: usize },
    /// Starts from `ρ = algebra.rho_scale`.
    Lie { algebra: LieFrameAlgebra, alpha_prime: f64 },
}

impl FlowScenario {
    /// `κ` of amplitude 1, `f₀ = 0.2 cos 2πx + 0.1 sin 2πy` on a 64² grid.
    pub fn surface_default(alpha_prime: f64) -> Self {
        let mut f = FourierScalarField::zero(2);
        f.add_real_mode(vec![1, 0], C64::new(0.1, 0.0));
        f.add_real_mode(vec![0, 1], C64::new(0.0, -0.05));
        FlowScenario::Surface { data: SurfaceData::standard(1.0), alpha_prime, n: 64, initial: f, scale: 1.0 }
    }

    /// Large data `u₀ = log M`, `M = 0.5/α′`, with fibre size `a = α′` and the
    /// source scaled with `M`, on an `n⁴` grid.
    pub fn fuyau_large_m(seed: u64, alpha_prime: f64, n: usize) -> Self {
        let m = 0.5 / alpha_prime;
        let data = make_fuyau_data_with(seed, alpha_prime, m.ln(), 0.5, 0.2 * m);
        FlowScenario::FuYau { data, n, fiber_scale: alpha_prime }
    }

    /// A random base field of the given amplitude on an `n⁴` grid.
    pub fn iwasawa_random(seed: u64, amplitude: f64, n: usize) -> Self {
        let u = IwasawaAnsatz::random(seed, 2, amplitude, 4).u;
        let mut initial = FourierScalarField::zero(4);
        for (k, c) in &u.modes {
            initial.add_mode(k[..4].to_vec(), *c);
        }
        FlowScenario::Iwasawa { initial, n }
    }

    pub fn lie_sl2c(rho0: f64, alpha_prime: f64) -> Self {
        FlowScenario::Lie { algebra: LieFrameAlgebra::sl2c(rho0), alpha_prime }
    }

    pub fn kind(&self) -> FlowKind {
        match self {
            FlowScenario::Surface { .. } => FlowKind::Surface,
            FlowScenario::FuYau { .. } => FlowKind::FuYau,
            FlowScenario::Iwasawa { .. } => FlowKind::Iwasawa,
            FlowScenario::Lie { .. } => FlowKind::Lie,
        }
    }

    pub fn build(&self) -> Result<(Box<dyn Flow>, FlowState), FlowError> {
        match self {
            FlowScenario::Surface { data, alpha_prime, n, initial, scale } => {
                if !(*scale > 0.0) {
                    return Err(FlowError::Scenario(format!("scale must be positive, got {scale}")));
                }
                let t = Torus::new(2, *n)?;
                let vals: Vec<f64> = t.sample(initial).iter().map(|f| scale * f.exp()).collect();
                let s = FlowState::from_exp_values(FlowKind::Surface, &t, &vals)?;
                Ok((Box::new(SurfaceFlow::new(t, data, *alpha_prime)?), s))
            }
            FlowScenario::FuYau { data, n, fiber_scale } => {
                let t = Torus::new(4, *n)?;
                let s = FlowState::from_field(FlowKind::FuYau, &t, &data.u)?;
                Ok((Box::new(FuYauFlow::new(t, data.clone(), *fiber_scale)?), s))
            }
            FlowScenario::Iwasawa { initial, n } => {
                let t = Torus::new(4, *n)?;
                let s = FlowState::from_field(FlowKind::Iwasawa, &t, initial)?;
                Ok((Box::new(IwasawaFlow::new(t)?), s))
            }
            FlowScenario::Lie { algebra, alpha_prime } => {
                let s = FlowState::lie(algebra.rho_scale)?;
                Ok((Box::new(LieFlow::new(algebra.clone(), *alpha_prime)?), s))
            }
        }
    }
}

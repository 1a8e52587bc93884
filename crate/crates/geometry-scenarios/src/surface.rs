//! Data for the reduced flow on a Riemann-surface stand-in (flat 2-torus).

use chart_geometry::FourierScalarField;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceData {
    /// `g_Σ = λ |dz|²`.
    pub conformal_factor: FourierScalarField,
    pub kappa: FourierScalarField,
}

impl SurfaceData {
    /// `κ = −a(sin²πx₁ + sin²πx₂)` with `λ ≡ 1`.
    pub fn standard(a: f64) -> Self {
        assert!(a > 0.0, "kappa amplitude must be positive");
        let mut kappa = FourierScalarField::constant(2, C64::new(-a, 0.0));
        // sin²πx = ½ − ½cos 2πx
        kappa.add_real_mode(vec![1, 0], C64::new(a / 4.0, 0.0));
        kappa.add_real_mode(vec![0, 1], C64::new(a / 4.0, 0.0));
        SurfaceData { conformal_factor: FourierScalarField::constant(2, C64::new(1.0, 0.0)), kappa }
    }

    /// Spatially constant `κ ≡ k`.
    pub fn constant_kappa(k: f64) -> Self {
        SurfaceData {
            conformal_factor: FourierScalarField::constant(2, C64::new(1.0, 0.0)),
            kappa: FourierScalarField::constant(2, C64::new(k, 0.0)),
        }
    }

    /// Largest value of `κ` on the `m × m` grid.
    pub fn kappa_max_on_grid(&self, m: usize) -> f64 {
        let mut worst = f64::NEG_INFINITY;
        for i in 0..m {
            for j in 0..m {
                let p = [i as f64 / m as f64, j as f64 / m as f64];
                worst = worst.max(self.kappa.value(&p).re);
            }
        }
        worst
    }

    pub fn min_conformal_factor_on_grid(&self, m: usize) -> f64 {
        let mut worst = f64::INFINITY;
        for i in 0..m {
            for j in 0..m {
                let p = [i as f64 / m as f64, j as f64 / m as f64];
                worst = worst.min(self.conformal_factor.value(&p).re);
            }
        }
        worst
    }
}

//! The Iwasawa-type family `ω = e^u ω_{T⁴} + iθ∧θ̄`, `θ = dz − x̄ dy`.

use chart_geometry::{Family, FourierScalarField, Frame, MetricField, ScalarField};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IwasawaAnsatz {
    /// Real field on the 6-dimensional chart depending on `x, y` only.
    pub u: FourierScalarField,
}

impl IwasawaAnsatz {
    pub fn constant(c: f64) -> Self {
        IwasawaAnsatz { u: FourierScalarField::constant(6, C64::new(c, 0.0)) }
    }

    /// Random base field with `modes` real modes up to frequency `cutoff`.
    pub fn random(seed: u64, cutoff: i32, amplitude: f64, modes: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut u = FourierScalarField::zero(6);
        for _ in 0..modes {
            let mut k = vec![0; 6];
            while k.iter().all(|&v| v == 0) {
                for v in k.iter_mut().take(4) {
                    *v = rng.gen_range(-cutoff..=cutoff);
                }
            }
            let c = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * (amplitude / modes as f64 * 0.5);
            u.add_real_mode(k, c);
        }
        IwasawaAnsatz { u }
    }

    pub fn depends_on_fiber(&self) -> bool {
        self.u.modes.keys().any(|k| k[4] != 0 || k[5] != 0)
    }
}

/// Frame components `diag(e^u, e^u, 1)` in the coframe `{dx, dy, θ}`.
pub fn make_iwasawa_metric(ansatz: &IwasawaAnsatz) -> MetricField {
    assert!(!ansatz.depends_on_fiber(), "u must depend on the base coordinates only");
    make_iwasawa_metric_from_conformal(ScalarField::Fourier(ansatz.u.clone()).exp())
}

/// Frame components `diag(w, w, 1)` for a base function `w > 0`.
pub fn make_iwasawa_metric_from_conformal(w: ScalarField) -> MetricField {
    let mut g = vec![ScalarField::zero(); 9];
    g[0] = w.clone();
    g[4] = w;
    g[8] = ScalarField::real(1.0);
    MetricField {
        rank: 3,
        g,
        omega_coeff_f: ScalarField::real(1.0),
        frame: Frame::Iwasawa,
        periods: vec![1.0; 6],
        family: Family::ConformallyBalanced,
    }
}

/// The same metric with the twist scaled: `θ = dz − ε x̄ dy`.
pub fn make_twisted_iwasawa_metric(ansatz: &IwasawaAnsatz, eps: f64) -> MetricField {
    let mut m = make_iwasawa_metric(ansatz);
    let mut e: Vec<ScalarField> = (0..9).map(|k| ScalarField::real(if k / 3 == k % 3 { 1.0 } else { 0.0 })).collect();
    e[7] = ScalarField::zbar(0).scaled(C64::new(-eps, 0.0));
    m.frame = Frame::Coframe(e);
    m
}

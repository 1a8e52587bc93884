//! Data for the Fu–Yau reduction on a flat 4-torus stand-in.
//!
//! With `ω_{T⁴} = i δ_{μν̄} dz^μ ∧ dz̄^ν` on `ℂ²`, a constant real `(1,1)`-form
//! `i a_{μν̄} dz^μ ∧ dz̄^ν` is anti-self-dual exactly when `a` is hermitian
//! and trace-free.

use chart_geometry::{Family, FourierScalarField, Frame, MetricField, ScalarField};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub type Mat2 = [[C64; 2]; 2];

fn zero2() -> Mat2 {
    [[C64::new(0.0, 0.0); 2]; 2]
}

fn mul2(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = zero2();
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FuYauTorusData {
    /// Initial `u` on the 4-torus.
    pub u: FourierScalarField,
    /// `ω_k = i a^k_{μν̄} dz^μ ∧ dz̄^ν`, stored as the matrices `a^k`.
    pub asd_forms: [Mat2; 2],
    /// Components `ρ_{μν̄}` of `ρ = ρ_{μν̄} dz^μ ∧ dz̄^ν`.
    pub rho: Mat2,
    /// Scalarized source, `μ = Δψ`.
    pub mu: FourierScalarField,
    pub psi: FourierScalarField,
    pub alpha_prime: f64,
}

/// `ρ_{μν̄} = (i/2)(ω₁ − iω₂)^α{}_μ (ω₁ + iω₂)_{ν̄α}` with indices moved by `δ`.
pub fn rho_from_asd(forms: &[Mat2; 2]) -> Mat2 {
    let i = C64::new(0.0, 1.0);
    let mut minus = zero2();
    let mut plus = zero2();
    for p in 0..2 {
        for q in 0..2 {
            minus[p][q] = forms[0][p][q] - i * forms[1][p][q];
            plus[p][q] = forms[0][p][q] + i * forms[1][p][q];
        }
    }
    // (ω_k)_{ᾱμ} = −i a^k_{μᾱ}
    let prod = mul2(&minus, &plus);
    let mut rho = zero2();
    for p in 0..2 {
        for q in 0..2 {
            rho[p][q] = prod[p][q] * C64::new(0.0, -0.5);
        }
    }
    rho
}

/// `Δ_c = δ^{μν̄} ∂_μ ∂_ν̄ = ¼ Σ ∂²` on a field over the real coordinates.
pub fn complex_laplacian(f: &FourierScalarField) -> FourierScalarField {
    let mut out = FourierScalarField::zero(f.dim());
    out.periods = f.periods.clone();
    for j in 0..f.dim() {
        out = out.add(&f.derivative(j).derivative(j).scaled(C64::new(0.25, 0.0)));
    }
    out
}

fn random_asd(rng: &mut ChaCha8Rng, scale: f64) -> Mat2 {
    let s = rng.gen_range(-1.0..1.0) * scale;
    let w = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * scale;
    [[C64::new(s, 0.0), w], [w.conj(), C64::new(-s, 0.0)]]
}

/// Random ψ with a few real modes up to frequency 2, and `μ = Δψ`.
pub fn make_fuyau_data(seed: u64, alpha_prime: f64) -> FuYauTorusData {
    assert!(alpha_prime > 0.0, "alpha_prime must be positive");
    make_fuyau_data_with(seed, alpha_prime, 10.0_f64.ln(), 0.5, 0.3)
}

/// `u₀ ≡ u0`; `asd_scale` sizes the entries of `a^k`; `psi_amplitude` sizes ψ.
pub fn make_fuyau_data_with(seed: u64, alpha_prime: f64, u0: f64, asd_scale: f64, psi_amplitude: f64) -> FuYauTorusData {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let forms = [random_asd(&mut rng, asd_scale), random_asd(&mut rng, asd_scale)];
    let mut psi = FourierScalarField::zero(4);
    let modes = 4;
    for _ in 0..modes {
        let mut k = vec![0; 4];
        while k.iter().all(|&v| v == 0) {
            for v in k.iter_mut() {
                *v = rng.gen_range(-2..=2);
            }
        }
        let c = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * (psi_amplitude / modes as f64);
        psi.add_real_mode(k, c);
    }
    let mu = complex_laplacian(&psi);
    FuYauTorusData {
        u: FourierScalarField::constant(4, C64::new(u0, 0.0)),
        asd_forms: forms,
        rho: rho_from_asd(&forms),
        mu,
        psi,
        alpha_prime,
    }
}

impl FuYauTorusData {
    pub fn without_asd(mut self) -> Self {
        self.asd_forms = [zero2(), zero2()];
        self.rho = zero2();
        self
    }

    pub fn without_source(mut self) -> Self {
        self.mu = FourierScalarField::zero(4);
        self.psi = FourierScalarField::zero(4);
        self
    }

    /// Holomorphic coframe `{dz¹, dz², θ}` with `θ = dz³ + B_{μν} z̄^ν dz^μ`,
    /// `B = −i(a¹ + i a²)`, so that `dθ = ω₁ + iω₂`.
    pub fn coframe(&self) -> Vec<ScalarField> {
        let i = C64::new(0.0, 1.0);
        let mut e: Vec<ScalarField> = (0..9).map(|k| ScalarField::real(if k / 3 == k % 3 { 1.0 } else { 0.0 })).collect();
        for mu in 0..2 {
            let mut acc = ScalarField::zero();
            for nu in 0..2 {
                let b = (self.asd_forms[0][mu][nu] + i * self.asd_forms[1][mu][nu]) * -i;
                if b.norm() > 0.0 {
                    acc = acc.plus(ScalarField::zbar(nu).scaled(b));
                }
            }
            e[6 + mu] = acc;
        }
        e
    }

    /// `ω = e^u ω_{T⁴} + iθ∧θ̄` for a given `u` on the base.
    pub fn metric(&self, u: &FourierScalarField) -> MetricField {
        self.metric_from_conformal(ScalarField::Fourier(u.clone()).exp(), 1.0)
    }

    /// `ω = w ω_{T⁴} + a iθ∧θ̄` with the conformal factor `w = e^u` given directly.
    pub fn metric_from_conformal(&self, w: ScalarField, a: f64) -> MetricField {
        let mut g = vec![ScalarField::zero(); 9];
        g[0] = w.clone();
        g[4] = w;
        g[8] = ScalarField::real(a);
        MetricField {
            rank: 3,
            g,
            omega_coeff_f: ScalarField::real(1.0),
            frame: Frame::Coframe(self.coframe()),
            periods: vec![1.0; 6],
            family: Family::ConformallyBalanced,
        }
    }
}

/// Real components `η(∂_a, ∂_b)` on `(x₁, y₁, x₂, y₂)` of `i a_{μν̄} dz^μ ∧ dz̄^ν`.
pub fn real_components(a: &Mat2) -> [[f64; 4]; 4] {
    // ∂_x = ∂ + ∂̄, ∂_y = i(∂ − ∂̄): holomorphic and antiholomorphic weights
    let w = |r: usize| -> (usize, C64, C64) {
        if r % 2 == 0 {
            (r / 2, C64::new(1.0, 0.0), C64::new(1.0, 0.0))
        } else {
            (r / 2, C64::new(0.0, 1.0), C64::new(0.0, -1.0))
        }
    };
    let i = C64::new(0.0, 1.0);
    let mut out = [[0.0; 4]; 4];
    for (r, row) in out.iter_mut().enumerate() {
        for (s, v) in row.iter_mut().enumerate() {
            let (mr, hr, ar) = w(r);
            let (ms, hs, as_) = w(s);
            // η(X, Y) = i a_{μν̄}(X^μ Ȳ^ν − Y^μ X̄^ν)
            let val = i * (a[mr][ms] * hr * as_ - a[ms][mr] * hs * ar);
            *v = val.re;
        }
    }
    out
}

/// Euclidean Hodge star on 2-forms of `ℝ⁴` with orientation `dx₁dy₁dx₂dy₂`.
pub fn hodge_star_r4(eta: &[[f64; 4]; 4]) -> [[f64; 4]; 4] {
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = 0.0;
            for k in 0..4 {
                for l in 0..4 {
                    acc += 0.5 * levi_civita4([i, j, k, l]) * eta[k][l];
                }
            }
            out[i][j] = acc;
        }
    }
    out
}

fn levi_civita4(mut p: [usize; 4]) -> f64 {
    let mut sign = 1.0;
    for i in 0..4 {
        for j in 0..3 - i {
            if p[j] == p[j + 1] {
                return 0.0;
            }
            if p[j] > p[j + 1] {
                p.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if p.windows(2).any(|w| w[0] == w[1]) {
        0.0
    } else {
        sign
    }
}

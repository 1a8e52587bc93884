//! Left-invariant data on a complex Lie group and the reduced flow ODE.
//!
//! With `ω = ρ ω₀`, `ω₀ = Σ i eᵃ ∧ ēᵃ` and `Ω = e¹ ∧ e² ∧ e³`, one has
//! `|Ω|_ω = ρ^{-3/2}` and `|Ω|_ω ω² = ρ^{1/2} ω₀²`. Everything below is
//! computed from the structure constants through the Maurer–Cartan
//! equations `deᵏ = −½ c_{ij}{}^k eⁱ ∧ eʲ`.

use chart_geometry::forms::{antisym_from_sorted, wedge};
use chart_geometry::tensor::{JTensor, RTensor, VTensor};
use chart_geometry::{Family, Frame, Jet, MetricField, ScalarField};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LieError {
    #[error("structure constants violate the Jacobi identity (defect {0:e})")]
    Jacobi(f64),
    #[error("algebra is not unimodular (trace defect {0:e}); the frame volume form is not closed")]
    NotUnimodular(f64),
    #[error("frame scale must be positive, got {0}")]
    NonPositiveScale(f64),
    #[error("i∂∂̄ω₀ is not proportional to ω₀² (remainder {0:e}); the ansatz is not preserved")]
    NotProportional(f64),
}

/// `[e_i, e_j] = c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LieFrameAlgebra {
    pub structure_constants: [[[f64; 3]; 3]; 3],
    pub rho_scale: f64,
}

fn epsilon(i: usize, j: usize, k: usize) -> f64 {
    if i == j || j == k || i == k {
        0.0
    } else if (i, j, k) == (0, 1, 2) || (i, j, k) == (1, 2, 0) || (i, j, k) == (2, 0, 1) {
        1.0
    } else {
        -1.0
    }
}

impl LieFrameAlgebra {
    pub fn sl2c(rho: f64) -> Self {
        let mut c = [[[0.0; 3]; 3]; 3];
        for (i, ci) in c.iter_mut().enumerate() {
            for (j, cij) in ci.iter_mut().enumerate() {
                for (k, v) in cij.iter_mut().enumerate() {
                    *v = epsilon(i, j, k);
                }
            }
        }
        LieFrameAlgebra { structure_constants: c, rho_scale: rho }
    }

    pub fn abelian(rho: f64) -> Self {
        LieFrameAlgebra { structure_constants: [[[0.0; 3]; 3]; 3], rho_scale: rho }
    }

    pub fn jacobi_defect(&self) -> f64 {
        let c = &self.structure_constants;
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for m in 0..3 {
                        let mut s = 0.0;
                        for l in 0..3 {
                            s += c[i][j][l] * c[l][k][m] + c[j][k][l] * c[l][i][m] + c[k][i][l] * c[l][j][m];
                        }
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }

    pub fn unimodular_defect(&self) -> f64 {
        let c = &self.structure_constants;
        (0..3).map(|i| (0..3).map(|j| c[i][j][j]).sum::<f64>().abs()).fold(0.0, f64::max)
    }

    pub fn validate(&self) -> Result<(), LieError> {
        let j = self.jacobi_defect();
        if j > 1e-12 {
            return Err(LieError::Jacobi(j));
        }
        let u = self.unimodular_defect();
        if u > 1e-12 {
            return Err(LieError::NotUnimodular(u));
        }
        if !(self.rho_scale > 0.0) {
            return Err(LieError::NonPositiveScale(self.rho_scale));
        }
        Ok(())
    }
}

fn constant(v: C64) -> Jet {
    Jet::constant(0, v)
}

/// `deᵃ` (or `dēᵃ` when `conjugate`) in the real frame basis `{e¹,e²,e³,ē¹,ē²,ē³}`.
pub fn d_coframe(alg: &LieFrameAlgebra, a: usize, conjugate: bool) -> JTensor {
    let c = &alg.structure_constants;
    let off = if conjugate { 3 } else { 0 };
    antisym_from_sorted(6, 2, 0, |s| {
        let (i, j) = (s[0], s[1]);
        if i >= off && i < off + 3 && j >= off && j < off + 3 {
            constant(C64::new(-c[i - off][j - off][a], 0.0))
        } else {
            constant(C64::new(0.0, 0.0))
        }
    })
}

/// `ω₀ = Σ i eᵃ ∧ ēᵃ`.
pub fn omega0() -> JTensor {
    RTensor::from_fn(6, 2, |x| {
        let (p, q) = (x[0], x[1]);
        if q == p + 3 {
            constant(C64::new(0.0, 1.0))
        } else if p == q + 3 {
            constant(C64::new(0.0, -1.0))
        } else {
            constant(C64::new(0.0, 0.0))
        }
    })
}

/// `i∂∂̄ω₀ = Σ deᵃ ∧ dēᵃ`.
pub fn ddbar_omega0(alg: &LieFrameAlgebra) -> VTensor {
    let mut acc: Option<JTensor> = None;
    for a in 0..3 {
        let t = wedge(&d_coframe(alg, a, false), &d_coframe(alg, a, true));
        acc = Some(match acc {
            None => t,
            Some(s) => RTensor { d: 6, rank: 4, data: s.data.iter().zip(&t.data).map(|(x, y)| x + y).collect() },
        });
    }
    acc.unwrap().values()
}

/// Ratio `c` with `i∂∂̄ω₀ = c ω₀²`, and the non-proportional remainder.
pub fn ddbar_ratio(alg: &LieFrameAlgebra) -> (f64, f64) {
    let x = ddbar_omega0(alg);
    let w = omega0();
    let w2 = wedge(&w, &w).values();
    let num: C64 = x.data.iter().zip(&w2.data).map(|(a, b)| a * b.conj()).sum();
    let den: f64 = w2.data.iter().map(|b| b.norm_sqr()).sum();
    let c = num / den;
    let rem = x.data.iter().zip(&w2.data).map(|(a, b)| (a - b * c).norm()).fold(0.0, f64::max);
    (c.re, rem.max(c.im.abs()))
}

/// Both sides of the left-invariant flow as multiples of `ω₀²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LieFlowData {
    /// `d/dt(|Ω|_ω ω²) = lhs_coefficient · ρ̇ · ω₀²`.
    pub lhs_coefficient: f64,
    /// Right side `i∂∂̄ω − α′ Tr R∧R` as a multiple of `ω₀²`.
    pub rhs_value: f64,
    /// `ρ̇ = G(ρ; α′)`.
    pub rho_dot: f64,
}

/// Constants of the reduced ODE, independent of `ρ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LieFlowLaw {
    /// `i∂∂̄ω₀ = c ω₀²`.
    pub ddbar_coefficient: f64,
    /// `Tr R∧R` coefficient; the Chern connection of a constant frame
    /// metric in a holomorphic frame vanishes, so this is zero.
    pub curvature_coefficient: f64,
    pub alpha_prime: f64,
}

impl LieFlowLaw {
    pub fn new(alg: &LieFrameAlgebra, alpha_prime: f64) -> Result<Self, LieError> {
        alg.validate()?;
        let (c, rem) = ddbar_ratio(alg);
        if rem > 1e-12 {
            return Err(LieError::NotProportional(rem));
        }
        Ok(LieFlowLaw { ddbar_coefficient: c, curvature_coefficient: 0.0, alpha_prime })
    }

    pub fn data(&self, rho: f64) -> LieFlowData {
        let lhs = 0.5 / rho.sqrt();
        let rhs = self.ddbar_coefficient * rho - self.alpha_prime * self.curvature_coefficient;
        LieFlowData { lhs_coefficient: lhs, rhs_value: rhs, rho_dot: rhs / lhs }
    }

    /// `|Ω|_ω = ρ^{-3/2}`.
    pub fn norm_omega(rho: f64) -> f64 {
        rho.powf(-1.5)
    }
}

pub fn lie_frame_flow_data(alg: &LieFrameAlgebra, alpha_prime: f64) -> Result<LieFlowData, LieError> {
    Ok(LieFlowLaw::new(alg, alpha_prime)?.data(alg.rho_scale))
}

/// Real-basis pullback matrix `M[a][i]` of the coframe `eᵃ = E[a][μ] dz^μ`.
pub fn coframe_pullback(e: &[C64]) -> VTensor {
    RTensor::from_fn(6, 2, |x| {
        let (a, i) = (x[0], x[1]);
        match (a < 3, i < 3) {
            (true, true) => e[a * 3 + i],
            (false, false) => e[(a - 3) * 3 + (i - 3)].conj(),
            _ => C64::new(0.0, 0.0),
        }
    })
}

/// Pulls a frame 4-tensor back to coordinates.
pub fn pullback4(x: &VTensor, m: &VTensor) -> VTensor {
    let mut t = x.clone();
    for s in 0..4 {
        t = RTensor::from_fn(6, 4, |idx| {
            let mut acc = C64::new(0.0, 0.0);
            let mut src = idx.to_vec();
            for a in 0..6 {
                src[s] = a;
                acc += t.at(&src) * m.at(&[a, idx[s]]);
            }
            acc
        });
    }
    t
}

/// `SL(2,ℂ)` near the identity in coordinates `(a, b, c)` with `d = (1+bc)/a`,
/// carrying `ω = ρ Σ i θᵃ ∧ θ̄ᵃ` for the left Maurer–Cartan coframe
/// `g⁻¹dg = Σ θᵃ E_a`, `E_a = −(i/2) σ_a`.
pub fn sl2c_chart_metric(rho: f64) -> MetricField {
    let e = sl2c_coframe();
    // f = det E, so that Ω = θ¹∧θ²∧θ³ = f dz¹∧dz²∧dz³
    let det = {
        let m = |i: usize, j: usize| e[i * 3 + j].clone();
        let t = |a: ScalarField, b: ScalarField, c: ScalarField| a.times(b).times(c);
        ScalarField::Sum(vec![
            t(m(0, 0), m(1, 1), m(2, 2)),
            t(m(0, 1), m(1, 2), m(2, 0)),
            t(m(0, 2), m(1, 0), m(2, 1)),
            t(m(0, 2), m(1, 1), m(2, 0)).scaled(C64::new(-1.0, 0.0)),
            t(m(0, 0), m(1, 2), m(2, 1)).scaled(C64::new(-1.0, 0.0)),
            t(m(0, 1), m(1, 0), m(2, 2)).scaled(C64::new(-1.0, 0.0)),
        ])
    };
    MetricField {
        rank: 3,
        g: (0..9).map(|k| ScalarField::real(if k / 3 == k % 3 { rho } else { 0.0 })).collect(),
        omega_coeff_f: det,
        frame: Frame::Coframe(e),
        periods: vec![1.0; 6],
        family: Family::ConformallyBalanced,
    }
}

/// Rows `θᵃ = E[a][μ] dz^μ` on `(a, b, c)`.
pub fn sl2c_coframe() -> Vec<ScalarField> {
    let a = || ScalarField::z(0);
    let b = || ScalarField::z(1);
    let c = || ScalarField::z(2);
    let inv_a = || a().recip();
    let d = || ScalarField::real(1.0).plus(b().times(c())).times(inv_a());
    let neg = |f: ScalarField| f.scaled(C64::new(-1.0, 0.0));
    // dd = (c db + b dc)/a − d/a da, as coefficients on (da, db, dc)
    let dd = || [neg(d().times(inv_a())), c().times(inv_a()), b().times(inv_a())];
    let zero = || ScalarField::zero();
    // θ = g⁻¹ dg with g⁻¹ = [[d, −b], [−c, a]]
    let t11 = [d(), zero(), neg(b())];
    let t21 = [neg(c()), zero(), a()];
    let dd1 = dd();
    let dd2 = dd();
    let t12 = [neg(b().times(dd1[0].clone())), d().plus(neg(b().times(dd1[1].clone()))), neg(b().times(dd1[2].clone()))];
    let t22 = [a().times(dd2[0].clone()), neg(c()).plus(a().times(dd2[1].clone())), a().times(dd2[2].clone())];
    let i = C64::new(0.0, 1.0);
    let mut rows = Vec::with_capacity(9);
    for mu in 0..3 {
        // θ¹ = i(θ₁₂ + θ₂₁)
        rows.push(t12[mu].clone().plus(t21[mu].clone()).scaled(i));
    }
    for mu in 0..3 {
        // θ² = θ₂₁ − θ₁₂
        rows.push(t21[mu].clone().plus(neg(t12[mu].clone())));
    }
    for mu in 0..3 {
        // θ³ = i(θ₁₁ − θ₂₂)
        rows.push(t11[mu].clone().plus(neg(t22[mu].clone())).scaled(i));
    }
    rows
}

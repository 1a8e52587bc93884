//! Chern connection and curvature of a bundle metric.

use crate::error::GeometryError;
use crate::forms::{jet_var, EndForm};
use crate::jet::Jet;
use crate::local::jet_det_inv;
use crate::tensor::JTensor;
use num_complex::Complex64 as C64;

fn matmul(r: usize, a: &[Jet], b: &[Jet]) -> Vec<Jet> {
    let ord = a[0].order().min(b[0].order());
    let mut out = vec![Jet::zero(ord); r * r];
    for i in 0..r {
        for k in 0..r {
            for j in 0..r {
                out[i * r + j].add_mul(&a[i * r + k], &b[k * r + j]);
            }
        }
    }
    out
}

/// Curvature data at a point of a chart of complex dimension `n`.
#[derive(Clone, Debug)]
pub struct BundleCurvature {
    pub r: usize,
    pub n: usize,
    /// `a[μ]` is the `r × r` matrix `h⁻¹ ∂_μ h`.
    pub a: Vec<Vec<Jet>>,
    /// `F` as an endomorphism-valued 2-form in the real basis.
    pub f: EndForm,
    pub h: Vec<Jet>,
}

impl BundleCurvature {
    /// From jets of the row-major `r × r` bundle metric.
    pub fn from_jets(r: usize, n: usize, h: Vec<Jet>) -> Result<Self, GeometryError> {
        let (det, hinv) = jet_det_inv(r, &h);
        let scale = h.iter().map(|j| j.value().norm()).fold(0.0, f64::max).max(1e-300);
        if !(det.value().norm() > 1e-13 * scale.powi(r as i32)) {
            return Err(GeometryError::NonInvertibleMetric { det: det.value().norm() });
        }
        let a: Vec<Vec<Jet>> = (0..n)
            .map(|mu| {
                let dh: Vec<Jet> = h.iter().map(|j| j.d(mu)).collect();
                matmul(r, &hinv, &dh)
            })
            .collect();
        let ord = a[0][0].order().saturating_sub(1);
        let d = 2 * n;
        let mut comps = vec![JTensor::zeros(d, 2, ord); r * r];
        for mu in 0..n {
            for nu in 0..n {
                for k in 0..r * r {
                    // ∂̄(A_μ dz^μ) = −∂_ν̄ A_μ dz^μ ∧ dz̄^ν
                    let v = -&a[mu][k].d(jet_var(n + nu, n));
                    comps[k].set(&[n + nu, mu], -&v);
                    comps[k].set(&[mu, n + nu], v);
                }
            }
        }
        Ok(BundleCurvature { r, n, a, f: EndForm { e: r, comps }, h })
    }

    /// `F_{μν̄}` as an `r × r` complex matrix.
    pub fn f_block(&self, mu: usize, nu: usize) -> Vec<C64> {
        (0..self.r * self.r).map(|k| self.f.comps[k].at(&[mu, self.n + nu]).value()).collect()
    }

    /// Connection matrix `A_i` in the real basis (`A_ī = 0`).
    pub fn connection(&self, i: usize) -> Option<&[Jet]> {
        if i < self.n {
            Some(&self.a[i])
        } else {
            None
        }
    }
}

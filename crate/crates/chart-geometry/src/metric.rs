//! Hermitian metrics and bundle metrics on a chart.

use crate::error::GeometryError;
use crate::field::ScalarField;
use crate::jet::Jet;
use crate::local::LocalGeometry;
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

/// Holomorphic coframe in which the metric components are expressed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Frame {
    /// `e^a = dz^a`.
    Identity,
    /// `{dx, dy, θ = dz − x̄ dy}` on `(x, y, z) = (z¹, z², z³)`.
    Iwasawa,
    /// `e^a = E[a][μ] dz^μ`, row-major `n × n`.
    Coframe(Vec<ScalarField>),
}

impl Frame {
    /// Row-major `E[a][μ]`.
    pub fn matrix(&self, n: usize) -> Vec<ScalarField> {
        match self {
            Frame::Identity => (0..n * n)
                .map(|k| ScalarField::real(if k / n == k % n { 1.0 } else { 0.0 }))
                .collect(),
            Frame::Iwasawa => {
                assert_eq!(n, 3, "the Iwasawa coframe lives on a 3-dimensional chart");
                let mut e: Vec<ScalarField> = (0..9)
                    .map(|k| ScalarField::real(if k / 3 == k % 3 { 1.0 } else { 0.0 }))
                    .collect();
                e[3 * 2 + 1] = ScalarField::zbar(0).scaled(C64::new(-1.0, 0.0));
                e
            }
            Frame::Coframe(m) => m.clone(),
        }
    }
}

/// Which families the caller vouches for. Conditional identities refuse
/// metrics that are not flagged conformally balanced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    #[default]
    Generic,
    Kahler,
    ConformallyBalanced,
}

/// `ω = i h_{ab̄} e^a ∧ ē^b` with `Ω = f dz¹ ∧ … ∧ dzⁿ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricField {
    pub rank: usize,
    /// Row-major frame components `h_{ab̄}`.
    pub g: Vec<ScalarField>,
    pub omega_coeff_f: ScalarField,
    pub frame: Frame,
    pub periods: Vec<f64>,
    #[serde(default)]
    pub family: Family,
}

impl MetricField {
    pub fn flat(rank: usize) -> Self {
        MetricField {
            rank,
            g: (0..rank * rank)
                .map(|k| ScalarField::real(if k / rank == k % rank { 1.0 } else { 0.0 }))
                .collect(),
            omega_coeff_f: ScalarField::real(1.0),
            frame: Frame::Identity,
            periods: vec![1.0; 2 * rank],
            family: Family::Kahler,
        }
    }

    pub fn real_dim(&self) -> usize {
        2 * self.rank
    }

    /// Jets of the coordinate components `g_{μν̄}`.
    pub fn coordinate_jets(&self, point: &[f64], order: usize) -> Vec<Jet> {
        let n = self.rank;
        let h: Vec<Jet> = self.g.iter().map(|f| f.jet(point, order)).collect();
        if self.frame == Frame::Identity {
            return h;
        }
        let e: Vec<Jet> = self.frame.matrix(n).iter().map(|f| f.jet(point, order)).collect();
        coframe_metric_jets(n, &e, &h)
    }

    pub fn local(&self, point: &[f64], order: usize) -> Result<LocalGeometry, GeometryError> {
        if point.len() < self.real_dim() {
            return Err(GeometryError::Dimension { expected: self.real_dim(), found: point.len() });
        }
        let g = self.coordinate_jets(point, order);
        LocalGeometry::from_jets(self.rank, g, self.omega_coeff_f.jet(point, order))
    }

    /// Coordinate metric matrix at `point`.
    pub fn matrix_at(&self, point: &[f64]) -> DMatrix<C64> {
        let n = self.rank;
        let g = self.coordinate_jets(point, 0);
        DMatrix::from_fn(n, n, |i, j| g[i * n + j].value())
    }

    /// `max |g_{μν̄} − conj(g_{νμ̄})|` at `point`.
    pub fn hermitian_defect(&self, point: &[f64]) -> f64 {
        let m = self.matrix_at(point);
        (&m - m.adjoint()).iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn min_eigenvalue(&self, point: &[f64]) -> f64 {
        min_hermitian_eigenvalue(&self.matrix_at(point))
    }
}

/// `g_{μν̄} = Σ E[a][μ] h_{ab̄} conj(E[b][ν])`.
pub fn coframe_metric_jets(n: usize, e: &[Jet], h: &[Jet]) -> Vec<Jet> {
    let order = h[0].order().min(e[0].order());
    let mut g = vec![Jet::zero(order); n * n];
    for mu in 0..n {
        for nu in 0..n {
            let mut acc = Jet::zero(order);
            for a in 0..n {
                for b in 0..n {
                    let t = &e[a * n + mu] * &h[a * n + b];
                    acc.add_mul(&t, &e[b * n + nu].conj());
                }
            }
            g[mu * n + nu] = acc;
        }
    }
    g
}

pub fn min_hermitian_eigenvalue(m: &DMatrix<C64>) -> f64 {
    let sym = (m + m.adjoint()).scale(0.5);
    sym.symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min)
}

/// Metric `h` on a trivial rank-`r` bundle, with curvature `F = ∂̄(h⁻¹∂h)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BundleMetricField {
    pub rank: usize,
    /// Row-major `h[α][β]`.
    pub h: Vec<ScalarField>,
}

impl BundleMetricField {
    pub fn identity(rank: usize) -> Self {
        BundleMetricField {
            rank,
            h: (0..rank * rank)
                .map(|k| ScalarField::real(if k / rank == k % rank { 1.0 } else { 0.0 }))
                .collect(),
        }
    }

    /// The metric on `T^{1,0}` induced by `g`, normalised so that its Chern
    /// connection coincides with the Chern connection of `g`.
    pub fn tangent(metric: &MetricField) -> TangentBundle<'_> {
        TangentBundle { metric }
    }

    pub fn matrix_jets(&self, point: &[f64], order: usize) -> Vec<Jet> {
        self.h.iter().map(|f| f.jet(point, order)).collect()
    }

    pub fn matrix_at(&self, point: &[f64]) -> DMatrix<C64> {
        let r = self.rank;
        DMatrix::from_fn(r, r, |i, j| self.h[i * r + j].value(point))
    }
}

/// Borrowed view of `g` as a bundle metric on `T^{1,0}` (its transpose).
pub struct TangentBundle<'a> {
    metric: &'a MetricField,
}

impl TangentBundle<'_> {
    pub fn matrix_jets(&self, point: &[f64], order: usize) -> Vec<Jet> {
        let n = self.metric.rank;
        let g = self.metric.coordinate_jets(point, order);
        (0..n * n).map(|k| g[(k % n) * n + k / n].clone()).collect()
    }
}

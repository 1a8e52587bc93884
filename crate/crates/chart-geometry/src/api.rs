//! Tensor-valued entry points returning [`TensorValue`] dumps.

use crate::bundle::BundleCurvature;
use crate::error::GeometryError;
use crate::fourier::FourierScalarField;
use crate::identities::{lee_form_values, PointGeometry};
use crate::local::ConnectionKind;
use crate::metric::{BundleMetricField, MetricField};
use crate::tensor::{RTensor, TensorValue, Variance};
use num_complex::Complex64 as C64;

use Variance::{Lower, Upper};

pub fn eval_field(field: &FourierScalarField, point: &[f64], derivative: &[usize]) -> Result<C64, GeometryError> {
    field.eval(point, derivative)
}

/// `H` with three lower indices.
pub fn torsion_h(metric: &MetricField, point: &[f64]) -> Result<TensorValue, GeometryError> {
    let lg = metric.local(point, 1)?;
    Ok(TensorValue::from_real(&lg.torsion().values(), &[Lower, Lower, Lower], point))
}

/// `Γ_i{}^k{}_j` stored `[i][k][j]`.
pub fn connection_coeffs(metric: &MetricField, point: &[f64], kind: ConnectionKind) -> Result<TensorValue, GeometryError> {
    let lg = metric.local(point, 1)?;
    Ok(TensorValue::from_real(&lg.connection(kind).values(), &[Lower, Upper, Lower], point))
}

/// `R_{pq}{}^m{}_n` stored `[p][q][m][n]`.
pub fn curvature_tensor(metric: &MetricField, point: &[f64], kind: ConnectionKind) -> Result<TensorValue, GeometryError> {
    let lg = metric.local(point, 2)?;
    Ok(TensorValue::from_real(&lg.curvature(kind).values(), &[Lower, Lower, Upper, Lower], point))
}

pub fn ricci_lc(metric: &MetricField, point: &[f64]) -> Result<TensorValue, GeometryError> {
    let lg = metric.local(point, 2)?;
    Ok(TensorValue::from_real(&lg.ricci().values(), &[Lower, Lower], point))
}

/// `|Ω|_ω`.
pub fn norm_omega(metric: &MetricField, point: &[f64]) -> Result<f64, GeometryError> {
    let lg = metric.local(point, 0)?;
    let det = lg.det.value();
    if !(det.re > 0.0) {
        return Err(GeometryError::NonPositiveDeterminant { det: det.re });
    }
    Ok(lg.norm_omega_sq().value().re.sqrt())
}

/// `F_{μν̄}` as a tensor `[μ][ν̄][α][β]` of endomorphism entries.
pub fn bundle_curvature(h: &BundleMetricField, point: &[f64], chart_rank: usize) -> Result<TensorValue, GeometryError> {
    let b = BundleCurvature::from_jets(h.rank, chart_rank, h.matrix_jets(point, 2))?;
    let n = chart_rank;
    let r = h.rank;
    let mut data = Vec::with_capacity(n * n * r * r);
    for mu in 0..n {
        for nu in 0..n {
            for v in b.f_block(mu, nu) {
                data.push([v.re, v.im]);
            }
        }
    }
    use crate::tensor::{IndexKind, IndexMarker};
    Ok(TensorValue {
        index_spec: vec![
            IndexMarker { variance: Lower, kind: IndexKind::Holomorphic },
            IndexMarker { variance: Lower, kind: IndexKind::Antiholomorphic },
            IndexMarker { variance: Upper, kind: IndexKind::Holomorphic },
            IndexMarker { variance: Lower, kind: IndexKind::Holomorphic },
        ],
        shape: vec![n, n, r, r],
        data,
        point: point.to_vec(),
    })
}

/// Lee form `θ = −J d†ω`.
pub fn lee_form(metric: &MetricField, point: &[f64]) -> Result<TensorValue, GeometryError> {
    let pg = PointGeometry::from_metric(metric, point, 1)?;
    let v: RTensor<C64> = lee_form_values(&pg);
    Ok(TensorValue::from_real(&v, &[Lower], point))
}

//! How far `Tr R^Ch∧R^Ch` is from the `(2,2)` part of `Tr R^H∧R^H`.

use crate::assemble::balanced_residual;
use crate::error::EomError;
use crate::report::{BALANCED_TOL, JET_ORDER};
use chart_geometry::forms::bidegree;
use chart_geometry::identities::trace_rr;
use chart_geometry::tensor::unflatten;
use chart_geometry::{ConnectionKind, Family, MetricField, PointGeometry};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Both traces run over all of `T_ℂX`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GapParts {
    /// Max of the `(3,1)`, `(4,0)` (and conjugate) components of `Tr R^H∧R^H`.
    pub hull_off_22: f64,
    /// Max of `Tr R^Ch∧R^Ch − (Tr R^H∧R^H)^{2,2}`.
    pub chern_minus_hull_22: f64,
}

impl GapParts {
    pub fn max(&self) -> f64 {
        self.hull_off_22.max(self.chern_minus_hull_22)
    }
}

pub fn gap_at(pg: &PointGeometry) -> GapParts {
    let (n, d) = (pg.n(), pg.d());
    let rh = trace_rr(pg, ConnectionKind::Hull, 0..d);
    let rc = trace_rr(pg, ConnectionKind::Chern, 0..d);
    let mut idx = [0usize; 4];
    let mut out = GapParts::default();
    for flat in 0..rh.data.len() {
        unflatten(flat, d, &mut idx);
        if bidegree(&idx, n) == (2, 2) {
            out.chern_minus_hull_22 = out.chern_minus_hull_22.max((rc.data[flat] - rh.data[flat]).norm());
        } else {
            out.hull_off_22 = out.hull_off_22.max(rh.data[flat].norm());
        }
    }
    out
}

/// Unweighted gap over `points`. Kähler metrics are accepted as declared;
/// any other metric must be conformally balanced.
pub fn chern_to_hull_parts(metric: &MetricField, points: &[[f64; 6]]) -> Result<GapParts, EomError> {
    if points.is_empty() {
        return Err(EomError::NoPoints);
    }
    let per: Vec<Result<GapParts, EomError>> = points
        .par_iter()
        .map(|x| {
            let pg = PointGeometry::from_metric(metric, x, JET_ORDER - 1)?;
            if metric.family != Family::Kahler {
                let bal = balanced_residual(&pg)?;
                if !(bal <= BALANCED_TOL) {
                    return Err(EomError::NotBalanced { residual: bal, tol: BALANCED_TOL, point: x.to_vec() });
                }
            }
            Ok(gap_at(&pg))
        })
        .collect();
    let mut acc = GapParts::default();
    for r in per {
        let g = r?;
        acc.hull_off_22 = acc.hull_off_22.max(g.hull_off_22);
        acc.chern_minus_hull_22 = acc.chern_minus_hull_22.max(g.chern_minus_hull_22);
    }
    Ok(acc)
}

/// `α′` times the largest gap component: the size of what replacing the
/// Hull by the Chern connection changes in the anomaly term.
pub fn chern_to_hull_gap(metric: &MetricField, alpha_prime: f64, points: &[[f64; 6]]) -> Result<f64, EomError> {
    Ok(alpha_prime.abs() * chern_to_hull_parts(metric, points)?.max())
}

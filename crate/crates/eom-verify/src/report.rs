use crate::assemble::{balanced_residual, point_residuals, PointResiduals};
use crate::error::EomError;
use chart_geometry::{BundleCurvature, BundleMetricField, MetricField, PointGeometry};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write;

/// Tolerance on `d(|Ω|ω²)` below which a metric counts as conformally balanced.
pub const BALANCED_TOL: f64 = 1e-8;
/// Jet order used for every point (the `F` divergence needs three).
pub const JET_ORDER: usize = 3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EomMetadata {
    pub points: Vec<[f64; 6]>,
    pub alpha_prime: f64,
    pub scenario: String,
}

/// Max-norm residuals of the heterotic field equations over a point set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EomResidualReport {
    #[serde(rename = "div_h")]
    pub h_divergence: f64,
    #[serde(rename = "div_f")]
    pub f_divergence: f64,
    #[serde(rename = "einstein")]
    pub einstein_holomorphic: f64,
    pub dilaton: f64,
    /// The individual groupings behind the four entries above.
    pub parts: PointResiduals,
    pub metadata: EomMetadata,
}

impl EomResidualReport {
    fn from_parts(parts: PointResiduals, metadata: EomMetadata) -> Self {
        EomResidualReport {
            h_divergence: parts.div_h,
            f_divergence: parts.div_f,
            einstein_holomorphic: parts.eom_ddbar.max(parts.einstein_gauge),
            dilaton: parts.dilaton3.max(parts.trace_einstein).max(parts.trace_gauge),
            parts,
            metadata,
        }
    }

    pub fn with_scenario(mut self, id: impl Into<String>) -> Self {
        self.metadata.scenario = id.into();
        self
    }

    pub fn is_valid(&self) -> bool {
        let main = [self.h_divergence, self.f_divergence, self.einstein_holomorphic, self.dilaton];
        main.iter().chain(self.parts.entries().iter().map(|(_, v)| v)).all(|v| v.is_finite() && *v >= 0.0)
    }

    pub fn max_residual(&self) -> f64 {
        [self.h_divergence, self.f_divergence, self.einstein_holomorphic, self.dilaton].into_iter().fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "scenario    {}", if self.metadata.scenario.is_empty() { "-" } else { &self.metadata.scenario });
        let _ = writeln!(s, "alpha'      {}", self.metadata.alpha_prime);
        let _ = writeln!(s, "points      {}", self.metadata.points.len());
        let _ = writeln!(s, "{:<20} {:>12}", "equation", "residual");
        for (k, v) in [
            ("div_h", self.h_divergence),
            ("div_f", self.f_divergence),
            ("einstein", self.einstein_holomorphic),
            ("dilaton", self.dilaton),
        ] {
            let _ = writeln!(s, "{k:<20} {v:>12.3e}");
        }
        for (k, v) in self.parts.entries() {
            let _ = writeln!(s, "  {k:<18} {v:>12.3e}");
        }
        s
    }
}

fn check_points(points: &[[f64; 6]]) -> Result<(), EomError> {
    if points.is_empty() {
        return Err(EomError::NoPoints);
    }
    Ok(())
}

/// Residuals of the field equations for `g` and the bundle metric `h`, with
/// `Φ = −½ log |Ω|_ω`. Fails unless `g` is conformally balanced at every point.
pub fn eom_residuals(
    metric: &MetricField,
    h: &BundleMetricField,
    alpha_prime: f64,
    points: &[[f64; 6]],
) -> Result<EomResidualReport, EomError> {
    check_points(points)?;
    let per: Vec<Result<PointResiduals, EomError>> = points
        .par_iter()
        .map(|x| {
            let pg = PointGeometry::from_metric(metric, x, JET_ORDER)?;
            let bal = balanced_residual(&pg)?;
            if !(bal <= BALANCED_TOL) {
                return Err(EomError::NotBalanced { residual: bal, tol: BALANCED_TOL, point: x.to_vec() });
            }
            let b = BundleCurvature::from_jets(h.rank, metric.rank, h.matrix_jets(x, JET_ORDER))?;
            Ok(point_residuals(&pg, Some(&b), alpha_prime))
        })
        .collect();
    let mut acc = PointResiduals::default();
    for r in per {
        acc = acc.max(r?);
    }
    Ok(EomResidualReport::from_parts(
        acc,
        EomMetadata { points: points.to_vec(), alpha_prime, scenario: String::new() },
    ))
}

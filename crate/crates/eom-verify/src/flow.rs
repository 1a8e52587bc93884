//! The anomaly flow written as a flow of the metric tensor.

use crate::assemble::einstein_tensor;
use chart_geometry::forms::trace_wedge;
use chart_geometry::identities::trace_rr;
use chart_geometry::{BundleCurvature, ConnectionKind, PointGeometry};
use hodge_spectral::sqrt::{lambda_22, M3};
use num_complex::Complex64 as C64;

fn component_22(pg: &PointGeometry, y: &chart_geometry::tensor::VTensor) -> [C64; 9] {
    let n = pg.n();
    let pairs = [(0, 1), (0, 2), (1, 2)];
    std::array::from_fn(|k| {
        let (i, j) = (pairs[k / 3], pairs[k % 3]);
        *y.at(&[i.0, i.1, n + j.0, n + j.1])
    })
}

/// `∂ₜ g_{αβ̄}` from `(1/2|Ω|) Λ_ω (i∂∂̄ω − α′(Tr R∧R − Tr F∧F))`.
pub fn flow_metric_rate(pg: &PointGeometry, bundle: Option<&BundleCurvature>, alpha_prime: f64) -> M3 {
    let n = pg.n();
    let g = M3::from_fn(|a, b| pg.lg.g[a * n + b].value());
    let x = pg.ddbar_omega();
    let anomaly = anomaly_form(pg, bundle);
    let mut psi = component_22(pg, x);
    let an = component_22(pg, &anomaly);
    for k in 0..9 {
        psi[k] -= an[k] * alpha_prime;
    }
    let l = lambda_22(&g, &psi);
    let s = 1.0 / (2.0 * pg.lg.norm_omega_sq().value().re.sqrt());
    // δω = i δg
    M3::from_fn(|a, b| l[a * 3 + b] * C64::new(0.0, -s))
}

/// `Tr R^Ch∧R^Ch − Tr F∧F` with holomorphic traces.
fn anomaly_form(pg: &PointGeometry, bundle: Option<&BundleCurvature>) -> chart_geometry::tensor::VTensor {
    let rr = trace_rr(pg, ConnectionKind::Chern, 0..pg.n());
    match bundle {
        Some(b) => rr.sub(&trace_wedge(&b.f, &b.f, 0..b.r).values()),
        None => rr,
    }
}

/// The same rate from the Riemannian side:
/// `(e^{2Φ}/2)(−R_{αβ̄} − 2∇_α∇_{β̄}Φ + ¼H_{αmn}H_{β̄}{}^{mn}) + α′(e^{2Φ}/2) iΛ_ω(Tr R∧R − Tr F∧F)_{αβ̄}`.
pub fn ricci_metric_rate(pg: &PointGeometry, bundle: Option<&BundleCurvature>, alpha_prime: f64) -> M3 {
    let n = pg.n();
    let e2phi = 1.0 / pg.lg.norm_omega_sq().value().re.sqrt();
    let e = einstein_tensor(pg);
    let g = M3::from_fn(|a, b| pg.lg.g[a * n + b].value());
    let an = lambda_22(&g, &component_22(pg, &anomaly_form(pg, bundle)));
    M3::from_fn(|a, b| {
        -e.at(&[a, n + b]) * (e2phi / 2.0) + an[a * 3 + b] * C64::new(0.0, alpha_prime * e2phi / 2.0)
    })
}

/// Max entry of the difference of the two rates.
pub fn ricci_flow_defect(pg: &PointGeometry, bundle: Option<&BundleCurvature>, alpha_prime: f64) -> f64 {
    (flow_metric_rate(pg, bundle, alpha_prime) - ricci_metric_rate(pg, bundle, alpha_prime))
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max)
}

/// `max |δg|`, for scaling the defect.
pub fn rate_scale(pg: &PointGeometry, bundle: Option<&BundleCurvature>, alpha_prime: f64) -> f64 {
    flow_metric_rate(pg, bundle, alpha_prime).iter().map(|c| c.norm()).fold(0.0, f64::max)
}


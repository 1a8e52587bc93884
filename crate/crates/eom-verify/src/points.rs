//! Evaluation points: a `3⁶` lattice plus random points.

use chart_geometry::MetricField;
use geometry_scenarios::random_points;

pub const LATTICE_SIDE: usize = 3;
pub const RANDOM_POINTS: usize = 20;

/// The lattice `{0, 1/3, 2/3}⁶` scaled by the chart periods, then
/// `RANDOM_POINTS` uniform points in the period box.
pub fn standard_points(metric: &MetricField, seed: u64) -> Vec<[f64; 6]> {
    let per: Vec<f64> = (0..6).map(|a| metric.periods.get(a).copied().unwrap_or(1.0)).collect();
    let m = LATTICE_SIDE;
    let mut out = Vec::with_capacity(m.pow(6) + RANDOM_POINTS);
    for flat in 0..m.pow(6) {
        let mut k = flat;
        let mut p = [0.0; 6];
        for (a, x) in p.iter_mut().enumerate() {
            *x = (k % m) as f64 / m as f64 * per[a];
            k /= m;
        }
        out.push(p);
    }
    for r in random_points(seed, RANDOM_POINTS) {
        out.push(std::array::from_fn(|a| r[a] * per[a]));
    }
    out
}

#![allow(dead_code)]

use chart_geometry::identities::trace_rr;
use chart_geometry::forms::trace_wedge;
use chart_geometry::tensor::VTensor;
use chart_geometry::{BundleCurvature, BundleMetricField, ConnectionKind, MetricField, PointGeometry};
use hodge_spectral::{Grid, SpectralForm};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random coefficients up to frequency `kmax` on every resolved axis.
pub fn random_form(seed: u64, p: usize, q: usize, grid: Grid, kmax: i32) -> SpectralForm {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = SpectralForm::zero(p, q, grid);
    for c in f.comps.iter_mut() {
        for (k, v) in c.iter_mut().enumerate() {
            let idx = grid.index(k);
            let ok = (0..6).all(|a| grid.frequency(a, idx[a]).abs() <= kmax && 2 * grid.frequency(a, idx[a]).abs() < grid.shape[a].max(2) as i32);
            if ok {
                *v = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
    }
    f
}

/// Grid-space inner product `⨍ Σ_c a_c conj(b_c)`, independent of the
/// coefficient representation.
pub fn grid_inner(a: &SpectralForm, b: &SpectralForm) -> C64 {
    let (va, vb) = (a.values(), b.values());
    let n = a.grid.len() as f64;
    va.iter().zip(&vb).flat_map(|(x, y)| x.iter().zip(y)).map(|(x, y)| x * y.conj()).sum::<C64>() / n
}

pub fn planar_grid(n: usize) -> Grid {
    Grid::on_first(2, n)
}

fn components_22(t: &VTensor) -> Vec<C64> {
    let pairs = [[0, 1], [0, 2], [1, 2]];
    let mut out = Vec::new();
    for i in &pairs {
        for j in &pairs {
            out.push(*t.at(&[i[0], i[1], 3 + j[0], 3 + j[1]]));
        }
    }
    out
}

/// `Tr R∧R` of the Chern connection from chart-geometry, as `(2,2)` components.
pub fn direct_trace_rr(m: &MetricField, x: &[f64]) -> Vec<C64> {
    let pg = PointGeometry::from_metric(m, x, 2).unwrap();
    components_22(&trace_rr(&pg, ConnectionKind::Chern, 0..3))
}

/// `Tr F∧F` of a bundle metric from chart-geometry.
pub fn direct_trace_ff(h: &BundleMetricField, x: &[f64]) -> Vec<C64> {
    let b = BundleCurvature::from_jets(h.rank, 3, h.matrix_jets(x, 2)).unwrap();
    components_22(&trace_wedge(&b.f, &b.f, 0..b.r).values())
}

pub fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn sample_points(seed: u64, count: usize) -> Vec<[f64; 6]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut p = [0.0; 6];
            for v in p.iter_mut().take(4) {
                *v = rng.gen_range(0.0..1.0);
            }
            p
        })
        .collect()
}

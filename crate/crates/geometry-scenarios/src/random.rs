//! Random hermitian and Kähler-potential metrics on the flat 6-torus.

use chart_geometry::{BundleMetricField, Family, FourierScalarField, Frame, MetricField, ScalarField};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DIM: usize = 6;
/// Modes drawn per metric entry.
const MODES_PER_ENTRY: usize = 4;

#[derive(Clone, Debug, PartialEq)]
pub struct RandomMetricReport {
    pub amplitude_used: f64,
    pub regenerations: usize,
    pub min_eigenvalue: f64,
}

fn random_k(rng: &mut ChaCha8Rng, cutoff: i32, active: usize) -> Vec<i32> {
    loop {
        let k: Vec<i32> = (0..DIM).map(|a| if a < active { rng.gen_range(-cutoff..=cutoff) } else { 0 }).collect();
        if k.iter().any(|&v| v != 0) {
            return k;
        }
    }
}

fn random_c(rng: &mut ChaCha8Rng, scale: f64) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * scale
}

/// A sparse random Fourier field with `MODES_PER_ENTRY` modes of size `≤ amp`.
pub fn random_field(rng: &mut ChaCha8Rng, cutoff: i32, amp: f64, real: bool) -> FourierScalarField {
    random_field_on(rng, cutoff, amp, real, DIM)
}

/// As [`random_field`], with frequencies only along the first `active` real axes.
pub fn random_field_on(rng: &mut ChaCha8Rng, cutoff: i32, amp: f64, real: bool, active: usize) -> FourierScalarField {
    let mut f = FourierScalarField::zero(DIM);
    for _ in 0..MODES_PER_ENTRY {
        let k = random_k(rng, cutoff, active);
        let c = random_c(rng, amp / MODES_PER_ENTRY as f64);
        if real {
            f.add_real_mode(k, c * 0.5);
        } else {
            f.add_mode(k, c);
        }
    }
    f
}

/// Points of the regular `m⁶` grid on the unit torus.
pub fn grid_points(m: usize) -> impl Iterator<Item = [f64; DIM]> {
    (0..m.pow(DIM as u32)).map(move |mut i| {
        let mut p = [0.0; DIM];
        for v in p.iter_mut() {
            *v = (i % m) as f64 / m as f64;
            i /= m;
        }
        p
    })
}

/// Grid used for positivity scans.
pub const POSITIVITY_GRID: usize = 4;

pub fn min_eigenvalue_on_grid(m: &MetricField, grid: usize) -> f64 {
    grid_points(grid).map(|p| m.min_eigenvalue(&p)).fold(f64::INFINITY, f64::min)
}

fn hermitian_from_fields(rng: &mut ChaCha8Rng, cutoff: i32, amp: f64) -> Vec<ScalarField> {
    hermitian_fields_on(rng, cutoff, amp, DIM)
}

fn hermitian_fields_on(rng: &mut ChaCha8Rng, cutoff: i32, amp: f64, active: usize) -> Vec<ScalarField> {
    let n = 3;
    let mut entries: Vec<Option<FourierScalarField>> = vec![None; n * n];
    for mu in 0..n {
        for nu in mu..n {
            if mu == nu {
                let mut f = random_field_on(rng, cutoff, amp, true, active);
                f.add_mode(vec![0; DIM], C64::new(1.0, 0.0));
                entries[mu * n + nu] = Some(f);
            } else {
                let f = random_field_on(rng, cutoff, amp, false, active);
                entries[nu * n + mu] = Some(f.conjugate());
                entries[mu * n + nu] = Some(f);
            }
        }
    }
    entries.into_iter().map(|f| ScalarField::Fourier(f.unwrap())).collect()
}

fn build(seed: u64, cutoff: i32, amplitude: f64, gen: impl Fn(&mut ChaCha8Rng, f64) -> MetricField) -> (MetricField, RandomMetricReport) {
    assert!(amplitude <= 0.1 + 1e-15, "amplitude must be at most 0.1");
    let _ = cutoff;
    let mut amp = amplitude;
    let mut regenerations = 0;
    loop {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = gen(&mut rng, amp);
        let min = min_eigenvalue_on_grid(&m, POSITIVITY_GRID);
        if min > 0.0 || amp == 0.0 {
            return (m, RandomMetricReport { amplitude_used: amp, regenerations, min_eigenvalue: min });
        }
        amp *= 0.5;
        regenerations += 1;
    }
}

/// `g = δ + perturbation` with random sparse Fourier entries up to frequency `cutoff`.
pub fn make_random_metric(seed: u64, cutoff: i32, amplitude: f64) -> (MetricField, RandomMetricReport) {
    build(seed, cutoff, amplitude, |rng, amp| MetricField {
        rank: 3,
        g: hermitian_from_fields(rng, cutoff, amp),
        omega_coeff_f: ScalarField::real(1.0),
        frame: Frame::Identity,
        periods: vec![1.0; DIM],
        family: Family::Generic,
    })
}

/// A random metric depending only on `(z¹, z²)` with frequencies `|k|∞ ≤ 1`.
/// Its fields are resolved exactly by small grids on the first four axes,
/// which the spectral secondary-class code relies on.
pub fn make_planar_metric(seed: u64, amplitude: f64) -> (MetricField, RandomMetricReport) {
    build(seed, 1, amplitude, |rng, amp| MetricField {
        rank: 3,
        g: hermitian_fields_on(rng, 1, amp, 4),
        omega_coeff_f: ScalarField::real(1.0),
        frame: Frame::Identity,
        periods: vec![1.0; DIM],
        family: Family::Generic,
    })
}

/// A rank-3 bundle metric with the same distribution as [`make_planar_metric`].
pub fn make_planar_bundle(seed: u64, amplitude: f64) -> BundleMetricField {
    let (m, _) = make_planar_metric(seed ^ 0x5bd1_e995, amplitude);
    BundleMetricField { rank: 3, h: m.g }
}

/// Random real potential scaled so its complex Hessian has size about `amplitude`.
pub fn random_potential(seed: u64, cutoff: i32, amplitude: f64) -> FourierScalarField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let w = 2.0 * std::f64::consts::PI * cutoff.max(1) as f64;
    random_field(&mut rng, cutoff, amplitude / (w * w), true)
}

/// `g_{μν̄} = δ_{μν} + ∂_μ ∂_ν̄ φ`.
pub fn kahler_metric_from_potential(phi: &FourierScalarField) -> MetricField {
    let n = 3;
    let mut g = Vec::with_capacity(n * n);
    for mu in 0..n {
        for nu in 0..n {
            let mut f = phi.wirtinger(mu, false).wirtinger(nu, true);
            if mu == nu {
                f.add_mode(vec![0; DIM], C64::new(1.0, 0.0));
            }
            g.push(ScalarField::Fourier(f));
        }
    }
    MetricField {
        rank: 3,
        g,
        omega_coeff_f: ScalarField::real(1.0),
        frame: Frame::Identity,
        periods: vec![1.0; DIM],
        family: Family::Kahler,
    }
}

pub fn make_kahler_metric(seed: u64, cutoff: i32, amplitude: f64) -> (MetricField, RandomMetricReport) {
    build(seed, cutoff, amplitude, |_, amp| kahler_metric_from_potential(&random_potential(seed, cutoff, amp)))
}

/// Uniform random points in the unit torus.
pub fn random_points(seed: u64, count: usize) -> Vec<[f64; DIM]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| std::array::from_fn(|_| rng.gen_range(0.0..1.0))).collect()
}

//! Bundle metrics for the Yang–Mills checks.

use chart_geometry::{BundleMetricField, ScalarField};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn coord_product(a: usize, ca: bool, b: usize, cb: bool) -> ScalarField {
    let f = |i, c| if c { ScalarField::zbar(i) } else { ScalarField::z(i) };
    f(a, ca).times(f(b, cb))
}

/// `h = Pᴴ diag(e^{φ_i}) P` on a trivial rank-3 bundle with constant `P` and
/// each `φ_i` a real quadratic in `(x, y)` with `φ_{xx̄} + φ_{yȳ} = 0`.
///
/// On the Iwasawa family the base block of `g⁻¹` is `e^{-u} δ`, so such `h`
/// satisfies `g^{μν̄} F_{μν̄} = 0` for every `u`.
pub fn make_hym_bundle(seed: u64, scale: f64) -> BundleMetricField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = 3;
    let phis: Vec<ScalarField> = (0..r)
        .map(|_| {
            let a = rng.gen_range(-1.0..1.0) * scale;
            let b = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * scale;
            // a(|x|² − |y|²) + b x ȳ + b̄ x̄ y
            coord_product(0, false, 0, true)
                .scaled(C64::new(a, 0.0))
                .plus(coord_product(1, false, 1, true).scaled(C64::new(-a, 0.0)))
                .plus(coord_product(0, false, 1, true).scaled(b))
                .plus(coord_product(0, true, 1, false).scaled(b.conj()))
        })
        .collect();
    let p: Vec<C64> = (0..r * r)
        .map(|k| {
            let d = if k / r == k % r { 1.0 } else { 0.0 };
            C64::new(d + 0.3 * rng.gen_range(-1.0..1.0), 0.3 * rng.gen_range(-1.0..1.0))
        })
        .collect();
    let d: Vec<ScalarField> = phis.into_iter().map(|f| f.exp()).collect();
    let mut h = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            // (Pᴴ D P)_{ij} = Σ_k conj(P_{ki}) d_k P_{kj}
            let mut terms = Vec::new();
            for k in 0..r {
                let c = p[k * r + i].conj() * p[k * r + j];
                terms.push(d[k].clone().scaled(c));
            }
            h.push(ScalarField::Sum(terms));
        }
    }
    BundleMetricField { rank: r, h }
}

/// Line bundle `h = e^φ` with `φ = a(|x|² − |y|²) + b x ȳ + b̄ x̄ y`, which
/// satisfies the trace condition on every metric of the Iwasawa family.
pub fn make_abelian_hym_bundle(seed: u64, scale: f64) -> BundleMetricField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = rng.gen_range(-1.0..1.0) * scale;
    let b = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * scale;
    let phi = coord_product(0, false, 0, true)
        .scaled(C64::new(a, 0.0))
        .plus(coord_product(1, false, 1, true).scaled(C64::new(-a, 0.0)))
        .plus(coord_product(0, false, 1, true).scaled(b))
        .plus(coord_product(0, true, 1, false).scaled(b.conj()));
    BundleMetricField { rank: 1, h: vec![phi.exp()] }
}

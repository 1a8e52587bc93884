use hodge_spectral::sqrt::{metric_variation, norm_omega, psi_of, M3};
use hodge_spectral::{sqrt_metric_from_psi, HodgeError};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_metric(rng: &mut ChaCha8Rng) -> M3 {
    let a = M3::from_fn(|_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    a * a.adjoint() + M3::identity() * C64::new(0.3, 0.0)
}

fn random_hermitian(rng: &mut ChaCha8Rng) -> M3 {
    let a = M3::from_fn(|_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    a + a.adjoint()
}

fn max_abs(m: &M3) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

#[test]
fn flat_psi_gives_flat_metric() {
    let f = C64::new(1.0, 0.0);
    let g = sqrt_metric_from_psi(&psi_of(&M3::identity(), f), f).unwrap();
    assert!(max_abs(&(g - M3::identity())) < 1e-15);
    assert!((norm_omega(&g, f) - 1.0).abs() < 1e-15);
}

#[test]
fn roundtrip_on_random_metrics() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let g = random_metric(&mut rng);
        let f = C64::from_polar(rng.gen_range(0.2..3.0), rng.gen_range(0.0..6.0));
        let psi = psi_of(&g, f);
        let back = sqrt_metric_from_psi(&psi, f).unwrap();
        // the defining relation, then the metric itself
        let again = psi_of(&back, f);
        let scale = psi.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let rel = psi.iter().zip(&again).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) / scale;
        assert!(rel <= 1e-10, "relation defect {rel:e}");
        assert!(max_abs(&(back - g)) <= 1e-10 * max_abs(&g));
    }
}

#[test]
fn variation_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10 {
        let g = random_metric(&mut rng);
        let f = C64::new(rng.gen_range(0.5..2.0), 0.0);
        // a real (2,2) variation: the Ψ of a nearby metric minus Ψ
        let dg = random_hermitian(&mut rng);
        let psi = psi_of(&g, f);
        let e = 1e-3;
        let dpsi: Vec<C64> = psi_of(&(g + dg * C64::new(e, 0.0)), f).iter().zip(&psi).map(|(a, b)| (a - b) / e).collect();
        let t = 1e-5;
        let shift = |s: f64| -> M3 {
            let p: Vec<C64> = psi.iter().zip(&dpsi).map(|(a, d)| a + d * s).collect();
            sqrt_metric_from_psi(&p, f).unwrap()
        };
        let fd = (shift(t) - shift(-t)) / C64::new(2.0 * t, 0.0);
        let an = metric_variation(&g, f, &dpsi);
        let err = max_abs(&(fd - an)) / max_abs(&an);
        assert!(err <= 1e-6, "variation error {err:e}");
    }
}

#[test]
fn non_positive_psi_is_rejected() {
    let f = C64::new(1.0, 0.0);
    let mut psi = psi_of(&M3::identity(), f).to_vec();
    psi[8] = -psi[8];
    assert!(matches!(sqrt_metric_from_psi(&psi, f), Err(HodgeError::PsiNotPositive { .. })));
    assert!(matches!(sqrt_metric_from_psi(&psi[..4], f), Err(HodgeError::ComponentCount { .. })));
    let zero = vec![C64::new(0.0, 0.0); 9];
    assert!(sqrt_metric_from_psi(&zero, f).is_err());
}

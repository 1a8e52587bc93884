#![allow(dead_code)]

use chart_geometry::{Family, FourierScalarField, Frame, MetricField, ScalarField};
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn random_field(rng: &mut ChaCha8Rng, cutoff: i32, amp: f64, modes: usize, real: bool) -> FourierScalarField {
    let mut f = FourierScalarField::zero(6);
    for _ in 0..modes {
        let mut k = vec![0; 6];
        while k.iter().all(|&v| v == 0) {
            for v in k.iter_mut() {
                *v = rng.gen_range(-cutoff..=cutoff);
            }
        }
        let a = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * (amp / modes as f64);
        if real {
            f.add_real_mode(k, a * 0.5);
        } else {
            f.add_mode(k, a);
        }
    }
    f
}

/// Hermitian `δ + perturbation` with entries of size about `amp`.
pub fn random_metric(seed: u64, cutoff: i32, amp: f64) -> MetricField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = vec![FourierScalarField::zero(6); 9];
    for mu in 0..3 {
        for nu in mu..3 {
            if mu == nu {
                let mut f = random_field(&mut rng, cutoff, amp, 4, true);
                f.add_mode(vec![0; 6], c(1.0, 0.0));
                g[mu * 3 + nu] = f;
            } else {
                let f = random_field(&mut rng, cutoff, amp, 4, false);
                g[nu * 3 + mu] = f.conjugate();
                g[mu * 3 + nu] = f;
            }
        }
    }
    MetricField {
        rank: 3,
        g: g.into_iter().map(ScalarField::Fourier).collect(),
        omega_coeff_f: ScalarField::real(1.0),
        frame: Frame::Identity,
        periods: vec![1.0; 6],
        family: Family::Generic,
    }
}

pub fn random_potential(seed: u64, cutoff: i32, amp: f64) -> FourierScalarField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = 2.0 * std::f64::consts::PI * cutoff as f64;
    random_field(&mut rng, cutoff, amp / (w * w), 4, true)
}

pub fn kahler_metric(phi: &FourierScalarField) -> MetricField {
    let mut g = Vec::new();
    for mu in 0..3 {
        for nu in 0..3 {
            let mut f = phi.wirtinger(mu, false).wirtinger(nu, true);
            if mu == nu {
                f.add_mode(vec![0; 6], c(1.0, 0.0));
            }
            g.push(ScalarField::Fourier(f));
        }
    }
    MetricField {
        rank: 3,
        g,
        omega_coeff_f: ScalarField::real(1.0),
        frame: Frame::Identity,
        periods: vec![1.0; 6],
        family: Family::Kahler,
    }
}

/// Random real `u(x, y)` on the base of the Iwasawa chart.
pub fn base_field(seed: u64, amp: f64) -> FourierScalarField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut u = FourierScalarField::zero(6);
    for _ in 0..4 {
        let mut k = vec![0; 6];
        while k.iter().all(|&v| v == 0) {
            for v in k.iter_mut().take(4) {
                *v = rng.gen_range(-2..=2);
            }
        }
        u.add_real_mode(k, c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * (amp / 8.0));
    }
    u
}

pub fn iwasawa_metric(u: &FourierScalarField) -> MetricField {
    let eu = ScalarField::Fourier(u.clone()).exp();
    let mut g = vec![ScalarField::zero(); 9];
    g[0] = eu.clone();
    g[4] = eu;
    g[8] = ScalarField::real(1.0);
    MetricField {
        rank: 3,
        g,
        omega_coeff_f: ScalarField::real(1.0),
        frame: Frame::Iwasawa,
        periods: vec![1.0; 6],
        family: Family::ConformallyBalanced,
    }
}

pub fn random_points(seed: u64, count: usize) -> Vec<[f64; 6]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| std::array::from_fn(|_| rng.gen_range(0.0..1.0))).collect()
}

/// Identity-frame entry `g_{μν̄}` as a Fourier field.
pub fn entry(m: &MetricField, mu: usize, nu: usize) -> &FourierScalarField {
    match &m.g[mu * m.rank + nu] {
        ScalarField::Fourier(f) => f,
        _ => panic!("expected a Fourier entry"),
    }
}

/// Wirtinger derivative of a field from exact real derivatives.
/// `holo[μ]` and `anti[ν]` count applications of `∂_μ` and `∂_ν̄`.
pub fn wirtinger(f: &FourierScalarField, p: &[f64], holo: &[usize], anti: &[usize]) -> C64 {
    let mut f = f.clone();
    for &mu in holo {
        f = f.derivative(2 * mu).add(&f.derivative(2 * mu + 1).scaled(c(0.0, -1.0))).scaled(c(0.5, 0.0));
    }
    for &nu in anti {
        f = f.derivative(2 * nu).add(&f.derivative(2 * nu + 1).scaled(c(0.0, 1.0))).scaled(c(0.5, 0.0));
    }
    f.value(p)
}

pub fn matrix(m: &MetricField, p: &[f64], holo: &[usize], anti: &[usize]) -> DMatrix<C64> {
    DMatrix::from_fn(3, 3, |i, j| wirtinger(entry(m, i, j), p, holo, anti))
}

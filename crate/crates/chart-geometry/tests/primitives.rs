mod common;

use chart_geometry::jet::from_real_derivatives;
use chart_geometry::*;
use common::*;
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

#[test]
fn derivative_of_constant_vanishes() {
    let f = FourierScalarField::constant(6, c(2.5, -1.0));
    let p = [0.3; 6];
    assert_eq!(eval_field(&f, &p, &[]).unwrap(), c(2.5, -1.0));
    for j in 0..6 {
        let mut d = [0; 6];
        d[j] = 1;
        assert_eq!(eval_field(&f, &p, &d).unwrap(), c(0.0, 0.0));
        d[j] = 3;
        assert_eq!(eval_field(&f, &p, &d).unwrap(), c(0.0, 0.0));
    }
}

#[test]
fn sine_derivative_at_origin() {
    // sin 2πx = (e^{2πix} − e^{−2πix}) / 2i
    let mut f = FourierScalarField::zero(6);
    f.add_real_mode(vec![1, 0, 0, 0, 0, 0], c(0.0, -0.5));
    let v = eval_field(&f, &[0.0; 6], &[1]).unwrap();
    assert!((v - c(2.0 * PI, 0.0)).norm() < 1e-13);
}

#[test]
fn mixed_derivative_matches_finite_differences() {
    let m = random_metric(11, 2, 0.08);
    let f = entry(&m, 0, 1);
    let h = 1e-4;
    for p in random_points(5, 10) {
        let exact = eval_field(f, &p, &[1, 1]).unwrap();
        let at = |dx: f64, dy: f64| {
            let mut q = p;
            q[0] += dx;
            q[1] += dy;
            f.value(&q)
        };
        let fd = (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4.0 * h * h);
        assert!((fd - exact).norm() <= 1e-6 * exact.norm().max(1.0), "{fd} vs {exact}");
    }
}

#[test]
fn derivative_order_above_four_is_rejected() {
    let f = FourierScalarField::constant(6, c(1.0, 0.0));
    let e = eval_field(&f, &[0.0; 6], &[2, 3]).unwrap_err();
    assert!(matches!(e, GeometryError::UnsupportedOrder { order: 5, .. }));
}

#[test]
fn real_taylor_jet_matches_spectral_jet() {
    let m = random_metric(3, 2, 0.08);
    let f = entry(&m, 1, 2);
    let p = [0.1, 0.7, 0.2, 0.4, 0.9, 0.3];
    let spectral = f.jet(&p, 3);
    let taylor = from_real_derivatives(3, 6, |a| f.eval(&p, a).unwrap());
    let diff = spectral.coeffs().iter().zip(taylor.coeffs()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    assert!(diff < 1e-10, "{diff}");
}

#[test]
fn flat_metric_has_no_torsion_connection_or_curvature() {
    let m = MetricField::flat(3);
    let p = [0.2; 6];
    assert_eq!(torsion_h(&m, &p).unwrap().max_norm(), 0.0);
    for k in ConnectionKind::ALL {
        assert!(connection_coeffs(&m, &p, k).unwrap().max_norm() < 1e-15);
        assert!(curvature_tensor(&m, &p, k).unwrap().max_norm() < 1e-15);
    }
    assert!(ricci_lc(&m, &p).unwrap().max_norm() < 1e-15);
    assert!((norm_omega(&m, &p).unwrap() - 1.0).abs() < 1e-15);
    assert!(lee_form(&m, &p).unwrap().max_norm() < 1e-15);
}

#[test]
fn kahler_potential_metric_is_torsion_free() {
    for seed in 0..5 {
        let m = kahler_metric(&random_potential(seed, 2, 0.05));
        for p in random_points(seed, 4) {
            assert!(torsion_h(&m, &p).unwrap().max_norm() <= 1e-10);
            assert!(lee_form(&m, &p).unwrap().max_norm() <= 1e-10);
        }
    }
}

#[test]
fn iwasawa_torsion_matches_hand_computation() {
    // H = −θ∧dx∧dȳ + dy∧dx̄∧θ̄ for θ = dz − x̄dy, indices (x, y, z, x̄, ȳ, z̄)
    let m = iwasawa_metric(&FourierScalarField::zero(6));
    for p in random_points(2, 5) {
        let h = torsion_h(&m, &p).unwrap();
        let x = c(p[0], p[1]);
        let mut expect = std::collections::HashMap::new();
        expect.insert([0, 2, 4], c(1.0, 0.0));
        expect.insert([0, 1, 4], -x.conj());
        expect.insert([1, 3, 5], c(1.0, 0.0));
        expect.insert([1, 3, 4], -x);
        for a in 0..6 {
            for b in (a + 1)..6 {
                for cc in (b + 1)..6 {
                    let want = expect.get(&[a, b, cc]).copied().unwrap_or_default();
                    assert!((h.get(&[a, b, cc]) - want).norm() < 1e-13, "{a}{b}{cc}");
                }
            }
        }
    }
}

#[test]
fn torsion_components_match_finite_differences() {
    // H_{αβσ̄} = −(∂_α g_{βσ̄} − ∂_β g_{ασ̄}) with derivatives from central differences
    let m = random_metric(21, 2, 0.08);
    let step = 1e-4;
    for p in random_points(8, 3) {
        let h = torsion_h(&m, &p).unwrap();
        let dg = |al: usize| -> DMatrix<C64> {
            let shift = |j: usize, s: f64| {
                let mut q = p;
                q[j] += s;
                m.matrix_at(&q)
            };
            let dx = (shift(2 * al, step) - shift(2 * al, -step)) / c(2.0 * step, 0.0);
            let dy = (shift(2 * al + 1, step) - shift(2 * al + 1, -step)) / c(2.0 * step, 0.0);
            (dx - dy * c(0.0, 1.0)) * c(0.5, 0.0)
        };
        let d: Vec<DMatrix<C64>> = (0..3).map(dg).collect();
        let scale = h.max_norm();
        for al in 0..3 {
            for be in 0..3 {
                for s in 0..3 {
                    let fd = -(d[al][(be, s)] - d[be][(al, s)]);
                    let v = h.get(&[al, be, 3 + s]);
                    assert!((fd - v).norm() <= 1e-5 * scale, "{al}{be}{s}");
                }
            }
        }
    }
}

#[test]
fn chern_curvature_matches_direct_oracle() {
    // R_{ν̄μ}{}^κ{}_λ = ∂_ν̄ (∂_μ G · G⁻¹)[λ][κ] with G[λ][σ] = g_{λσ̄}
    let m = random_metric(4, 2, 0.08);
    for p in random_points(3, 3) {
        let r = curvature_tensor(&m, &p, ConnectionKind::Chern).unwrap();
        let g = matrix(&m, &p, &[], &[]);
        let gi = g.clone().try_inverse().unwrap();
        for mu in 0..3 {
            for nu in 0..3 {
                let dm = matrix(&m, &p, &[mu], &[]);
                let dn = matrix(&m, &p, &[], &[nu]);
                let dmn = matrix(&m, &p, &[mu], &[nu]);
                let x = &dmn * &gi - &dm * &gi * &dn * &gi;
                for ka in 0..3 {
                    for la in 0..3 {
                        let v = r.get(&[3 + nu, mu, ka, la]);
                        assert!((v - x[(la, ka)]).norm() <= 1e-9, "{mu}{nu}{ka}{la}: {v} vs {}", x[(la, ka)]);
                    }
                }
            }
        }
    }
}

#[test]
fn chern_curvature_is_type_one_one() {
    let m = random_metric(9, 2, 0.08);
    let p = random_points(1, 1)[0];
    let r = curvature_tensor(&m, &p, ConnectionKind::Chern).unwrap();
    for a in 0..3 {
        for b in 0..3 {
            for x in 0..6 {
                for y in 0..6 {
                    assert!(r.get(&[a, b, x, y]).norm() < 1e-13);
                    assert!(r.get(&[3 + a, 3 + b, x, y]).norm() < 1e-13);
                }
            }
        }
    }
}

#[test]
fn hull_curvature_has_no_holomorphic_two_form_part_into_mixed_blocks() {
    let m = random_metric(10, 2, 0.08);
    for p in random_points(4, 3) {
        let r = curvature_tensor(&m, &p, ConnectionKind::Hull).unwrap();
        for mu in 0..3 {
            for nu in 0..3 {
                for al in 0..3 {
                    for be in 0..3 {
                        assert!(r.get(&[mu, nu, al, be]).norm() <= 1e-9);
                        assert!(r.get(&[mu, nu, 3 + al, be]).norm() <= 1e-9);
                    }
                }
            }
        }
    }
}

#[test]
fn ricci_is_symmetric() {
    let m = random_metric(12, 2, 0.08);
    for p in random_points(6, 4) {
        let r = ricci_lc(&m, &p).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                assert!((r.get(&[a, b]) - r.get(&[b, a])).norm() <= 1e-9);
            }
        }
    }
}

#[test]
fn kahler_ricci_is_ddbar_log_det() {
    for seed in 0..3 {
        let m = kahler_metric(&random_potential(seed + 40, 2, 0.08));
        for p in random_points(seed, 3) {
            let r = ricci_lc(&m, &p).unwrap();
            let g = matrix(&m, &p, &[], &[]);
            let gi = g.try_inverse().unwrap();
            for al in 0..3 {
                for be in 0..3 {
                    let da = matrix(&m, &p, &[al], &[]);
                    let db = matrix(&m, &p, &[], &[be]);
                    let dab = matrix(&m, &p, &[al], &[be]);
                    let ddlog = (&gi * &dab).trace() - (&gi * &da * &gi * &db).trace();
                    let v = r.get(&[al, 3 + be]);
                    assert!((v + ddlog).norm() <= 1e-8, "{v} vs {}", -ddlog);
                }
            }
        }
    }
}

#[test]
fn norm_omega_cases() {
    let p = [0.4, 0.1, 0.7, 0.3, 0.2, 0.9];
    let m = random_metric(5, 2, 0.08);
    let base = norm_omega(&m, &p).unwrap();
    let det = m.matrix_at(&p).determinant();
    assert!((base * base - 1.0 / det.re).abs() < 1e-13);
    let lam = 2.3;
    let mut scaled = m.clone();
    scaled.g = m.g.iter().map(|f| f.clone().scaled(c(lam, 0.0))).collect();
    assert!((norm_omega(&scaled, &p).unwrap() - base * lam.powf(-1.5)).abs() < 1e-13);
    let u = base_field(3, 0.6);
    let iw = iwasawa_metric(&u);
    for q in random_points(4, 5) {
        let want = (-u.value(&q).re).exp();
        assert!((norm_omega(&iw, &q).unwrap() - want).abs() <= 1e-10);
    }
    let mut neg = MetricField::flat(3);
    neg.g[0] = ScalarField::real(-1.0);
    assert!(matches!(norm_omega(&neg, &p), Err(GeometryError::NonPositiveDeterminant { .. })));
}

#[test]
fn singular_metric_is_rejected() {
    let mut m = MetricField::flat(3);
    m.g[8] = ScalarField::zero();
    let p = [0.0; 6];
    assert!(matches!(connection_coeffs(&m, &p, ConnectionKind::Chern), Err(GeometryError::NonInvertibleMetric { .. })));
}

fn bundle_from(entries: Vec<ScalarField>, r: usize) -> BundleMetricField {
    BundleMetricField { rank: r, h: entries }
}

#[test]
fn constant_bundle_metric_is_flat() {
    let mut h = BundleMetricField::identity(2);
    h.h[1] = ScalarField::constant(c(0.2, 0.1));
    h.h[2] = ScalarField::constant(c(0.2, -0.1));
    assert!(bundle_curvature(&h, &[0.3; 6], 3).unwrap().max_norm() < 1e-15);
}

#[test]
fn abelian_bundle_curvature_matches_scalar_oracle() {
    let phi = random_potential(8, 2, 2.0);
    let e = ScalarField::Fourier(phi.clone()).exp();
    let zero = ScalarField::zero();
    let h = bundle_from(vec![e.clone(), zero.clone(), zero, e], 2);
    for p in random_points(2, 3) {
        let f = bundle_curvature(&h, &p, 3).unwrap();
        for mu in 0..3 {
            for nu in 0..3 {
                let want = -wirtinger(&phi, &p, &[mu], &[nu]);
                for a in 0..2 {
                    for b in 0..2 {
                        let w = if a == b { want } else { c(0.0, 0.0) };
                        assert!((f.get(&[mu, nu, a, b]) - w).norm() <= 1e-9);
                    }
                }
            }
        }
    }
}

/// Rank-3 bundle metric `Pᴴ diag(e^{φ_i}) P` depending on the first complex coordinate only.
fn random_bundle(seed: u64) -> BundleMetricField {
    let phis: Vec<FourierScalarField> = (0..3)
        .map(|i| {
            let full = random_potential(seed * 7 + i, 2, 3.0);
            let mut f = FourierScalarField::zero(6);
            for (k, v) in &full.modes {
                let mut k2 = k.clone();
                for x in k2.iter_mut().skip(2) {
                    *x = 0;
                }
                f.add_mode(k2, *v);
            }
            f
        })
        .collect();
    let p = [[c(1.0, 0.0), c(0.3, 0.2), c(-0.1, 0.0)], [c(0.0, 0.1), c(1.0, 0.0), c(0.2, 0.0)], [c(0.1, -0.3), c(0.0, 0.0), c(0.9, 0.0)]];
    let mut h = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            let mut acc = ScalarField::zero();
            for (i, phi) in phis.iter().enumerate() {
                let w = p[i][a].conj() * p[i][b];
                acc = acc.plus(ScalarField::Fourier(phi.clone()).exp().scaled(w));
            }
            h.push(acc);
        }
    }
    bundle_from(h, 3)
}

#[test]
fn bundle_curvature_is_anti_hermitian() {
    let h = random_bundle(1);
    for p in random_points(6, 3) {
        let f = bundle_curvature(&h, &p, 3).unwrap();
        let hm = h.matrix_at(&p);
        for mu in 0..3 {
            for nu in 0..3 {
                let fm = DMatrix::from_fn(3, 3, |a, b| f.get(&[mu, nu, a, b]));
                let fn_ = DMatrix::from_fn(3, 3, |a, b| f.get(&[nu, mu, a, b]));
                let lhs = (&hm * fm).adjoint();
                let rhs = &hm * fn_;
                assert!((lhs - rhs).iter().map(|v| v.norm()).fold(0.0, f64::max) < 1e-10);
            }
        }
    }
}

#[test]
fn trace_of_bundle_curvature_integrates_to_zero() {
    let h = random_bundle(2);
    let m = 24;
    let mut acc = [[c(0.0, 0.0); 3]; 3];
    let mut scale = 0.0f64;
    for i in 0..m {
        for j in 0..m {
            let p = [i as f64 / m as f64, j as f64 / m as f64, 0.1, 0.2, 0.3, 0.4];
            let f = bundle_curvature(&h, &p, 3).unwrap();
            for mu in 0..3 {
                for nu in 0..3 {
                    let t: C64 = (0..3).map(|a| f.get(&[mu, nu, a, a])).sum();
                    scale = scale.max(t.norm());
                    acc[mu][nu] += t / (m * m) as f64;
                }
            }
        }
    }
    assert!(scale > 1e-2);
    for row in acc {
        for v in row {
            assert!(v.norm() < 1e-10, "{v}");
        }
    }
}

#[test]
fn lee_form_is_minus_d_log_norm_omega_on_iwasawa() {
    let u = base_field(12, 0.8);
    let m = iwasawa_metric(&u);
    for p in random_points(13, 5) {
        let th = lee_form(&m, &p).unwrap();
        for mu in 0..3 {
            // −d log|Ω| = du
            let du = wirtinger(&u, &p, &[mu], &[]);
            let dbu = wirtinger(&u, &p, &[], &[mu]);
            assert!((th.get(&[mu]) - du).norm() <= 1e-8);
            assert!((th.get(&[3 + mu]) - dbu).norm() <= 1e-8);
        }
    }
}

#[test]
fn tensor_dump_layout() {
    let m = random_metric(1, 2, 0.05);
    let t = torsion_h(&m, &[0.1; 6]).unwrap();
    assert_eq!(t.shape, vec![6, 6, 6]);
    assert_eq!(t.data.len(), 216);
    assert_eq!(t.complex_dim(), 3);
    let j = t.to_json();
    assert!(j.get("index_spec").is_some() && j.get("shape").is_some() && j.get("data").is_some());
}

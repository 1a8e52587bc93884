mod common;

use chart_geometry::forms::bar;
use chart_geometry::*;
use common::*;
use proptest::prelude::*;

fn point() -> impl Strategy<Value = [f64; 6]> {
    prop::array::uniform6(0.0..1.0f64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn real_fields_are_conjugate_symmetric(seed in 0u64..1000) {
        let f = random_potential(seed, 2, 1.0);
        prop_assert!(f.is_real(0.0));
        prop_assert!(f.value(&[0.3; 6]).im.abs() < 1e-14);
    }

    #[test]
    fn metric_is_hermitian(seed in 0u64..1000, p in point()) {
        let m = random_metric(seed, 2, 0.08);
        prop_assert!(m.hermitian_defect(&p) < 1e-15);
        prop_assert!(m.min_eigenvalue(&p) > 0.5);
    }

    #[test]
    fn conjugation_flips_index_types(seed in 0u64..1000, p in point()) {
        let m = random_metric(seed, 2, 0.08);
        let h = torsion_h(&m, &p).unwrap();
        let r = curvature_tensor(&m, &p, ConnectionKind::Chern).unwrap();
        let g = connection_coeffs(&m, &p, ConnectionKind::Bismut).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                for c in 0..6 {
                    prop_assert!((h.get(&[a, b, c]).conj() - h.get(&[bar(a, 3), bar(b, 3), bar(c, 3)])).norm() < 1e-12);
                    prop_assert!((g.get(&[a, b, c]).conj() - g.get(&[bar(a, 3), bar(b, 3), bar(c, 3)])).norm() < 1e-12);
                    for d in 0..6 {
                        let flipped = r.get(&[bar(a, 3), bar(b, 3), bar(c, 3), bar(d, 3)]);
                        prop_assert!((r.get(&[a, b, c, d]).conj() - flipped).norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn torsion_and_curvature_are_antisymmetric(seed in 0u64..1000, p in point(), k in 0usize..4) {
        let m = random_metric(seed, 2, 0.08);
        let h = torsion_h(&m, &p).unwrap();
        let r = curvature_tensor(&m, &p, ConnectionKind::ALL[k]).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                for c in 0..6 {
                    prop_assert!((h.get(&[a, b, c]) + h.get(&[b, a, c])).norm() < 1e-14);
                    prop_assert!((h.get(&[a, b, c]) + h.get(&[a, c, b])).norm() < 1e-14);
                    for d in 0..6 {
                        prop_assert_eq!(r.get(&[a, b, c, d]), -r.get(&[b, a, c, d]));
                    }
                }
            }
        }
    }

    #[test]
    fn torsion_has_only_mixed_types(seed in 0u64..1000, p in point()) {
        let m = random_metric(seed, 2, 0.08);
        let h = torsion_h(&m, &p).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    prop_assert!(h.get(&[a, b, c]).norm() < 1e-15);
                    prop_assert!(h.get(&[3 + a, 3 + b, 3 + c]).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn norm_omega_scales_with_metric(seed in 0u64..1000, p in point(), lam in 0.2..5.0f64) {
        let m = random_metric(seed, 2, 0.08);
        let mut s = m.clone();
        s.g = m.g.iter().map(|f| f.clone().scaled(c(lam, 0.0))).collect();
        let a = norm_omega(&m, &p).unwrap();
        let b = norm_omega(&s, &p).unwrap();
        prop_assert!((b - a * lam.powf(-1.5)).abs() < 1e-12 * a.max(b));
    }

    #[test]
    fn levi_civita_connection_is_torsion_free(seed in 0u64..1000, p in point()) {
        let m = random_metric(seed, 2, 0.08);
        let g = connection_coeffs(&m, &p, ConnectionKind::LeviCivita).unwrap();
        for i in 0..6 {
            for k in 0..6 {
                for j in 0..6 {
                    prop_assert!((g.get(&[i, k, j]) - g.get(&[j, k, i])).norm() < 1e-13);
                }
            }
        }
    }
}

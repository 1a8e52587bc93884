//! Transgression forms, secondary classes `R₂` and Aeppli representatives.

use crate::dops::{d_matrix, ddbar_adjoint, i_ddbar, Part};
use crate::error::HodgeError;
use crate::form::SpectralForm;
use crate::grid::{Grid, DIM};
use crate::kodaira::{OperatorE, SolveReport};
use crate::wedge::product_table;
use chart_geometry::{BundleMetricField, Jet, MetricField};
use nalgebra::{DMatrix, DVector, Matrix3};
use num_complex::Complex64 as C64;
use rayon::prelude::*;

type M3 = Matrix3<C64>;

pub const DEFAULT_QUADRATURE: usize = 32;

/// Gauss–Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n > 0);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((0.5 * (1.0 - x), 0.5 * w));
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    out
}

/// A rank-3 hermitian matrix field on a grid, stored as `G[λ][ν] = g_{λν̄}`
/// together with `∂_μ G`, `∂_ν̄ G` and `∂_μ∂_ν̄ G`. For a bundle metric we
/// store `hᵀ`, so that `∂_μ G · G⁻¹` is the transposed connection matrix in
/// both cases.
#[derive(Clone, Debug)]
pub struct MatrixSamples {
    pub grid: Grid,
    pub g: Vec<M3>,
    pub dg: Vec<[M3; 3]>,
    pub dbg: Vec<[M3; 3]>,
    pub ddg: Vec<[[M3; 3]; 3]>,
}

fn m3(f: impl Fn(usize, usize) -> C64) -> M3 {
    M3::from_fn(|i, j| f(i, j))
}

impl MatrixSamples {
    /// From order-2 jets of a row-major 3×3 matrix at each grid point.
    pub fn from_jets(grid: Grid, jets: impl Fn(&[f64; DIM]) -> Vec<Jet> + Sync) -> Self {
        let per: Vec<(M3, [M3; 3], [M3; 3], [[M3; 3]; 3])> = (0..grid.len())
            .into_par_iter()
            .map(|i| {
                let j = jets(&grid.point(i));
                assert_eq!(j.len(), 9, "rank-3 matrix field expected");
                let at = |r: usize, c: usize| &j[r * 3 + c];
                let g = m3(|r, c| at(r, c).value());
                let dg = [0, 1, 2].map(|mu| m3(|r, c| at(r, c).d(mu).value()));
                let dbg = [0, 1, 2].map(|nu| m3(|r, c| at(r, c).d(3 + nu).value()));
                let ddg = [0, 1, 2].map(|mu| [0, 1, 2].map(|nu| m3(|r, c| at(r, c).d(mu).d(3 + nu).value())));
                (g, dg, dbg, ddg)
            })
            .collect();
        let mut s = MatrixSamples { grid, g: vec![], dg: vec![], dbg: vec![], ddg: vec![] };
        for (g, dg, dbg, ddg) in per {
            s.g.push(g);
            s.dg.push(dg);
            s.dbg.push(dbg);
            s.ddg.push(ddg);
        }
        s
    }

    pub fn metric(grid: Grid, m: &MetricField) -> Result<Self, HodgeError> {
        if m.rank != 3 {
            return Err(HodgeError::ComponentCount { expected: 9, found: m.rank * m.rank });
        }
        let s = Self::from_jets(grid, |x| m.coordinate_jets(x, 2));
        s.check_positive()?;
        Ok(s)
    }

    pub fn bundle(grid: Grid, h: &BundleMetricField) -> Result<Self, HodgeError> {
        if h.rank != 3 {
            return Err(HodgeError::ComponentCount { expected: 9, found: h.rank * h.rank });
        }
        let s = Self::from_jets(grid, |x| {
            let j = h.matrix_jets(x, 2);
            (0..9).map(|k| j[(k % 3) * 3 + k / 3].clone()).collect()
        });
        s.check_positive()?;
        Ok(s)
    }

    fn check_positive(&self) -> Result<(), HodgeError> {
        let m = self.min_eigenvalue(|i| self.g[i]);
        if m > 0.0 {
            Ok(())
        } else {
            Err(HodgeError::NotPositive { min_eig: m })
        }
    }

    fn min_eigenvalue(&self, f: impl Fn(usize) -> M3 + Sync) -> f64 {
        (0..self.len())
            .into_par_iter()
            .map(|i| {
                let a = f(i);
                ((a + a.adjoint()) * C64::new(0.5, 0.0)).symmetric_eigenvalues().min()
            })
            .reduce(|| f64::INFINITY, f64::min)
    }

    /// Smallest eigenvalue of `t G + (1 − t) Ĝ` over the samples.
    fn min_eigenvalue_with(&self, other: &MatrixSamples, t: f64) -> f64 {
        self.min_eigenvalue(|i| self.g[i] * C64::new(t, 0.0) + other.g[i] * C64::new(1.0 - t, 0.0))
    }

    pub fn len(&self) -> usize {
        self.g.len()
    }

    pub fn is_empty(&self) -> bool {
        self.g.is_empty()
    }
}

/// Curvature blocks `C_{μν̄} = −∂_ν̄(∂_μG·G⁻¹)` of `G_t = tG₁ + (1−t)G₀` at
/// sample `i`, each the transposed endomorphism, plus `G_t⁻¹`.
fn curvature_blocks(a: &MatrixSamples, b: Option<&MatrixSamples>, t: f64, i: usize) -> ([[M3; 3]; 3], M3) {
    let mix = |x: &M3, y: Option<&M3>| match y {
        Some(y) => x * C64::new(t, 0.0) + y * C64::new(1.0 - t, 0.0),
        None => *x,
    };
    let g = mix(&a.g[i], b.map(|b| &b.g[i]));
    let gi = g.try_inverse().expect("positive metric");
    let dg: [M3; 3] = [0, 1, 2].map(|mu| mix(&a.dg[i][mu], b.map(|b| &b.dg[i][mu])));
    let dbg: [M3; 3] = [0, 1, 2].map(|nu| mix(&a.dbg[i][nu], b.map(|b| &b.dbg[i][nu])));
    let mut c = [[M3::zeros(); 3]; 3];
    for mu in 0..3 {
        let gam = dg[mu] * gi;
        for nu in 0..3 {
            let dd = mix(&a.ddg[i][mu][nu], b.map(|b| &b.ddg[i][mu][nu]));
            c[mu][nu] = -(dd * gi - gam * dbg[nu] * gi);
        }
    }
    (c, gi)
}

/// `Tr R∧R` (trace over the rank-3 fibre) as a `(2,2)`-form.
pub fn trace_rr(s: &MatrixSamples) -> SpectralForm {
    let table = product_table(1, 1, 1, 1);
    let vals: Vec<[C64; 9]> = (0..s.len())
        .into_par_iter()
        .map(|i| {
            let (c, _) = curvature_blocks(s, None, 1.0, i);
            let mut out = [C64::new(0.0, 0.0); 9];
            for t in &table {
                let (m1, n1) = (t.a / 3, t.a % 3);
                let (m2, n2) = (t.b / 3, t.b % 3);
                out[t.out] += (c[m1][n1] * c[m2][n2]).trace() * t.sign;
            }
            out
        })
        .collect();
    let mut idx = 0;
    SpectralForm::from_values(2, 2, s.grid, |_| {
        idx += 1;
        vals[idx - 1].to_vec()
    })
}

fn check_segment(a: &MatrixSamples, b: &MatrixSamples, nodes: &[(f64, f64)]) -> Result<(), HodgeError> {
    for &(t, _) in nodes {
        let m = a.min_eigenvalue_with(b, t);
        if !(m > 0.0) {
            return Err(HodgeError::SegmentNotPositive { t, min_eig: m });
        }
    }
    Ok(())
}

/// `χ = 2i ∫₀¹ Tr R_{g_t} g_t⁻¹(g − ĝ) dt` from sampled fields.
pub fn chi_from_samples(g: &MatrixSamples, g_hat: &MatrixSamples, quadrature_n: usize) -> Result<SpectralForm, HodgeError> {
    assert_eq!(g.grid, g_hat.grid, "grid mismatch");
    let nodes = gauss_legendre(quadrature_n);
    check_segment(g, g_hat, &nodes)?;
    let vals: Vec<[C64; 9]> = (0..g.len())
        .into_par_iter()
        .map(|i| {
            let d = g.g[i] - g_hat.g[i];
            let mut out = [C64::new(0.0, 0.0); 9];
            for &(t, w) in &nodes {
                let (c, gi) = curvature_blocks(g, Some(g_hat), t, i);
                let a = d * gi;
                for mu in 0..3 {
                    for nu in 0..3 {
                        out[mu * 3 + nu] += (c[mu][nu] * a).trace() * w;
                    }
                }
            }
            out.map(|v| v * C64::new(0.0, 2.0))
        })
        .collect();
    let mut idx = 0;
    Ok(SpectralForm::from_values(1, 1, g.grid, |_| {
        idx += 1;
        vals[idx - 1].to_vec()
    }))
}

pub fn chern_simons_chi(g: &MetricField, g_hat: &MetricField, quadrature_n: usize, grid: Grid) -> Result<SpectralForm, HodgeError> {
    chi_from_samples(&MatrixSamples::metric(grid, g)?, &MatrixSamples::metric(grid, g_hat)?, quadrature_n)
}

/// `R₂` together with the `E` solve it came from.
#[derive(Clone, Debug)]
pub struct SecondaryClass {
    pub form: SpectralForm,
    pub solve: SolveReport,
}

/// `Re(−i ∂̄†∂† E⁻¹ rhs)` for a `(2,2)` right-hand side.
pub fn secondary_from_rhs(rhs: &SpectralForm) -> Result<SecondaryClass, HodgeError> {
    let e = OperatorE::new(rhs.grid);
    let solve = e.solve(rhs)?;
    let form = ddbar_adjoint(&solve.gamma).expect("(2,2) input").scale(C64::new(0.0, -1.0)).real_part();
    Ok(SecondaryClass { form, solve })
}

/// `R₂[g, ĝ]`, solving `Eγ = i∂∂̄χ` with the transgression `χ`.
pub fn r2_from_samples(g: &MatrixSamples, g_hat: &MatrixSamples, quadrature_n: usize) -> Result<SecondaryClass, HodgeError> {
    let chi = chi_from_samples(g, g_hat, quadrature_n)?;
    secondary_from_rhs(&i_ddbar(&chi))
}

pub fn secondary_class_r2(g: &MetricField, g_hat: &MetricField, quadrature_n: usize, grid: Grid) -> Result<SecondaryClass, HodgeError> {
    r2_from_samples(&MatrixSamples::metric(grid, g)?, &MatrixSamples::metric(grid, g_hat)?, quadrature_n)
}

/// `ω = i g_{μν̄} dz^μ ∧ dz̄^ν` sampled on a grid.
pub fn kahler_form(grid: Grid, m: &MetricField) -> SpectralForm {
    let mut f = SpectralForm::from_values(1, 1, grid, |x| {
        let g = m.matrix_at(x);
        (0..9).map(|k| g[(k / 3, k % 3)] * C64::new(0.0, 1.0)).collect()
    });
    f.real = true;
    f
}

#[derive(Clone, Debug)]
pub struct AeppliRepresentative {
    pub form: SpectralForm,
    pub beta_hat: SpectralForm,
    pub r2_metric: SpectralForm,
    pub r2_bundle: SpectralForm,
}

/// `ω − α′R₂[g,ĝ] + α′R₂[h,ĥ] − α′β̂` with `i∂∂̄β̂ = Tr R̂∧R̂ − Tr F̂∧F̂`.
pub fn aeppli_representative(
    omega: &MetricField,
    h: &BundleMetricField,
    g_hat: &MetricField,
    h_hat: &BundleMetricField,
    alpha_prime: f64,
    quadrature_n: usize,
    grid: Grid,
) -> Result<AeppliRepresentative, HodgeError> {
    let w = kahler_form(grid, omega);
    let zero = SpectralForm::zero(1, 1, grid);
    if alpha_prime == 0.0 {
        return Ok(AeppliRepresentative { form: w, beta_hat: zero.clone(), r2_metric: zero.clone(), r2_bundle: zero });
    }
    let sg = MatrixSamples::metric(grid, omega)?;
    let sgh = MatrixSamples::metric(grid, g_hat)?;
    let sh = MatrixSamples::bundle(grid, h)?;
    let shh = MatrixSamples::bundle(grid, h_hat)?;
    let beta = match secondary_from_rhs(&trace_rr(&sgh).sub(&trace_rr(&shh))) {
        Ok(b) => b.form,
        Err(HodgeError::IllPosedRhs { relative, .. }) => return Err(HodgeError::Incompatible { relative }),
        Err(e) => return Err(e),
    };
    let r2g = r2_from_samples(&sg, &sgh, quadrature_n)?.form;
    let r2h = r2_from_samples(&sh, &shh, quadrature_n)?.form;
    let a = C64::new(alpha_prime, 0.0);
    let mut form = w.sub(&r2g.scale(a)).add(&r2h.scale(a)).sub(&beta.scale(a));
    form.real = true;
    Ok(AeppliRepresentative { form, beta_hat: beta, r2_metric: r2g, r2_bundle: r2h })
}

/// Distance of a `(1,1)`-form from `Im ∂ ⊕ Im ∂̄`, measured per frequency
/// by least squares against the columns of `[∂ on (0,1) | ∂̄ on (1,0)]`.
pub fn aeppli_trivial_residual(f: &SpectralForm) -> f64 {
    assert_eq!((f.p, f.q), (1, 1));
    let g = f.grid;
    (0..g.len())
        .into_par_iter()
        .map(|k| {
            let v = DVector::from_vec(f.fibre(k));
            if v.iter().all(|c| c.norm() == 0.0) {
                return 0.0;
            }
            let w = g.wavevector(k);
            let a = d_matrix(0, 1, Part::Holo, &w);
            let b = d_matrix(1, 0, Part::Anti, &w);
            let m = DMatrix::from_fn(9, 6, |r, c| if c < 3 { a[(r, c)] } else { b[(r, c - 3)] });
            let svd = m.clone().svd(true, true);
            let x = svd.solve(&v, 1e-12).expect("svd solve");
            (&m * x - v).norm_squared()
        })
        .collect::<Vec<f64>>()
        // summed in order so the result does not depend on the thread count
        .iter()
        .sum::<f64>()
        .sqrt()
}

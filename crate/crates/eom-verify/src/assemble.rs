//! The field equations at one point, grouped the way they are derived:
//! product rules for the weighted divergences, the Einstein tensor with its
//! `i∂∂̄ω` source, and the dilaton equation through the complex Hessian.

use chart_geometry::forms::trace_wedge;
use chart_geometry::identities::IdentityContext;
use chart_geometry::tensor::{VTensor, Variance};
use chart_geometry::{BundleCurvature, ConnectionKind, IdentityId, PointGeometry};
use chart_geometry::GeometryError;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

/// Every residual at one point; the `*_gauge` entries carry their `α′`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PointResiduals {
    pub div_h: f64,
    pub div_f: f64,
    pub eom_ddbar: f64,
    pub einstein_gauge: f64,
    pub dilaton3: f64,
    pub trace_einstein: f64,
    pub trace_gauge: f64,
    pub trace_consistency: f64,
}

impl PointResiduals {
    pub fn max(self, o: PointResiduals) -> PointResiduals {
        PointResiduals {
            div_h: self.div_h.max(o.div_h),
            div_f: self.div_f.max(o.div_f),
            eom_ddbar: self.eom_ddbar.max(o.eom_ddbar),
            einstein_gauge: self.einstein_gauge.max(o.einstein_gauge),
            dilaton3: self.dilaton3.max(o.dilaton3),
            trace_einstein: self.trace_einstein.max(o.trace_einstein),
            trace_gauge: self.trace_gauge.max(o.trace_gauge),
            trace_consistency: self.trace_consistency.max(o.trace_consistency),
        }
    }

    pub fn entries(&self) -> [(&'static str, f64); 8] {
        [
            ("div_h", self.div_h),
            ("div_f", self.div_f),
            ("eom_ddbar", self.eom_ddbar),
            ("einstein_gauge", self.einstein_gauge),
            ("dilaton3", self.dilaton3),
            ("trace_einstein", self.trace_einstein),
            ("trace_gauge", self.trace_gauge),
            ("trace_consistency", self.trace_consistency),
        ]
    }
}

fn norm_omega(pg: &PointGeometry) -> f64 {
    pg.lg.norm_omega_sq().value().re.sqrt()
}

fn phi_grad(pg: &PointGeometry) -> Vec<C64> {
    pg.phi_grad_j().data.iter().map(|j| j.value()).collect()
}

/// `∇_m ∇_n Φ = ∂_m ∂_n Φ − Γ_m{}^k{}_n ∂_k Φ`.
pub fn phi_hessian(pg: &PointGeometry) -> VTensor {
    let lg = &pg.lg;
    let d = pg.d();
    let grad = pg.phi_grad_j();
    let gam = pg.connection(ConnectionKind::LeviCivita).values();
    VTensor::from_fn(d, 2, |mn| {
        let (m, n) = (mn[0], mn[1]);
        let mut v = lg.dj(grad.at(&[n]), m).value();
        for k in 0..d {
            v -= gam.at(&[m, k, n]) * grad.at(&[k]).value();
        }
        v
    })
}

/// `R_{mn} + 2∇_m∇_nΦ − ¼ H_{mpq} H_n{}^{pq}`.
pub fn einstein_tensor(pg: &PointGeometry) -> VTensor {
    let d = pg.d();
    let ric = pg.lg.ricci().values();
    let hess = phi_hessian(pg);
    let h = pg.torsion();
    let hup = pg.raise(&pg.raise(&h, 1), 2);
    VTensor::from_fn(d, 2, |ab| {
        let (a, b) = (ab[0], ab[1]);
        let mut hh = zero();
        for p in 0..d {
            for q in 0..d {
                hh += h.at(&[a, p, q]) * hup.at(&[b, p, q]);
            }
        }
        ric.at(&[a, b]) + hess.at(&[a, b]) * 2.0 - hh * 0.25
    })
}

/// The symmetric source with `X_{αβ̄} = (−i∂∂̄ω)_μ{}^μ{}_{β̄α}` and no
/// `(2,0)` or `(0,2)` part.
pub fn ddbar_source(pg: &PointGeometry) -> VTensor {
    let n = pg.n();
    let x = pg.ddbar_omega();
    VTensor::from_fn(pg.d(), 2, |ab| {
        let (a, b) = (ab[0].min(ab[1]), ab[0].max(ab[1]));
        if a < n && b >= n {
            -pg.trace_first_pair(x, b, a)
        } else {
            zero()
        }
    })
}

fn trace2(pg: &PointGeometry, t: &VTensor) -> C64 {
    let gi = pg.ginv();
    let d = pg.d();
    let mut acc = zero();
    for a in 0..d {
        for b in 0..d {
            acc += gi.at(&[a, b]) * t.at(&[a, b]);
        }
    }
    acc
}

/// `Y_α{}^{αμ}{}_μ` for a 4-tensor with lower indices.
fn double_trace(pg: &PointGeometry, y: &VTensor) -> C64 {
    let (n, d) = (pg.n(), pg.d());
    let gi = pg.ginv();
    let mut acc = zero();
    for al in 0..n {
        for mu in 0..n {
            for a in 0..d {
                for b in 0..d {
                    acc += gi.at(&[al, a]) * gi.at(&[mu, b]) * y.at(&[al, a, b, mu]);
                }
            }
        }
    }
    acc
}

/// `e^{−2Φ}(∇^p H_{pmn} − 2 ∇^pΦ H_{pmn})`, max over `m, n`.
pub fn weighted_h_divergence(pg: &PointGeometry) -> f64 {
    let d = pg.d();
    let gi = pg.ginv();
    let h = pg.torsion();
    let dh = pg.lg.cov_deriv(pg.torsion_j(), &[Variance::Lower; 3], pg.connection(ConnectionKind::LeviCivita)).values();
    let p = phi_grad(pg);
    let w = norm_omega(pg);
    let mut r = 0.0f64;
    for m in 0..d {
        for k in 0..d {
            let mut acc = zero();
            for a in 0..d {
                for l in 0..d {
                    let g = *gi.at(&[a, l]);
                    if g == zero() {
                        continue;
                    }
                    acc += g * (dh.at(&[l, a, m, k]) - p[l] * h.at(&[a, m, k]) * 2.0);
                }
            }
            r = r.max((acc * w).norm());
        }
    }
    r
}

/// `e^{−2Φ}(∇̂^m F_{mn} − 2 ∇^mΦ F_{mn})` with the Bismut connection on
/// form indices and the Chern connection of `h` on the endomorphism part.
pub fn weighted_f_divergence(pg: &PointGeometry, b: &BundleCurvature) -> f64 {
    let d = pg.d();
    let r = b.r;
    let gi = pg.ginv();
    let gam = pg.connection(ConnectionKind::Bismut);
    let dfs: Vec<VTensor> = b.f.comps.iter().map(|c| pg.lg.cov_deriv(c, &[Variance::Lower; 2], gam).values()).collect();
    let fv: Vec<VTensor> = b.f.comps.iter().map(|c| c.values()).collect();
    let p = phi_grad(pg);
    let w = norm_omega(pg);
    let mut out = 0.0f64;
    for k in 0..d {
        let mut mat = vec![zero(); r * r];
        for m in 0..d {
            for l in 0..d {
                let g = *gi.at(&[m, l]);
                if g == zero() {
                    continue;
                }
                for e in 0..r * r {
                    let mut v = *dfs[e].at(&[l, m, k]) - p[l] * fv[e].at(&[m, k]) * 2.0;
                    if let Some(a) = b.connection(l) {
                        let (i, j) = (e / r, e % r);
                        for s in 0..r {
                            v += a[i * r + s].value() * fv[s * r + j].at(&[m, k]) - fv[i * r + s].at(&[m, k]) * a[s * r + j].value();
                        }
                    }
                    mat[e] += g * v;
                }
            }
        }
        out = out.max(mat.iter().map(|v| (v * w).norm()).fold(0.0, f64::max));
    }
    out
}

/// `Tr F_{ap} F_b{}^p`.
fn trace_ff(pg: &PointGeometry, fv: &[VTensor], r: usize, a: usize, b: usize) -> C64 {
    let d = pg.d();
    let gi = pg.ginv();
    let mut acc = zero();
    for p in 0..d {
        for q in 0..d {
            let g = *gi.at(&[p, q]);
            if g == zero() {
                continue;
            }
            for i in 0..r {
                for j in 0..r {
                    acc += g * fv[i * r + j].at(&[a, p]) * fv[j * r + i].at(&[b, q]);
                }
            }
        }
    }
    acc
}

/// Gauge halves of the `α′`-contractions, exact for `F^{0,2} = 0` and
/// `g^{μν̄}F_{μν̄} = 0`:
/// `−Tr F_{αp}F_{β̄}{}^p = ½ (Tr F∧F)_μ{}^μ{}_{β̄α}` and
/// `Tr F_{mn}F^{mn} = −(Tr F∧F)_α{}^{αμ}{}_μ`. Returns both defects.
pub fn gauge_contractions(pg: &PointGeometry, b: &BundleCurvature) -> (f64, f64) {
    let (n, d) = (pg.n(), pg.d());
    let r = b.r;
    let fv: Vec<VTensor> = b.f.comps.iter().map(|c| c.values()).collect();
    let ff = trace_wedge(&b.f, &b.f, 0..r).values();
    let mut ein = 0.0f64;
    for a in 0..n {
        for bb in n..d {
            let lhs = -trace_ff(pg, &fv, r, a, bb);
            let rhs = pg.trace_first_pair(&ff, bb, a) * 0.5;
            ein = ein.max((lhs - rhs).norm());
        }
    }
    let gi = pg.ginv();
    let mut full = zero();
    for m in 0..d {
        for k in 0..d {
            let g = *gi.at(&[m, k]);
            if g != zero() {
                full += g * trace_ff(pg, &fv, r, m, k);
            }
        }
    }
    (ein, (full + double_trace(pg, &ff)).norm())
}

/// Pieces of the dilaton equation through the complex Hessian:
/// `ΔΦ = 2g^{αβ̄}(Φ_{αβ̄} + ½(−H_α{}^μ{}_{β̄}Φ_μ + H_α{}^{μ̄}{}_{β̄}Φ_{μ̄}))`,
/// `|H|² = 6 H_{αμν̄}H^{αμν̄}`, `|∇Φ|²` and `(i∂∂̄ω)_α{}^{αμ}{}_μ`.
pub struct DilatonTerms {
    pub laplacian: C64,
    pub h_sq: C64,
    pub grad_sq: C64,
    pub ddbar_trace: C64,
}

pub fn dilaton_terms(pg: &PointGeometry) -> DilatonTerms {
    let (n, d) = (pg.n(), pg.d());
    let lg = &pg.lg;
    let gi = pg.ginv();
    let grad = pg.phi_grad_j();
    let p = phi_grad(pg);
    let h = pg.torsion();
    let hm = pg.raise(&h, 1);
    let mut lap = zero();
    for al in 0..n {
        for be in n..d {
            let g = *gi.at(&[al, be]);
            if g == zero() {
                continue;
            }
            let mut v = lg.dj(grad.at(&[be]), al).value();
            for mu in 0..n {
                v += (-hm.at(&[al, mu, be]) * p[mu] + hm.at(&[al, n + mu, be]) * p[n + mu]) * 0.5;
            }
            lap += g * v;
        }
    }
    let hup = pg.raise(&hm, 0);
    let hup = pg.raise(&hup, 2);
    let mut hsq = zero();
    for al in 0..n {
        for mu in 0..n {
            for nu in n..d {
                hsq += h.at(&[al, mu, nu]) * hup.at(&[al, mu, nu]);
            }
        }
    }
    let mut g2 = zero();
    for a in 0..d {
        for b in 0..d {
            g2 += gi.at(&[a, b]) * p[a] * p[b];
        }
    }
    DilatonTerms { laplacian: lap * 2.0, h_sq: hsq * 6.0, grad_sq: g2, ddbar_trace: double_trace(pg, pg.ddbar_omega()) }
}

/// All residuals at one point.
pub fn point_residuals(pg: &PointGeometry, bundle: Option<&BundleCurvature>, alpha_prime: f64) -> PointResiduals {
    let e = einstein_tensor(pg);
    let x = ddbar_source(pg);
    let eom_ddbar = e.data.iter().zip(&x.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    let t = dilaton_terms(pg);
    let dilaton3 = (t.laplacian - (-t.h_sq / 12.0 + t.grad_sq * 2.0 + t.ddbar_trace * 0.5)).norm();
    let ric = pg.lg.ricci().values();
    let scalar = trace2(pg, &ric);
    let trace_rhs = trace2(pg, &x);
    let grouped = scalar + t.laplacian * 2.0 - t.h_sq * 0.25 - trace_rhs;
    let contracted = trace2(pg, &e.sub(&x));
    let (div_f, einstein_gauge, trace_gauge) = match bundle {
        Some(b) => {
            let (ein, tr) = gauge_contractions(pg, b);
            (weighted_f_divergence(pg, b), alpha_prime.abs() * ein, alpha_prime.abs() * tr)
        }
        None => (0.0, 0.0, 0.0),
    };
    PointResiduals {
        div_h: weighted_h_divergence(pg),
        div_f,
        eom_ddbar,
        einstein_gauge,
        dilaton3,
        trace_einstein: grouped.norm(),
        trace_gauge,
        trace_consistency: (grouped - contracted).norm(),
    }
}

/// `d(|Ω|ω²)` at the point.
pub fn balanced_residual(pg: &PointGeometry) -> Result<f64, GeometryError> {
    chart_geometry::identities::identity_residual(
        IdentityId::BalancedResidual,
        &IdentityContext { geom: pg, bundle: None, alpha_prime: 0.0 },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use chart_geometry::MetricField;

    #[test]
    fn flat_point_has_zero_residuals() {
        let pg = PointGeometry::from_metric(&MetricField::flat(3), &[0.3; 6], 3).unwrap();
        let r = point_residuals(&pg, None, 0.1);
        assert!(r.entries().iter().all(|(_, v)| *v == 0.0));
        assert_eq!(balanced_residual(&pg).unwrap(), 0.0);
    }
}

//! Pointwise identities of hermitian geometry, each evaluated as the
//! max-norm of `LHS − RHS` from the primitives of this crate.

use crate::bundle::BundleCurvature;
use crate::error::GeometryError;
use crate::forms::{exterior_d, wedge, DPart, EndForm};
use crate::jet::Jet;
use crate::local::{ConnectionKind, LocalGeometry};
use crate::metric::{BundleMetricField, Family, MetricField};
use crate::tensor::{residual, unflatten, JTensor, RTensor, VTensor, Variance};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::cell::OnceCell;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IdentityId {
    ChernTorsion,
    Lc2c,
    RicciDecomp,
    RdH,
    Hswitch,
    RH11,
    RH20,
    ConfBalDilaton,
    BismutRicciFlat,
    ChernRicciConfBal,
    DivHChern,
    DivH,
    DivF,
    EinsteinHol,
    Dilaton,
    LeeForm,
    CoclosedH,
    BalancedResidual,
    HymResidual,
    AnomalyResidual,
}

impl IdentityId {
    pub const UNCONDITIONAL: [IdentityId; 7] = [
        IdentityId::ChernTorsion,
        IdentityId::Lc2c,
        IdentityId::RicciDecomp,
        IdentityId::RdH,
        IdentityId::Hswitch,
        IdentityId::RH11,
        IdentityId::RH20,
    ];

    pub const CONDITIONAL: [IdentityId; 11] = [
        IdentityId::ConfBalDilaton,
        IdentityId::BismutRicciFlat,
        IdentityId::ChernRicciConfBal,
        IdentityId::DivHChern,
        IdentityId::DivH,
        IdentityId::DivF,
        IdentityId::EinsteinHol,
        IdentityId::Dilaton,
        IdentityId::LeeForm,
        IdentityId::CoclosedH,
        IdentityId::BalancedResidual,
    ];

    pub fn requires_balanced(self) -> bool {
        use IdentityId::*;
        matches!(
            self,
            ConfBalDilaton
                | BismutRicciFlat
                | ChernRicciConfBal
                | DivHChern
                | DivH
                | DivF
                | EinsteinHol
                | Dilaton
                | LeeForm
                | CoclosedH
        )
    }

    pub fn requires_bundle(self) -> bool {
        matches!(self, IdentityId::DivF | IdentityId::HymResidual)
    }

    /// Jet order of `g` the identity consumes.
    pub fn jet_order(self) -> usize {
        match self {
            IdentityId::DivF => 3,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        use IdentityId::*;
        match self {
            ChernTorsion => "chern_torsion",
            Lc2c => "lc2c",
            RicciDecomp => "ricci_decomp",
            RdH => "r_dh",
            Hswitch => "h_switch",
            RH11 => "rh11",
            RH20 => "rh20",
            ConfBalDilaton => "confbal_dilaton",
            BismutRicciFlat => "bismut_ricci_flat",
            ChernRicciConfBal => "chern_ricci_confbal",
            DivHChern => "div_h_chern",
            DivH => "div_h",
            DivF => "div_f",
            EinsteinHol => "einstein_hol",
            Dilaton => "dilaton",
            LeeForm => "lee_form",
            CoclosedH => "coclosed_h",
            BalancedResidual => "balanced_residual",
            HymResidual => "hym_residual",
            AnomalyResidual => "anomaly_residual",
        }
    }

    pub fn all() -> Vec<IdentityId> {
        let mut v = Self::UNCONDITIONAL.to_vec();
        v.extend(Self::CONDITIONAL);
        v.push(IdentityId::HymResidual);
        v.push(IdentityId::AnomalyResidual);
        v
    }

    pub fn from_name(s: &str) -> Option<IdentityId> {
        Self::all().into_iter().find(|i| i.name() == s)
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

fn maxdiff(a: impl Iterator<Item = (C64, C64)>) -> f64 {
    a.map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Cached pointwise geometry shared by the identity evaluators.
pub struct PointGeometry {
    pub lg: LocalGeometry,
    n: usize,
    gi: VTensor,
    g: VTensor,
    h_j: OnceCell<JTensor>,
    trace_h_j: OnceCell<JTensor>,
    conn: [OnceCell<JTensor>; 4],
    curv: [OnceCell<VTensor>; 4],
    ddbar: OnceCell<VTensor>,
    phi_grad: OnceCell<JTensor>,
}

fn kind_index(k: ConnectionKind) -> usize {
    match k {
        ConnectionKind::Chern => 0,
        ConnectionKind::LeviCivita => 1,
        ConnectionKind::Hull => 2,
        ConnectionKind::Bismut => 3,
    }
}

impl PointGeometry {
    pub fn new(lg: LocalGeometry) -> Self {
        let n = lg.n;
        let g = lg.metric_real().values();
        let gi = lg.inverse_real().values();
        PointGeometry {
            lg,
            n,
            gi,
            g,
            h_j: OnceCell::new(),
            trace_h_j: OnceCell::new(),
            conn: Default::default(),
            curv: Default::default(),
            ddbar: OnceCell::new(),
            phi_grad: OnceCell::new(),
        }
    }

    pub fn from_metric(metric: &MetricField, point: &[f64], order: usize) -> Result<Self, GeometryError> {
        Ok(Self::new(metric.local(point, order)?))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        2 * self.n
    }

    pub fn ginv(&self) -> &VTensor {
        &self.gi
    }

    pub fn gmat(&self) -> &VTensor {
        &self.g
    }

    pub fn torsion_j(&self) -> &JTensor {
        self.h_j.get_or_init(|| self.lg.torsion())
    }

    pub fn torsion(&self) -> VTensor {
        self.torsion_j().values()
    }

    /// 1-form `T_a = H_μ{}^μ{}_a`.
    pub fn trace_h_j(&self) -> &JTensor {
        self.trace_h_j.get_or_init(|| {
            let h = self.torsion_j();
            let gi = self.lg.inverse_real();
            let n = self.n;
            RTensor::from_fn(self.d(), 1, |a| {
                let mut acc = Jet::zero(h.order());
                for mu in 0..n {
                    for l in 0..self.d() {
                        acc.add_mul(gi.at(&[mu, l]), h.at(&[mu, l, a[0]]));
                    }
                }
                acc
            })
        })
    }

    pub fn connection(&self, k: ConnectionKind) -> &JTensor {
        self.conn[kind_index(k)].get_or_init(|| self.lg.connection(k))
    }

    pub fn curvature(&self, k: ConnectionKind) -> &VTensor {
        self.curv[kind_index(k)].get_or_init(|| self.lg.curvature_of(self.connection(k)).values())
    }

    /// `(i∂∂̄ω)_{abcd}`.
    pub fn ddbar_omega(&self) -> &VTensor {
        self.ddbar.get_or_init(|| self.lg.ddbar_omega().values())
    }

    /// `∂_a Φ` with `Φ = −½ log |Ω|_ω`.
    pub fn phi_grad_j(&self) -> &JTensor {
        self.phi_grad.get_or_init(|| self.lg.gradient(&self.lg.dilaton()))
    }

    /// Raises slot `s` of a value tensor.
    pub fn raise(&self, t: &VTensor, s: usize) -> VTensor {
        contract_slot(t, s, &self.gi)
    }

    pub fn lower(&self, t: &VTensor, s: usize) -> VTensor {
        contract_slot(t, s, &self.g)
    }

    /// `X_μ{}^μ{}_{ab} = G^{μl} X_{μlab}` for a 4-tensor with lower indices.
    pub fn trace_first_pair(&self, x: &VTensor, a: usize, b: usize) -> C64 {
        let mut acc = zero();
        for mu in 0..self.n {
            for l in 0..self.d() {
                acc += self.gi.at(&[mu, l]) * x.at(&[mu, l, a, b]);
            }
        }
        acc
    }

    /// Curvature with the endomorphism index lowered: `R_{pqkj} = G_{km} R_{pq}{}^m{}_j`.
    pub fn curvature_lowered(&self, k: ConnectionKind) -> VTensor {
        self.lower(self.curvature(k), 2)
    }

    /// `Σ_{p∈P, q∈Q} H_{apq} H^{pq}{}_b`.
    pub fn hh(&self, a: usize, b: usize, p_set: std::ops::Range<usize>, q_set: std::ops::Range<usize>) -> C64 {
        let h = self.torsion();
        let huu = self.raise(&self.raise(&h, 0), 1);
        let mut acc = zero();
        for p in p_set {
            for q in q_set.clone() {
                acc += h.at(&[a, p, q]) * huu.at(&[p, q, b]);
            }
        }
        acc
    }

    /// Chern covariant derivative of the 1-form `T`, `[i][j]`.
    pub fn nabla_trace_h(&self, k: ConnectionKind) -> VTensor {
        self.lg.cov_deriv(self.trace_h_j(), &[Variance::Lower], self.connection(k)).values()
    }

    /// Levi-Civita Hessian of `Φ`.
    pub fn hessian_phi(&self) -> VTensor {
        let lc = self.connection(ConnectionKind::LeviCivita);
        self.lg.cov_deriv(self.phi_grad_j(), &[Variance::Lower], lc).values()
    }

    /// `(d†T)` for a lower-index form, via `−(1/det g) ∂_a(det g T^{a…})`.
    pub fn codifferential(&self, t: &JTensor) -> VTensor {
        let lg = &self.lg;
        let mut up = t.clone();
        for s in 0..t.rank {
            up = lg.raise(&up, s);
        }
        let det = &lg.det;
        let dens = up.map(|j| j * det);
        let rinv = det.recip();
        let d = self.d();
        let out_up = RTensor::from_fn(d, t.rank - 1, |rest| {
            let mut acc = Jet::zero(dens.order().saturating_sub(1));
            let mut idx = vec![0; t.rank];
            idx[1..].copy_from_slice(rest);
            for a in 0..d {
                idx[0] = a;
                acc.add_assign_ref(&lg.dj(dens.at(&idx), a));
            }
            (&acc * &rinv).scale_re(-1.0)
        });
        let mut v = out_up.values();
        for s in 0..v.rank {
            v = self.lower(&v, s);
        }
        v
    }
}

/// Contracts slot `s` of `t` with the first index of the matrix `m`.
pub fn contract_slot(t: &VTensor, s: usize, m: &VTensor) -> VTensor {
    let d = t.d;
    let mut idx = vec![0; t.rank];
    let mut out = VTensor::zeros_v(d, t.rank);
    for flat in 0..out.data.len() {
        unflatten(flat, d, &mut idx);
        let k = idx[s];
        let mut src = idx.clone();
        let mut acc = zero();
        for l in 0..d {
            let c = *m.at(&[k, l]);
            if c == zero() {
                continue;
            }
            src[s] = l;
            acc += c * t.at(&src);
        }
        out.data[flat] = acc;
    }
    out
}

/// Holds the evaluation context for [`check_identity`].
pub struct IdentityContext<'a> {
    pub geom: &'a PointGeometry,
    pub bundle: Option<&'a BundleCurvature>,
    pub alpha_prime: f64,
}

fn pre(id: IdentityId, what: &str) -> GeometryError {
    GeometryError::Precondition { identity: id.name().to_string(), requirement: what.to_string() }
}

/// Residual of `id` with no family check.
pub fn identity_residual(id: IdentityId, cx: &IdentityContext) -> Result<f64, GeometryError> {
    use ConnectionKind::*;
    let pg = cx.geom;
    let n = pg.n();
    let d = pg.d();
    let holo = 0..n;
    let anti = n..2 * n;
    let h = pg.torsion();
    Ok(match id {
        IdentityId::ChernTorsion => {
            // Γ_μ{}^κ{}_ν − Γ_ν{}^κ{}_μ = H_μ{}^κ{}_ν
            let ch = pg.connection(Chern).values();
            let hr = pg.raise(&h, 1);
            let mut r = 0.0f64;
            for mu in 0..n {
                for ka in 0..n {
                    for nu in 0..n {
                        let l = ch.at(&[mu, ka, nu]) - ch.at(&[nu, ka, mu]);
                        r = r.max((l - hr.at(&[mu, ka, nu])).norm());
                    }
                }
            }
            r
        }
        IdentityId::Lc2c => {
            let ch = pg.connection(Chern).values();
            let lc = pg.connection(LeviCivita).values();
            let hr = pg.raise(&h, 1);
            let mut r = 0.0f64;
            for mu in 0..n {
                for ka in 0..n {
                    for nu in 0..n {
                        let (kb, nb) = (n + ka, n + nu);
                        let rows = [
                            (lc.at(&[mu, ka, nu]), ch.at(&[mu, ka, nu]) - hr.at(&[mu, ka, nu]) * 0.5),
                            (lc.at(&[mu, kb, nu]), zero()),
                            (lc.at(&[mu, ka, nb]), hr.at(&[mu, ka, nb]) * 0.5),
                            (lc.at(&[mu, kb, nb]), -hr.at(&[mu, kb, nb]) * 0.5),
                        ];
                        for (a, b) in rows {
                            r = r.max((a - b).norm());
                        }
                    }
                }
            }
            r
        }
        IdentityId::RicciDecomp => {
            let ric = pg.lg.ricci().values();
            let rch = pg.curvature_lowered(Chern);
            let nt = pg.nabla_trace_h(Chern);
            let t = pg.trace_h_j().values();
            let hr1 = pg.raise(&h, 1);
            let mut r = 0.0f64;
            for a in 0..n {
                for b in 0..n {
                    let rhs = (nt.at(&[a, b]) + nt.at(&[b, a])) * 0.5 + pg.hh(a, b, holo.clone(), anti.clone()) * 0.5;
                    r = r.max((ric.at(&[a, b]) - rhs).norm());
                    let bb = n + b;
                    let mut last = zero();
                    for m in 0..d {
                        last += hr1.at(&[a, m, bb]) * t.at(&[m]);
                    }
                    let rhs = pg.trace_first_pair(&rch, bb, a)
                        - (nt.at(&[a, bb]) - nt.at(&[bb, a])) * 0.5
                        - pg.hh(a, bb, holo.clone(), anti.clone()) * 0.5
                        + pg.hh(a, bb, anti.clone(), anti.clone()) * 0.25
                        - last * 0.5;
                    r = r.max((ric.at(&[a, bb]) - rhs).norm());
                }
            }
            r
        }
        IdentityId::RdH => {
            let rch = pg.curvature_lowered(Chern);
            let rc = pg.curvature(Chern);
            let x = pg.ddbar_omega();
            let nt = pg.nabla_trace_h(Chern);
            let mut r = 0.0f64;
            for a in 0..n {
                for b in 0..n {
                    let bb = n + b;
                    let lhs = pg.trace_first_pair(&rch, bb, a);
                    let mut tr = zero();
                    for mu in 0..n {
                        tr += rc.at(&[a, bb, mu, mu]);
                    }
                    let rhs = tr - pg.trace_first_pair(x, bb, a) + nt.at(&[a, bb]) - nt.at(&[bb, a])
                        + pg.hh(a, bb, holo.clone(), anti.clone());
                    r = r.max((lhs - rhs).norm());
                }
            }
            r
        }
        IdentityId::Hswitch => {
            let dh = pg.lg.cov_deriv(pg.torsion_j(), &[Variance::Lower; 3], pg.connection(Chern)).values();
            let t = pg.trace_h_j();
            let mut r = 0.0f64;
            for a in 0..n {
                for b in 0..n {
                    let mut lhs = zero();
                    for lam in n..d {
                        for l in 0..d {
                            lhs += pg.ginv().at(&[lam, l]) * dh.at(&[l, lam, a, b]);
                        }
                    }
                    let rhs = -pg.lg.dj(t.at(&[b]), a).value() + pg.lg.dj(t.at(&[a]), b).value();
                    r = r.max((lhs - rhs).norm());
                }
            }
            r
        }
        IdentityId::RH11 => {
            let rh = pg.curvature(Hull);
            let rc = pg.curvature(Chern);
            let hr1j = pg.lg.raise(pg.torsion_j(), 1);
            let hr1 = hr1j.values();
            let dk = pg
                .lg
                .cov_deriv(&hr1j, &[Variance::Lower, Variance::Upper, Variance::Lower], pg.connection(Chern))
                .values();
            let mut r = 0.0f64;
            for mu in 0..n {
                for nu in 0..n {
                    let nb = n + nu;
                    for al in 0..n {
                        for be in 0..n {
                            let mut hh = zero();
                            for s in n..d {
                                hh += hr1.at(&[mu, al, s]) * hr1.at(&[nb, s, be]);
                            }
                            let rows = [
                                (rh.at(&[mu, nb, al, be]), rc.at(&[mu, nb, al, be]) + hh),
                                (rh.at(&[mu, nb, n + al, be]), *dk.at(&[mu, nb, n + al, be])),
                                (rh.at(&[mu, nb, al, n + be]), -dk.at(&[nb, mu, al, n + be])),
                            ];
                            for (x, y) in rows {
                                r = r.max((x - y).norm());
                            }
                        }
                    }
                }
            }
            r
        }
        IdentityId::RH20 => {
            let rh = pg.curvature(Hull);
            let x = pg.raise(pg.ddbar_omega(), 2);
            let mut r = 0.0f64;
            for mu in 0..n {
                for nu in 0..n {
                    for al in 0..n {
                        for be in 0..n {
                            r = r.max(rh.at(&[mu, nu, al, be]).norm());
                            r = r.max(rh.at(&[mu, nu, n + al, be]).norm());
                            let v = rh.at(&[mu, nu, al, n + be]) + x.at(&[mu, nu, al, n + be]);
                            r = r.max(v.norm());
                        }
                    }
                }
            }
            r
        }
        IdentityId::ConfBalDilaton => {
            let t = pg.trace_h_j().values();
            let p = pg.phi_grad_j().values();
            let mut r = 0.0f64;
            for a in 0..n {
                r = r.max((t.at(&[a]) + p.at(&[a]) * 2.0).norm());
                r = r.max((t.at(&[n + a]) - p.at(&[n + a]) * 2.0).norm());
            }
            r
        }
        IdentityId::BismutRicciFlat => {
            let rb = pg.curvature(Bismut);
            let mut r = 0.0f64;
            for p in 0..d {
                for q in 0..d {
                    let mut tr = zero();
                    for mu in 0..n {
                        tr += rb.at(&[p, q, mu, mu]);
                    }
                    r = r.max(tr.norm());
                }
            }
            r
        }
        IdentityId::ChernRicciConfBal => {
            let rch = pg.curvature_lowered(Chern);
            let x = pg.ddbar_omega();
            let mut r = 0.0f64;
            for a in 0..n {
                for b in n..d {
                    let lhs = pg.trace_first_pair(&rch, b, a);
                    let rhs = -pg.trace_first_pair(x, b, a) + pg.hh(a, b, holo.clone(), anti.clone());
                    r = r.max((lhs - rhs).norm());
                }
            }
            r
        }
        IdentityId::DivHChern => {
            let dh = pg.lg.cov_deriv(pg.torsion_j(), &[Variance::Lower; 3], pg.connection(Chern)).values();
            let mut r = 0.0f64;
            for a in 0..n {
                for b in 0..n {
                    let mut lhs = zero();
                    for lam in n..d {
                        for l in 0..d {
                            lhs += pg.ginv().at(&[lam, l]) * dh.at(&[l, lam, a, b]);
                        }
                    }
                    r = r.max(lhs.norm());
                }
            }
            r
        }
        IdentityId::DivH => {
            let w = weighted_torsion(pg);
            let dw = pg.lg.cov_deriv(&w, &[Variance::Lower; 3], pg.connection(LeviCivita)).values();
            let mut r = 0.0f64;
            for m in 0..d {
                for k in 0..d {
                    let mut acc = zero();
                    for p in 0..d {
                        for l in 0..d {
                            acc += pg.ginv().at(&[p, l]) * dw.at(&[l, m, k, p]);
                        }
                    }
                    r = r.max(acc.norm());
                }
            }
            r
        }
        IdentityId::CoclosedH => pg.codifferential(&weighted_torsion(pg)).max_norm(),
        IdentityId::DivF => {
            let b = cx.bundle.ok_or_else(|| pre(id, "a bundle metric"))?;
            div_f(pg, b).into_iter().fold(0.0, f64::max)
        }
        IdentityId::EinsteinHol => {
            let ric = pg.lg.ricci().values();
            let hess = pg.hessian_phi();
            let h12 = pg.raise(&pg.raise(&h, 1), 2);
            let x = pg.ddbar_omega();
            let mut r = 0.0f64;
            for a in 0..n {
                for b in 0..d {
                    let mut hh = zero();
                    for p in 0..d {
                        for q in 0..d {
                            hh += h.at(&[a, p, q]) * h12.at(&[b, p, q]);
                        }
                    }
                    let lhs = ric.at(&[a, b]) + hess.at(&[a, b]) * 2.0 - hh * 0.25;
                    let rhs = if b >= n { -pg.trace_first_pair(x, b, a) } else { zero() };
                    r = r.max((lhs - rhs).norm());
                }
            }
            r
        }
        IdentityId::Dilaton => {
            let (lhs, rhs) = dilaton_sides(pg);
            (lhs - rhs).norm()
        }
        IdentityId::LeeForm => {
            let lee = lee_form_values(pg);
            let lo = pg.lg.gradient(&pg.lg.log_norm_omega()).values();
            maxdiff(lee.data.iter().zip(&lo.data).map(|(a, b)| (*a, -b)))
        }
        IdentityId::BalancedResidual => {
            let lg = &pg.lg;
            let w = lg.omega();
            let nom = lg.norm_omega_sq().sqrt();
            let w2 = wedge(&w, &w).map(|j| j * &nom);
            exterior_d(&w2, n, DPart::Full).values().max_norm()
        }
        IdentityId::HymResidual => {
            let b = cx.bundle.ok_or_else(|| pre(id, "a bundle metric"))?;
            let w = pg.lg.omega();
            let w2 = wedge(&w, &w);
            let mut r = 0.0f64;
            for c in &b.f.comps {
                let top = wedge(c, &w2.map(|j| j.truncate(c.order())));
                r = r.max(top.values().max_norm());
            }
            r
        }
        IdentityId::AnomalyResidual => {
            let x = pg.ddbar_omega();
            let rr = trace_rr(pg, ConnectionKind::Chern, 0..n);
            let ff = match cx.bundle {
                Some(b) => crate::forms::trace_wedge(&b.f, &b.f, 0..b.r).values(),
                None => VTensor::zeros_v(d, 4),
            };
            maxdiff(
                x.data
                    .iter()
                    .zip(rr.data.iter().zip(&ff.data))
                    .map(|(a, (p, q))| (*a, (p - q) * cx.alpha_prime)),
            )
        }
    })
}

/// `e^{−2Φ} H = |Ω|_ω H`.
pub fn weighted_torsion(pg: &PointGeometry) -> JTensor {
    let w = pg.lg.norm_omega_sq().sqrt();
    pg.torsion_j().map(|j| j * &w)
}

/// `Tr R ∧ R` for a connection, traced over endomorphism indices in `range`.
pub fn trace_rr(pg: &PointGeometry, k: ConnectionKind, range: std::ops::Range<usize>) -> VTensor {
    let r = pg.lg.curvature_of(pg.connection(k));
    let e = EndForm::from_curvature(&r);
    crate::forms::trace_wedge(&e, &e, range).values()
}

/// Both sides of `ΔΦ = −|H|²/12 + 2|∇Φ|² + ½ (i∂∂̄ω)_α{}^{αμ}{}_μ`.
pub fn dilaton_sides(pg: &PointGeometry) -> (C64, C64) {
    let n = pg.n();
    let d = pg.d();
    let gi = pg.ginv();
    let hess = pg.hessian_phi();
    let p = pg.phi_grad_j().values();
    let mut lap = zero();
    let mut grad2 = zero();
    for a in 0..d {
        for b in 0..d {
            lap += gi.at(&[a, b]) * hess.at(&[a, b]);
            grad2 += gi.at(&[a, b]) * p.at(&[a]) * p.at(&[b]);
        }
    }
    let h2 = norm_sq_3(pg, &pg.torsion());
    let x = pg.ddbar_omega();
    let mut tr = zero();
    for al in 0..n {
        for mu in 0..n {
            for a in 0..d {
                for b in 0..d {
                    tr += gi.at(&[al, a]) * gi.at(&[mu, b]) * x.at(&[al, a, b, mu]);
                }
            }
        }
    }
    (lap, -h2 / 12.0 + grad2 * 2.0 + tr * 0.5)
}

/// `T_{abc} T^{abc}`.
pub fn norm_sq_3(pg: &PointGeometry, t: &VTensor) -> C64 {
    let up = pg.raise(&pg.raise(&pg.raise(t, 0), 1), 2);
    t.data.iter().zip(&up.data).map(|(a, b)| a * b).sum()
}

/// Lee form `θ = −J d†ω` with `J dz = i dz`, `J dz̄ = −i dz̄`.
pub fn lee_form_values(pg: &PointGeometry) -> VTensor {
    let n = pg.n();
    let dw = pg.codifferential(&pg.lg.omega());
    RTensor::from_fn(pg.d(), 1, |a| {
        let j = if a[0] < n { C64::new(0.0, 1.0) } else { C64::new(0.0, -1.0) };
        -j * dw.at(a)
    })
}

/// `max_n ‖∇̂^m (e^{−2Φ} F_{mn})‖` per real index `n`.
pub fn div_f(pg: &PointGeometry, b: &BundleCurvature) -> Vec<f64> {
    let d = pg.d();
    let r = b.r;
    let gam = pg.connection(ConnectionKind::Bismut);
    let w = pg.lg.norm_omega_sq().sqrt();
    let gi = pg.ginv();
    // (∇̂_l W)_{mk} for each endomorphism entry, with W = |Ω| F
    let wf: Vec<JTensor> = b.f.comps.iter().map(|c| c.map(|j| j * &w)).collect();
    let dw: Vec<VTensor> =
        wf.iter().map(|c| pg.lg.cov_deriv(c, &[Variance::Lower; 2], gam).values()).collect();
    let wv: Vec<VTensor> = wf.iter().map(|c| c.values()).collect();
    let mut out = Vec::with_capacity(d);
    for k in 0..d {
        let mut mat = vec![zero(); r * r];
        for m in 0..d {
            for l in 0..d {
                let gml = *gi.at(&[m, l]);
                if gml == zero() {
                    continue;
                }
                for e in 0..r * r {
                    let mut v = *dw[e].at(&[l, m, k]);
                    if let Some(a) = b.connection(l) {
                        let (i, j) = (e / r, e % r);
                        for s in 0..r {
                            v += a[i * r + s].value() * wv[s * r + j].at(&[m, k])
                                - wv[i * r + s].at(&[m, k]) * a[s * r + j].value();
                        }
                    }
                    mat[e] += gml * v;
                }
            }
        }
        out.push(mat.iter().map(|v| v.norm()).fold(0.0, f64::max));
    }
    out
}

/// Evaluates `id` at `point`, enforcing the identity's preconditions.
pub fn check_identity(
    metric: &MetricField,
    h: Option<&BundleMetricField>,
    point: &[f64],
    id: IdentityId,
) -> Result<f64, GeometryError> {
    check_identity_with(metric, h, point, id, 0.0)
}

pub fn check_identity_with(
    metric: &MetricField,
    h: Option<&BundleMetricField>,
    point: &[f64],
    id: IdentityId,
    alpha_prime: f64,
) -> Result<f64, GeometryError> {
    if id.requires_balanced() && metric.family != Family::ConformallyBalanced {
        return Err(pre(id, "a metric from a conformally balanced family"));
    }
    if id.requires_bundle() && h.is_none() {
        return Err(pre(id, "a bundle metric"));
    }
    let order = id.jet_order();
    let pg = PointGeometry::from_metric(metric, point, order)?;
    let bundle = match h {
        Some(b) => Some(BundleCurvature::from_jets(b.rank, metric.rank, b.matrix_jets(point, order))?),
        None => None,
    };
    identity_residual(id, &IdentityContext { geom: &pg, bundle: bundle.as_ref(), alpha_prime })
}

/// Residuals for several identities sharing one pointwise evaluation.
pub fn check_identities(
    metric: &MetricField,
    h: Option<&BundleMetricField>,
    point: &[f64],
    ids: &[IdentityId],
    alpha_prime: f64,
) -> Result<Vec<f64>, GeometryError> {
    for &id in ids {
        if id.requires_balanced() && metric.family != Family::ConformallyBalanced {
            return Err(pre(id, "a metric from a conformally balanced family"));
        }
        if id.requires_bundle() && h.is_none() {
            return Err(pre(id, "a bundle metric"));
        }
    }
    let order = ids.iter().map(|i| i.jet_order()).max().unwrap_or(2);
    let pg = PointGeometry::from_metric(metric, point, order)?;
    let bundle = match h {
        Some(b) => Some(BundleCurvature::from_jets(b.rank, metric.rank, b.matrix_jets(point, order))?),
        None => None,
    };
    let cx = IdentityContext { geom: &pg, bundle: bundle.as_ref(), alpha_prime };
    ids.iter().map(|&id| identity_residual(id, &cx)).collect()
}

/// Max-norm difference of two value tensors, re-exported for callers.
pub fn tensor_residual(a: &VTensor, b: &VTensor) -> f64 {
    residual(a, b)
}

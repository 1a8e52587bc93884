//! Hermitian geometry at one point, from jets of `g_{μν̄}` and of the
//! holomorphic volume coefficient `f`.
//!
//! Connection coefficients are stored `[i][k][j]` for `Γ_i{}^k{}_j`, with
//! `∇_i V^k = ∂_i V^k + Γ_i{}^k{}_j V^j`. Curvatures are stored
//! `[p][q][m][j]` for `R_{pq}{}^m{}_j`.

use crate::error::GeometryError;
use crate::forms::{bar, exterior_d, is_holo, jet_var, DPart};
use crate::jet::Jet;
use crate::tensor::{unflatten, JTensor, RTensor, Variance};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConnectionKind {
    Chern,
    LeviCivita,
    Hull,
    Bismut,
}

impl ConnectionKind {
    pub const ALL: [ConnectionKind; 4] =
        [ConnectionKind::Chern, ConnectionKind::LeviCivita, ConnectionKind::Hull, ConnectionKind::Bismut];
}

fn i_unit() -> C64 {
    C64::new(0.0, 1.0)
}

/// Determinant and inverse of a small jet matrix (row-major, `n ≤ 3`).
pub fn jet_det_inv(n: usize, m: &[Jet]) -> (Jet, Vec<Jet>) {
    let a = |i: usize, j: usize| &m[i * n + j];
    match n {
        1 => {
            let det = a(0, 0).clone();
            (det.clone(), vec![det.recip()])
        }
        2 => {
            let det = &(a(0, 0) * a(1, 1)) - &(a(0, 1) * a(1, 0));
            let r = det.recip();
            let inv = vec![a(1, 1) * &r, &(-a(0, 1)) * &r, &(-a(1, 0)) * &r, a(0, 0) * &r];
            (det, inv)
        }
        3 => {
            let cof = |i: usize, j: usize| {
                let (i1, i2) = ((i + 1) % 3, (i + 2) % 3);
                let (j1, j2) = ((j + 1) % 3, (j + 2) % 3);
                &(a(i1, j1) * a(i2, j2)) - &(a(i1, j2) * a(i2, j1))
            };
            let c: Vec<Jet> = (0..9).map(|k| cof(k / 3, k % 3)).collect();
            let mut det = Jet::zero(m[0].order());
            for j in 0..3 {
                det.add_mul(a(0, j), &c[j]);
            }
            let r = det.recip();
            // inverse[i][j] = cof[j][i] / det
            let inv = (0..9).map(|k| &c[(k % 3) * 3 + k / 3] * &r).collect();
            (det, inv)
        }
        _ => panic!("matrix size {n} not supported"),
    }
}

#[derive(Clone, Debug)]
pub struct LocalGeometry {
    pub n: usize,
    pub order: usize,
    /// `g[μ * n + ν] = g_{μν̄}`.
    pub g: Vec<Jet>,
    /// `ginv[σ * n + μ] = g^{σ̄μ}`, so that `g^{σ̄μ} g_{μν̄} = δ`.
    pub ginv: Vec<Jet>,
    pub det: Jet,
    pub f: Jet,
    gr: JTensor,
    gri: JTensor,
}

impl LocalGeometry {
    pub fn from_jets(n: usize, g: Vec<Jet>, f: Jet) -> Result<Self, GeometryError> {
        assert_eq!(g.len(), n * n);
        let order = g.iter().map(|j| j.order()).min().unwrap().min(f.order());
        let g: Vec<Jet> = g.iter().map(|j| j.truncate(order)).collect();
        let f = f.truncate(order);
        let scale = g.iter().map(|j| j.value().norm()).fold(0.0, f64::max).max(1e-300);
        let (det, ginv) = jet_det_inv(n, &g);
        let dv = det.value();
        if !(dv.norm() > 1e-13 * scale.powi(n as i32)) || !dv.re.is_finite() {
            return Err(GeometryError::NonInvertibleMetric { det: dv.norm() });
        }
        let d = 2 * n;
        let mut gr = JTensor::zeros(d, 2, order);
        let mut gri = JTensor::zeros(d, 2, order);
        for mu in 0..n {
            for nu in 0..n {
                gr.set(&[mu, n + nu], g[mu * n + nu].clone());
                gr.set(&[n + nu, mu], g[mu * n + nu].clone());
                gri.set(&[n + mu, nu], ginv[mu * n + nu].clone());
                gri.set(&[nu, n + mu], ginv[mu * n + nu].clone());
            }
        }
        Ok(LocalGeometry { n, order, g, ginv, det, f, gr, gri })
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    /// Complexified metric `G_{ab}`.
    pub fn metric_real(&self) -> &JTensor {
        &self.gr
    }

    /// Inverse `G^{ab}`.
    pub fn inverse_real(&self) -> &JTensor {
        &self.gri
    }

    #[inline]
    pub fn dj(&self, j: &Jet, a: usize) -> Jet {
        j.d(jet_var(a, self.n))
    }

    /// The Kähler form `ω = i g_{μν̄} dz^μ ∧ dz̄^ν`.
    pub fn omega(&self) -> JTensor {
        let n = self.n;
        let mut w = JTensor::zeros(2 * n, 2, self.order);
        for mu in 0..n {
            for nu in 0..n {
                let v = &self.g[mu * n + nu];
                w.set(&[mu, n + nu], v.scale(i_unit()));
                w.set(&[n + nu, mu], v.scale(-i_unit()));
            }
        }
        w
    }

    /// Torsion 3-form `H = i(∂ − ∂̄)ω`.
    pub fn torsion(&self) -> JTensor {
        let w = self.omega();
        let a = exterior_d(&w, self.n, DPart::Holomorphic);
        let b = exterior_d(&w, self.n, DPart::Antiholomorphic);
        RTensor {
            d: a.d,
            rank: 3,
            data: a.data.iter().zip(&b.data).map(|(x, y)| (x - y).scale(i_unit())).collect(),
        }
    }

    /// `i ∂∂̄ ω`.
    pub fn ddbar_omega(&self) -> JTensor {
        let w = self.omega();
        let db = exterior_d(&w, self.n, DPart::Antiholomorphic);
        exterior_d(&db, self.n, DPart::Holomorphic).map(|j| j.scale(i_unit()))
    }

    /// Raises slot `s` with `G^{ab}`.
    pub fn raise(&self, t: &JTensor, s: usize) -> JTensor {
        self.contract_slot(t, s, &self.gri)
    }

    /// Lowers slot `s` with `G_{ab}`.
    pub fn lower(&self, t: &JTensor, s: usize) -> JTensor {
        self.contract_slot(t, s, &self.gr)
    }

    fn contract_slot(&self, t: &JTensor, s: usize, m: &JTensor) -> JTensor {
        let d = t.d;
        let ord = t.order().min(m.order());
        let mut idx = vec![0; t.rank];
        let mut out = JTensor::zeros(d, t.rank, ord);
        for flat in 0..out.data.len() {
            unflatten(flat, d, &mut idx);
            let k = idx[s];
            let mut acc = Jet::zero(ord);
            let mut src = idx.clone();
            for l in 0..d {
                let c = m.at(&[k, l]);
                if c.value() == C64::new(0.0, 0.0) && c.coeffs().iter().all(|v| v.norm() == 0.0) {
                    continue;
                }
                src[s] = l;
                acc.add_mul(c, t.at(&src));
            }
            out.data[flat] = acc;
        }
        out
    }

    /// Chern connection `Γ_μ{}^κ{}_ν = ∂_μ g_{νσ̄} g^{σ̄κ}` plus its conjugate block.
    fn chern_block(&self) -> Vec<Jet> {
        let n = self.n;
        let ord = self.order - 1;
        let mut out = vec![Jet::zero(ord); n * n * n];
        for mu in 0..n {
            for nu in 0..n {
                for sg in 0..n {
                    let dg = self.g[nu * n + sg].d(mu);
                    for ka in 0..n {
                        out[(mu * n + ka) * n + nu].add_mul(&dg, &self.ginv[sg * n + ka]);
                    }
                }
            }
        }
        out
    }

    /// Completes a real connection from its coefficients with holomorphic
    /// upper index, using `Γ_ī{}^k̄{}_j̄ = conj(Γ_i{}^k{}_j)`.
    fn complete_real(&self, holo_target: impl Fn(usize, usize, usize) -> Jet) -> JTensor {
        let n = self.n;
        let d = 2 * n;
        let ord = self.order - 1;
        let mut t = JTensor::zeros(d, 3, ord);
        for i in 0..d {
            for k in 0..n {
                for j in 0..d {
                    let v = holo_target(i, k, j);
                    t.set(&[bar(i, n), bar(k, n), bar(j, n)], v.conj());
                    t.set(&[i, k, j], v);
                }
            }
        }
        t
    }

    /// Connection coefficients of the given kind.
    pub fn connection(&self, kind: ConnectionKind) -> JTensor {
        let n = self.n;
        let ord = self.order - 1;
        let zero = Jet::zero(ord);
        match kind {
            ConnectionKind::Chern => {
                let ch = self.chern_block();
                self.complete_real(|i, k, j| {
                    if i < n && j < n {
                        ch[(i * n + k) * n + j].clone()
                    } else {
                        zero.clone()
                    }
                })
            }
            ConnectionKind::LeviCivita => self.christoffel(),
            ConnectionKind::Hull => {
                let ch = self.chern_block();
                // H_μ{}^κ{}_ν̄ = G^{κl} H_{μlν̄}
                let hr = self.raise(&self.torsion(), 1);
                self.complete_real(|i, k, j| {
                    if i < n && j < n {
                        ch[(i * n + k) * n + j].clone()
                    } else if i < n {
                        hr.at(&[i, k, j]).clone()
                    } else {
                        zero.clone()
                    }
                })
            }
            ConnectionKind::Bismut => {
                let ch = self.chern_block();
                let h = self.torsion();
                // H^κ{}_{μλ} = G^{κl} H_{lμλ};  H_{λμ̄}{}^κ = G^{κl} H_{λμ̄l}
                let h_first = self.raise(&h, 0);
                let h_last = self.raise(&h, 2);
                self.complete_real(|i, k, j| {
                    if i < n && j < n {
                        let mut v = ch[(i * n + k) * n + j].clone();
                        v.add_assign_ref(h_first.at(&[k, i, j]));
                        v
                    } else if i >= n && j < n {
                        -h_last.at(&[j, i, k])
                    } else {
                        zero.clone()
                    }
                })
            }
        }
    }

    /// Levi-Civita connection from the Christoffel formula on `G_{ab}`.
    pub fn christoffel(&self) -> JTensor {
        let d = self.dim();
        let ord = self.order - 1;
        let dg = RTensor::from_fn(d, 3, |idx| self.dj(self.gr.at(&[idx[1], idx[2]]), idx[0]));
        let mut t = JTensor::zeros(d, 3, ord);
        for i in 0..d {
            for j in 0..d {
                let mut lowered = Vec::with_capacity(d);
                for l in 0..d {
                    let mut v = dg.at(&[i, l, j]).clone();
                    v.add_assign_ref(dg.at(&[j, l, i]));
                    v.add_scaled(dg.at(&[l, i, j]), C64::new(-1.0, 0.0));
                    lowered.push(v);
                }
                for k in 0..d {
                    let mut acc = Jet::zero(ord);
                    for (l, lv) in lowered.iter().enumerate() {
                        acc.add_mul(self.gri.at(&[k, l]), lv);
                    }
                    t.set(&[i, k, j], acc.scale_re(0.5));
                }
            }
        }
        t
    }

    /// `R_{pq}{}^m{}_j = ∂_p Γ_q{}^m{}_j + Γ_p{}^m{}_r Γ_q{}^r{}_j − (p ↔ q)`.
    pub fn curvature_of(&self, gamma: &JTensor) -> JTensor {
        let d = gamma.d;
        let ord = gamma.order().saturating_sub(1);
        let dgam = RTensor::from_fn(d, 4, |x| self.dj(gamma.at(&[x[1], x[2], x[3]]), x[0]));
        let mut r = JTensor::zeros(d, 4, ord);
        for p in 0..d {
            for q in (p + 1)..d {
                for m in 0..d {
                    for j in 0..d {
                        let mut v = dgam.at(&[p, q, m, j]) - dgam.at(&[q, p, m, j]);
                        for s in 0..d {
                            v.add_mul(gamma.at(&[p, m, s]), gamma.at(&[q, s, j]));
                            let t = gamma.at(&[q, m, s]) * gamma.at(&[p, s, j]);
                            v.add_scaled(&t, C64::new(-1.0, 0.0));
                        }
                        r.set(&[q, p, m, j], -&v);
                        r.set(&[p, q, m, j], v);
                    }
                }
            }
        }
        r
    }

    pub fn curvature(&self, kind: ConnectionKind) -> JTensor {
        self.curvature_of(&self.connection(kind))
    }

    /// Riemannian Ricci tensor `R_{pj} = −R_{pm}{}^m{}_j`.
    pub fn ricci(&self) -> JTensor {
        let r = self.curvature(ConnectionKind::LeviCivita);
        let d = self.dim();
        RTensor::from_fn(d, 2, |x| {
            let mut acc = Jet::zero(r.order());
            for m in 0..d {
                acc.add_scaled(r.at(&[x[0], m, m, x[1]]), C64::new(-1.0, 0.0));
            }
            acc
        })
    }

    /// `∇_i T`, with the derivative index placed first.
    pub fn cov_deriv(&self, t: &JTensor, variances: &[Variance], gamma: &JTensor) -> JTensor {
        assert_eq!(variances.len(), t.rank);
        let d = t.d;
        let ord = t.order().saturating_sub(1).min(gamma.order());
        let mut out = JTensor::zeros(d, t.rank + 1, ord);
        let mut full = vec![0; t.rank + 1];
        for flat in 0..out.data.len() {
            unflatten(flat, d, &mut full);
            let i = full[0];
            let idx = &full[1..];
            let mut acc = self.dj(t.at(idx), i);
            let mut src = idx.to_vec();
            for (s, var) in variances.iter().enumerate() {
                let a = idx[s];
                for l in 0..d {
                    src[s] = l;
                    match var {
                        Variance::Upper => acc.add_mul(gamma.at(&[i, a, l]), t.at(&src)),
                        Variance::Lower => {
                            let p = gamma.at(&[i, l, a]) * t.at(&src);
                            acc.add_scaled(&p, C64::new(-1.0, 0.0));
                        }
                    }
                }
                src[s] = a;
            }
            out.data[flat] = acc;
        }
        out
    }

    /// `|Ω|²_ω = f f̄ / det g`.
    pub fn norm_omega_sq(&self) -> Jet {
        let ff = &self.f * &self.f.conj();
        &ff * &self.det.recip()
    }

    /// `log |Ω|_ω`.
    pub fn log_norm_omega(&self) -> Jet {
        self.norm_omega_sq().ln().scale_re(0.5)
    }

    /// Dilaton `Φ = −½ log |Ω|_ω`.
    pub fn dilaton(&self) -> Jet {
        self.log_norm_omega().scale_re(-0.5)
    }

    /// Gradient 1-form `∂_a φ`.
    pub fn gradient(&self, phi: &Jet) -> JTensor {
        RTensor::from_fn(self.dim(), 1, |x| self.dj(phi, x[0]))
    }

    pub fn is_holo(&self, a: usize) -> bool {
        is_holo(a, self.n)
    }
}

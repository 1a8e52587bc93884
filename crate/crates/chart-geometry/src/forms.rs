//! Pointwise differential forms stored as fully antisymmetric component
//! tensors, so that `η = (1/k!) η_{a_1…a_k} dx^{a_1} ∧ … ∧ dx^{a_k}`.
//!
//! For a `(p,q)` form this matches the convention
//! `η = (1/p!q!) η_{α…β̄…} dz^α ∧ … ∧ dz̄^β ∧ …`.

use crate::jet::Jet;
use crate::tensor::{unflatten, JTensor, RTensor};
use num_complex::Complex64 as C64;

/// Which part of the exterior derivative to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DPart {
    Full,
    Holomorphic,
    Antiholomorphic,
}

/// Jet variable carried by real index `a` on a chart of complex dimension `n`.
#[inline]
pub fn jet_var(a: usize, n: usize) -> usize {
    if a < n {
        a
    } else {
        3 + a - n
    }
}

#[inline]
pub fn is_holo(a: usize, n: usize) -> bool {
    a < n
}

/// Index with its block swapped (`μ ↔ μ̄`).
#[inline]
pub fn bar(a: usize, n: usize) -> usize {
    if a < n {
        a + n
    } else {
        a - n
    }
}

/// Bidegree of an index tuple.
pub fn bidegree(idx: &[usize], n: usize) -> (usize, usize) {
    let p = idx.iter().filter(|&&a| a < n).count();
    (p, idx.len() - p)
}

/// Sign of the permutation sorting `idx`, or `None` when an index repeats.
pub fn sort_sign(idx: &[usize]) -> Option<(Vec<usize>, f64)> {
    let mut v = idx.to_vec();
    let mut sign = 1.0;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// Strictly increasing `k`-tuples from `0..d`.
pub fn sorted_tuples(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for a in start..d {
            cur.push(a);
            rec(a + 1, d, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, d, k, &mut Vec::new(), &mut out);
    out
}

/// Builds an antisymmetric tensor from its values on sorted tuples.
pub fn antisym_from_sorted(d: usize, k: usize, order: usize, mut f: impl FnMut(&[usize]) -> Jet) -> JTensor {
    let mut t = JTensor::zeros(d, k, order);
    if k == 0 {
        t.data[0] = f(&[]);
        return t;
    }
    for s in sorted_tuples(d, k) {
        let v = f(&s);
        let fl = t.flat(&s);
        t.data[fl] = v;
    }
    let mut idx = vec![0; k];
    for flat in 0..t.data.len() {
        unflatten(flat, d, &mut idx);
        if idx.windows(2).all(|w| w[0] < w[1]) {
            continue;
        }
        if let Some((s, sign)) = sort_sign(&idx) {
            let src = t.flat(&s);
            t.data[flat] = t.data[src].scale_re(sign);
        }
    }
    t
}

/// Exterior derivative (or its `∂`/`∂̄` part) of a jet-valued form.
pub fn exterior_d(form: &JTensor, n: usize, part: DPart) -> JTensor {
    let d = form.d;
    let k = form.rank;
    let ord = form.order().saturating_sub(1);
    antisym_from_sorted(d, k + 1, ord, |s| {
        let mut acc = Jet::zero(ord);
        let mut rest = vec![0; k];
        for i in 0..=k {
            let a = s[i];
            let take = match part {
                DPart::Full => true,
                DPart::Holomorphic => is_holo(a, n),
                DPart::Antiholomorphic => !is_holo(a, n),
            };
            if !take {
                continue;
            }
            let mut m = 0;
            for (j, &b) in s.iter().enumerate() {
                if j != i {
                    rest[m] = b;
                    m += 1;
                }
            }
            let der = form.at(&rest).d(jet_var(a, n));
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            acc.add_scaled(&der, C64::new(sign, 0.0));
        }
        acc
    })
}

/// Splits a sorted tuple into every `(p, q)` shuffle with its sign.
fn shuffles(s: &[usize], p: usize) -> Vec<(Vec<usize>, Vec<usize>, f64)> {
    let k = s.len();
    let mut out = Vec::new();
    for pos in sorted_tuples(k, p) {
        let left: Vec<usize> = pos.iter().map(|&i| s[i]).collect();
        let right: Vec<usize> = (0..k).filter(|i| !pos.contains(i)).map(|i| s[i]).collect();
        let mut order = pos.clone();
        order.extend((0..k).filter(|i| !pos.contains(i)));
        let (_, sign) = sort_sign(&order).unwrap();
        out.push((left, right, sign));
    }
    out
}

/// `a ∧ b` for jet-valued forms.
pub fn wedge(a: &JTensor, b: &JTensor) -> JTensor {
    let d = a.d;
    let (p, q) = (a.rank, b.rank);
    let ord = a.order().min(b.order());
    if p + q > d {
        return JTensor::zeros(d, p + q, ord);
    }
    antisym_from_sorted(d, p + q, ord, |s| {
        let mut acc = Jet::zero(ord);
        for (l, r, sign) in shuffles(s, p) {
            let t = a.at(&l) * b.at(&r);
            acc.add_scaled(&t, C64::new(sign, 0.0));
        }
        acc
    })
}

/// An `e × e` matrix of jet-valued 2-forms (curvature of a connection).
#[derive(Clone, Debug)]
pub struct EndForm {
    pub e: usize,
    /// `comps[m * e + j]` is the 2-form `A^m_j`.
    pub comps: Vec<JTensor>,
}

impl EndForm {
    /// Reinterprets `R_{pq}{}^m{}_j` (stored `[p][q][m][j]`) as an endomorphism-valued form.
    pub fn from_curvature(r: &JTensor) -> Self {
        let d = r.d;
        let ord = r.order();
        let mut comps = Vec::with_capacity(d * d);
        for m in 0..d {
            for j in 0..d {
                comps.push(RTensor::from_fn(d, 2, |pq| r.at(&[pq[0], pq[1], m, j]).truncate(ord)));
            }
        }
        EndForm { e: d, comps }
    }

    pub fn comp(&self, m: usize, j: usize) -> &JTensor {
        &self.comps[m * self.e + j]
    }
}

/// `Tr(A ∧ B)` with the trace restricted to endomorphism indices in `range`.
pub fn trace_wedge(a: &EndForm, b: &EndForm, range: std::ops::Range<usize>) -> JTensor {
    let d = a.comps[0].d;
    let ord = a.comps[0].order().min(b.comps[0].order());
    antisym_from_sorted(d, 4, ord, |s| {
        let mut acc = Jet::zero(ord);
        for (l, r, sign) in shuffles(s, 2) {
            for m in range.clone() {
                for j in range.clone() {
                    let t = a.comp(m, j).at(&l) * b.comp(j, m).at(&r);
                    acc.add_scaled(&t, C64::new(sign, 0.0));
                }
            }
        }
        acc
    })
}

/// Keeps only the components of bidegree `(p, q)`.
pub fn project_bidegree(form: &JTensor, n: usize, p: usize, q: usize) -> JTensor {
    let ord = form.order();
    let mut out = form.clone();
    let mut idx = vec![0; form.rank];
    for flat in 0..out.data.len() {
        unflatten(flat, form.d, &mut idx);
        if bidegree(&idx, n) != (p, q) {
            out.data[flat] = Jet::zero(ord);
        }
    }
    out
}

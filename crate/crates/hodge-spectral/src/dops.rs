//! `∂`, `∂̄` and their flat `L²` adjoints as Fourier multipliers.
//!
//! The reference metric is `g_{μν̄} = δ_{μν̄}` with `|dz^μ| = 1`, so the
//! monomials `dz^I ∧ dz̄^J` are orthonormal and each adjoint is the
//! conjugate transpose of the multiplier matrix.

use crate::form::{binomial, insert_sorted, subsets, SpectralForm, N};
use crate::grid::{Grid, DIM};
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    /// `∂`
    Holo,
    /// `∂̄`
    Anti,
}

/// Multiplier of `∂_μ` (or `∂_μ̄`) on `exp(i w·x)`.
pub fn symbol(w: &[f64; DIM], mu: usize, part: Part) -> C64 {
    let (a, b) = (w[2 * mu], w[2 * mu + 1]);
    match part {
        Part::Holo => C64::new(0.5 * b, 0.5 * a),
        Part::Anti => C64::new(-0.5 * b, 0.5 * a),
    }
}

pub fn target(p: usize, q: usize, part: Part) -> (usize, usize) {
    match part {
        Part::Holo => (p + 1, q),
        Part::Anti => (p, q + 1),
    }
}

#[derive(Clone, Copy, Debug)]
struct Term {
    src: usize,
    dst: usize,
    sign: f64,
    mu: usize,
}

fn terms(p: usize, q: usize, part: Part) -> Vec<Term> {
    let (tp, tq) = target(p, q, part);
    if tp > N || tq > N {
        return Vec::new();
    }
    let nq = binomial(N, q);
    let tnq = binomial(N, tq);
    let mut out = Vec::new();
    for (ii, i) in subsets(p).iter().enumerate() {
        for (jj, j) in subsets(q).iter().enumerate() {
            for mu in 0..N {
                let hit = match part {
                    Part::Holo => insert_sorted(i, mu).map(|(s, sg)| (crate::form::subset_index(&s) * tnq + jj, sg)),
                    Part::Anti => insert_sorted(j, mu).map(|(s, sg)| {
                        let parity = if p % 2 == 0 { 1.0 } else { -1.0 };
                        (ii * tnq + crate::form::subset_index(&s), sg * parity)
                    }),
                };
                if let Some((dst, sign)) = hit {
                    out.push(Term { src: ii * nq + jj, dst, sign, mu });
                }
            }
        }
    }
    out
}

/// `∂η` or `∂̄η`. Beyond degree 3 the result is the (component-free) zero form.
pub fn apply(form: &SpectralForm, part: Part) -> SpectralForm {
    let (tp, tq) = target(form.p, form.q, part);
    let mut out = SpectralForm::zero(tp.min(N + 1), tq.min(N + 1), form.grid);
    let g = &form.grid;
    let wv: Vec<[f64; DIM]> = (0..g.len()).map(|k| g.wavevector(k)).collect();
    for t in terms(form.p, form.q, part) {
        let (src, dst) = (&form.comps[t.src], &mut out.comps[t.dst]);
        for k in 0..g.len() {
            if src[k].re != 0.0 || src[k].im != 0.0 {
                dst[k] += src[k] * symbol(&wv[k], t.mu, part) * t.sign;
            }
        }
    }
    out
}

/// `∂†η` or `∂̄†η`; `None` when the degree would drop below zero.
pub fn apply_adjoint(form: &SpectralForm, part: Part) -> Option<SpectralForm> {
    let (sp, sq) = match part {
        Part::Holo => (form.p.checked_sub(1)?, form.q),
        Part::Anti => (form.p, form.q.checked_sub(1)?),
    };
    let mut out = SpectralForm::zero(sp, sq, form.grid);
    if form.p > N || form.q > N {
        return Some(out);
    }
    let g = &form.grid;
    let wv: Vec<[f64; DIM]> = (0..g.len()).map(|k| g.wavevector(k)).collect();
    for t in terms(sp, sq, part) {
        let (src, dst) = (&form.comps[t.dst], &mut out.comps[t.src]);
        for k in 0..g.len() {
            if src[k].re != 0.0 || src[k].im != 0.0 {
                dst[k] += src[k] * symbol(&wv[k], t.mu, part).conj() * t.sign;
            }
        }
    }
    Some(out)
}

pub fn del(f: &SpectralForm) -> SpectralForm {
    apply(f, Part::Holo)
}

pub fn delbar(f: &SpectralForm) -> SpectralForm {
    apply(f, Part::Anti)
}

/// `i∂∂̄η`.
pub fn i_ddbar(f: &SpectralForm) -> SpectralForm {
    del(&delbar(f)).scale(C64::new(0.0, 1.0))
}

/// `dη = ∂η + ∂̄η`, returned as its two parts.
pub fn exterior_d(f: &SpectralForm) -> (SpectralForm, SpectralForm) {
    (del(f), delbar(f))
}

/// `∂̄†∂†η`.
pub fn ddbar_adjoint(f: &SpectralForm) -> Option<SpectralForm> {
    apply_adjoint(&apply_adjoint(f, Part::Holo)?, Part::Anti)
}

/// All four first-order operators applied to one form.
#[derive(Clone, Debug)]
pub struct DOps {
    pub del: SpectralForm,
    pub delbar: SpectralForm,
    pub del_adjoint: Option<SpectralForm>,
    pub delbar_adjoint: Option<SpectralForm>,
}

pub fn d_ops(f: &SpectralForm) -> DOps {
    DOps {
        del: del(f),
        delbar: delbar(f),
        del_adjoint: apply_adjoint(f, Part::Holo),
        delbar_adjoint: apply_adjoint(f, Part::Anti),
    }
}

/// Multiplier matrix of `∂` or `∂̄` from `(p,q)` at wavevector `w`
/// (rows: target components, columns: source components).
pub fn d_matrix(p: usize, q: usize, part: Part, w: &[f64; DIM]) -> DMatrix<C64> {
    let (tp, tq) = target(p, q, part);
    let rows = binomial(N, tp) * binomial(N, tq);
    let cols = binomial(N, p) * binomial(N, q);
    let mut m = DMatrix::zeros(rows, cols);
    for t in terms(p, q, part) {
        m[(t.dst, t.src)] += symbol(w, t.mu, part) * t.sign;
    }
    m
}

/// Largest coefficient of `∂η` and `∂̄η`.
pub fn closedness_defect(f: &SpectralForm) -> f64 {
    del(f).max_abs().max(delbar(f).max_abs())
}

/// Slots of a grid paired with their wavevectors.
pub fn wavevectors(g: &Grid) -> Vec<[f64; DIM]> {
    (0..g.len()).map(|k| g.wavevector(k)).collect()
}

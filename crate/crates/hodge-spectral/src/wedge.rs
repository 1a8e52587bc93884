//! Wedge products, evaluated pointwise on a 2× padded grid.

use crate::form::{binomial, subset_index, subsets, SpectralForm, N};
use chart_geometry::forms::sort_sign;
use num_complex::Complex64 as C64;

/// `(a_I dz^I ∧ dz̄^J) ∧ (b_K dz^K ∧ dz̄^L)`: target component and sign.
#[derive(Clone, Copy, Debug)]
pub struct Product {
    pub a: usize,
    pub b: usize,
    pub out: usize,
    pub sign: f64,
}

pub fn product_table(p1: usize, q1: usize, p2: usize, q2: usize) -> Vec<Product> {
    let (p, q) = (p1 + p2, q1 + q2);
    if p > N || q > N {
        return Vec::new();
    }
    let mut out = Vec::new();
    let graded = if (q1 * p2) % 2 == 0 { 1.0 } else { -1.0 };
    let (nq1, nq2, nq) = (binomial(N, q1), binomial(N, q2), binomial(N, q));
    for (i1, s1) in subsets(p1).iter().enumerate() {
        for (j1, t1) in subsets(q1).iter().enumerate() {
            for (i2, s2) in subsets(p2).iter().enumerate() {
                for (j2, t2) in subsets(q2).iter().enumerate() {
                    let hol: Vec<usize> = s1.iter().chain(s2).copied().collect();
                    let ant: Vec<usize> = t1.iter().chain(t2).copied().collect();
                    let (Some((hs, sh)), Some((as_, sa))) = (sort_sign(&hol), sort_sign(&ant)) else { continue };
                    out.push(Product {
                        a: i1 * nq1 + j1,
                        b: i2 * nq2 + j2,
                        out: subset_index(&hs) * nq + subset_index(&as_),
                        sign: graded * sh * sa,
                    });
                }
            }
        }
    }
    out
}

/// Pointwise wedge of component vectors in the sorted basis.
pub fn wedge_pointwise(
    (p1, q1, a): (usize, usize, &[C64]),
    (p2, q2, b): (usize, usize, &[C64]),
) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); binomial(N, p1 + p2) * binomial(N, q1 + q2)];
    for t in product_table(p1, q1, p2, q2) {
        out[t.out] += a[t.a] * b[t.b] * t.sign;
    }
    out
}

/// `a ∧ b`. Both factors are transferred to the padded grid, multiplied
/// there and truncated back, so products of fields with frequencies below
/// a quarter of the grid carry no aliasing.
pub fn wedge(a: &SpectralForm, b: &SpectralForm) -> SpectralForm {
    assert_eq!(a.grid, b.grid, "grid mismatch");
    let (p, q) = (a.p + b.p, a.q + b.q);
    let mut out = SpectralForm::zero(p, q, a.grid);
    if p > N || q > N {
        return out;
    }
    let pad = a.grid.padded();
    let to_vals = |f: &SpectralForm| -> Vec<Vec<C64>> {
        f.comps.iter().map(|c| pad.inverse(&a.grid.transfer(c, &pad))).collect()
    };
    let (va, vb) = (to_vals(a), to_vals(b));
    let mut prod = vec![vec![C64::new(0.0, 0.0); pad.len()]; out.component_count()];
    for t in product_table(a.p, a.q, b.p, b.q) {
        let (x, y, z) = (&va[t.a], &vb[t.b], &mut prod[t.out]);
        for k in 0..pad.len() {
            z[k] += x[k] * y[k] * t.sign;
        }
    }
    for (c, vals) in prod.iter().enumerate() {
        out.comps[c] = pad.transfer(&pad.forward(vals), &a.grid);
    }
    out
}

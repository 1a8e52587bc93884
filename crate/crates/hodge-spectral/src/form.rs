//! Differential forms on the flat 6-torus with Fourier coefficients.
//!
//! A `(p,q)`-form is `Σ η_{IJ} dz^I ∧ dz̄^J` over increasing multi-indices
//! `I`, `J`; each `η_{IJ}` is a coefficient array on a [`Grid`].

use crate::error::HodgeError;
use crate::grid::{Grid, DIM};
use chart_geometry::forms::{sort_sign, sorted_tuples};
use chart_geometry::tensor::VTensor;
use chart_geometry::{FourierScalarField, TensorValue, Variance};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

/// Complex dimension of the torus.
pub const N: usize = 3;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Increasing `k`-subsets of `{0, 1, 2}` in lexicographic order.
pub fn subsets(k: usize) -> Vec<Vec<usize>> {
    if k > N {
        return Vec::new();
    }
    sorted_tuples(N, k)
}

pub fn subset_index(s: &[usize]) -> usize {
    subsets(s.len()).iter().position(|t| t == s).expect("increasing subset")
}

/// Inserts `a` into the increasing `s`; the sign is `(-1)^{#{b ∈ s : b < a}}`.
pub fn insert_sorted(s: &[usize], a: usize) -> Option<(Vec<usize>, f64)> {
    if s.contains(&a) {
        return None;
    }
    let before = s.iter().filter(|&&b| b < a).count();
    let mut out = s.to_vec();
    out.insert(before, a);
    Some((out, if before % 2 == 0 { 1.0 } else { -1.0 }))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralForm {
    pub p: usize,
    pub q: usize,
    pub grid: Grid,
    /// `comps[I * C(3,q) + J]` holds the coefficients of `dz^I ∧ dz̄^J`.
    pub comps: Vec<Vec<C64>>,
    /// Set by [`SpectralForm::real_part`]; see [`SpectralForm::is_real`].
    #[serde(default)]
    pub real: bool,
}

impl SpectralForm {
    pub fn zero(p: usize, q: usize, grid: Grid) -> Self {
        let count = binomial(N, p) * binomial(N, q);
        SpectralForm { p, q, grid, comps: vec![vec![C64::new(0.0, 0.0); grid.len()]; count], real: false }
    }

    pub fn component_count(&self) -> usize {
        binomial(N, self.p) * binomial(N, self.q)
    }

    pub fn index_of(&self, holo: &[usize], anti: &[usize]) -> usize {
        subset_index(holo) * binomial(N, self.q) + subset_index(anti)
    }

    /// `(I, J)` of component `c`.
    pub fn multi_index(&self, c: usize) -> (Vec<usize>, Vec<usize>) {
        let nq = binomial(N, self.q);
        (subsets(self.p)[c / nq].clone(), subsets(self.q)[c % nq].clone())
    }

    /// Samples `f(x)` (one value per component) on the grid.
    pub fn from_values(p: usize, q: usize, grid: Grid, mut f: impl FnMut(&[f64; DIM]) -> Vec<C64>) -> Self {
        let mut out = SpectralForm::zero(p, q, grid);
        let count = out.component_count();
        let mut vals = vec![vec![C64::new(0.0, 0.0); grid.len()]; count];
        for i in 0..grid.len() {
            let v = f(&grid.point(i));
            assert_eq!(v.len(), count);
            for c in 0..count {
                vals[c][i] = v[c];
            }
        }
        for c in 0..count {
            out.comps[c] = grid.forward(&vals[c]);
        }
        out
    }

    /// Builds a form from one Fourier field per component. Every mode must
    /// be resolved by the grid.
    pub fn from_fields(p: usize, q: usize, grid: Grid, fields: &[FourierScalarField]) -> Result<Self, HodgeError> {
        let mut out = SpectralForm::zero(p, q, grid);
        if fields.len() != out.component_count() {
            return Err(HodgeError::ComponentCount { expected: out.component_count(), found: fields.len() });
        }
        for (c, f) in fields.iter().enumerate() {
            for (k, v) in &f.modes {
                let s = grid.slot(k).ok_or_else(|| HodgeError::Unresolved { mode: k.clone() })?;
                out.comps[c][s] += *v;
            }
        }
        Ok(out)
    }

    /// One sparse Fourier field per component (modes with `|c| > tol`).
    pub fn to_fields(&self, tol: f64) -> Vec<FourierScalarField> {
        self.comps
            .iter()
            .map(|coeffs| {
                let mut f = FourierScalarField::zero(DIM);
                f.periods = self.grid.periods.to_vec();
                for (flat, c) in coeffs.iter().enumerate() {
                    if c.norm() > tol {
                        let idx = self.grid.index(flat);
                        let k: Vec<i32> = (0..DIM).map(|a| self.grid.frequency(a, idx[a])).collect();
                        f.add_mode(k, *c);
                    }
                }
                f
            })
            .collect()
    }

    /// Grid values of every component.
    pub fn values(&self) -> Vec<Vec<C64>> {
        self.comps.iter().map(|c| self.grid.inverse(c)).collect()
    }

    pub fn eval(&self, x: &[f64]) -> Vec<C64> {
        self.comps.iter().map(|c| self.grid.evaluate(c, x)).collect()
    }

    /// Component `(I, J)` at `x`.
    pub fn component_at(&self, holo: &[usize], anti: &[usize], x: &[f64]) -> C64 {
        self.grid.evaluate(&self.comps[self.index_of(holo, anti)], x)
    }

    fn same_shape(&self, o: &SpectralForm) {
        assert_eq!((self.p, self.q), (o.p, o.q), "bidegree mismatch");
        assert_eq!(self.grid, o.grid, "grid mismatch");
    }

    pub fn add(&self, o: &SpectralForm) -> SpectralForm {
        self.same_shape(o);
        let mut out = self.clone();
        for (a, b) in out.comps.iter_mut().zip(&o.comps) {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        }
        out.real = self.real && o.real;
        out
    }

    pub fn sub(&self, o: &SpectralForm) -> SpectralForm {
        self.add(&o.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: C64) -> SpectralForm {
        let mut out = self.clone();
        out.comps.iter_mut().flatten().for_each(|x| *x *= s);
        out.real = self.real && s.im == 0.0;
        out
    }

    /// `η̄`, of bidegree `(q, p)`.
    pub fn conjugate(&self) -> SpectralForm {
        let mut out = SpectralForm::zero(self.q, self.p, self.grid);
        let sign = if (self.p * self.q) % 2 == 0 { 1.0 } else { -1.0 };
        for c in 0..self.component_count() {
            let (i, j) = self.multi_index(c);
            let t = out.index_of(&j, &i);
            for k in 0..self.grid.len() {
                out.comps[t][k] = self.comps[c][self.grid.negate(k)].conj() * sign;
            }
        }
        out.real = self.real;
        out
    }

    /// `(η + η̄)/2` for `p = q`.
    pub fn real_part(&self) -> SpectralForm {
        assert_eq!(self.p, self.q, "real part needs p = q");
        let mut out = self.add(&self.conjugate()).scale(C64::new(0.5, 0.0));
        out.real = true;
        out
    }

    /// `max |η − η̄|` over coefficients, for `p = q`.
    pub fn reality_defect(&self) -> f64 {
        if self.p != self.q {
            return f64::INFINITY;
        }
        self.sub(&self.conjugate()).max_abs()
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.reality_defect() <= tol
    }

    pub fn max_abs(&self) -> f64 {
        self.comps.iter().flatten().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `L²` norm (torus average), via Parseval.
    pub fn norm(&self) -> f64 {
        self.comps.iter().flatten().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨a, b⟩ = Σ_{IJ} ⨍ a_{IJ} conj(b_{IJ})`, from coefficients.
    pub fn inner(&self, o: &SpectralForm) -> C64 {
        self.same_shape(o);
        self.comps.iter().zip(&o.comps).flat_map(|(a, b)| a.iter().zip(b)).map(|(x, y)| x * y.conj()).sum()
    }

    /// Coefficient vector of the fibre at frequency slot `k`.
    pub fn fibre(&self, k: usize) -> Vec<C64> {
        self.comps.iter().map(|c| c[k]).collect()
    }

    pub fn set_fibre(&mut self, k: usize, v: &[C64]) {
        for (c, x) in self.comps.iter_mut().zip(v) {
            c[k] = *x;
        }
    }

    /// The form at `x` as an antisymmetric real-index tensor in the
    /// chart-geometry layout (holomorphic block first).
    pub fn tensor_at(&self, x: &[f64]) -> VTensor {
        let vals = self.eval(x);
        let k = self.p + self.q;
        VTensor::from_fn(2 * N, k, |idx| {
            let Some((s, sign)) = sort_sign(idx) else { return C64::new(0.0, 0.0) };
            let holo: Vec<usize> = s.iter().copied().filter(|&a| a < N).collect();
            if holo.len() != self.p {
                return C64::new(0.0, 0.0);
            }
            let anti: Vec<usize> = s.iter().filter(|&&a| a >= N).map(|a| a - N).collect();
            vals[self.index_of(&holo, &anti)] * sign
        })
    }

    /// Tensor JSON layout of chart-geometry plus the bidegree.
    pub fn to_json_at(&self, x: &[f64]) -> serde_json::Value {
        let t = self.tensor_at(x);
        let tv = TensorValue::from_real(&t, &vec![Variance::Lower; t.rank], x);
        serde_json::json!({ "bidegree": [self.p, self.q], "tensor": tv.to_json() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn component_counts() {
        let g = Grid::new([2, 1, 1, 1, 1, 1]);
        for p in 0..=3 {
            for q in 0..=3 {
                assert_eq!(SpectralForm::zero(p, q, g).component_count(), binomial(3, p) * binomial(3, q));
            }
        }
        assert_eq!(SpectralForm::zero(4, 1, g).comps.len(), 0);
    }

    #[test]
    fn conjugation_is_an_involution() {
        let g = Grid::new([3, 3, 1, 1, 1, 1]);
        let f = SpectralForm::from_values(2, 1, g, |x| (0..9).map(|c| C64::new(x[0] + c as f64, x[1] * x[0])).collect());
        let back = f.conjugate().conjugate();
        assert!(back.sub(&f).max_abs() < 1e-15);
        let h = SpectralForm::from_values(1, 1, g, |x| (0..9).map(|c| C64::new(x[1] - c as f64, x[0])).collect());
        assert!(!h.is_real(1e-3));
        assert!(h.scale(C64::new(0.0, 1.0)).real_part().is_real(1e-15));
    }

    #[test]
    fn hermitian_form_is_real() {
        // i g dz∧dz̄ with g hermitian
        let g = Grid::new([1; 6]);
        let m = [[2.0, 0.5, 0.0], [0.5, 1.0, 0.1], [0.0, 0.1, 3.0]];
        let mut w = SpectralForm::zero(1, 1, g);
        for a in 0..3 {
            for b in 0..3 {
                let c = w.index_of(&[a], &[b]);
                w.comps[c][0] = C64::new(0.0, m[a][b]);
            }
        }
        assert!(w.is_real(1e-15));
    }
}

//! Truncated Fourier series on periodic charts.

use crate::error::GeometryError;
use crate::jet::{Jet, NVARS};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Highest derivative order `eval_field` accepts.
pub const MAX_DERIVATIVE: usize = 4;

/// A scalar function `Σ_k c_k exp(2πi Σ_j k_j x_j / P_j)` on a chart with
/// real coordinates `x_0 … x_{d-1}`.
///
/// Coordinates pair up as `z^μ = x_{2μ} + i x_{2μ+1}`. Modes are kept in a
/// sorted map so every summation runs in the same order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourierScalarField {
    pub periods: Vec<f64>,
    #[serde(with = "mode_list")]
    pub modes: BTreeMap<Vec<i32>, C64>,
}

mod mode_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Mode {
        k: Vec<i32>,
        c: [f64; 2],
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<Vec<i32>, C64>, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Mode> = m.iter().map(|(k, c)| Mode { k: k.clone(), c: [c.re, c.im] }).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Vec<i32>, C64>, D::Error> {
        let v: Vec<Mode> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|m| (m.k, C64::new(m.c[0], m.c[1]))).collect())
    }
}

impl FourierScalarField {
    pub fn zero(dim: usize) -> Self {
        Self { periods: vec![1.0; dim], modes: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: C64) -> Self {
        let mut f = Self::zero(dim);
        f.modes.insert(vec![0; dim], c);
        f
    }

    pub fn dim(&self) -> usize {
        self.periods.len()
    }

    /// Adds `c` to the amplitude of frequency `k`.
    pub fn add_mode(&mut self, k: Vec<i32>, c: C64) {
        assert_eq!(k.len(), self.dim());
        *self.modes.entry(k).or_insert(C64::new(0.0, 0.0)) += c;
    }

    /// Adds `c e^{ik·x} + conj(c) e^{-ik·x}`, keeping the field real.
    pub fn add_real_mode(&mut self, k: Vec<i32>, c: C64) {
        if k.iter().all(|&v| v == 0) {
            self.add_mode(k, C64::new(2.0 * c.re, 0.0));
            return;
        }
        let neg: Vec<i32> = k.iter().map(|v| -v).collect();
        self.add_mode(k, c);
        self.add_mode(neg, c.conj());
    }

    pub fn max_frequency(&self) -> i32 {
        self.modes.keys().flat_map(|k| k.iter().map(|v| v.abs())).max().unwrap_or(0)
    }

    /// `c(-k) = conj(c(k))` up to `tol`.
    pub fn is_real(&self, tol: f64) -> bool {
        self.modes.iter().all(|(k, c)| {
            let neg: Vec<i32> = k.iter().map(|v| -v).collect();
            let o = self.modes.get(&neg).copied().unwrap_or_default();
            (o.conj() - c).norm() <= tol
        })
    }

    pub fn mean(&self) -> C64 {
        self.modes.get(&vec![0; self.dim()]).copied().unwrap_or_default()
    }

    fn wavenumber(&self, k: &[i32], j: usize) -> f64 {
        2.0 * PI * k[j] as f64 / self.periods[j]
    }

    /// Exact partial derivative `∂^α f / ∂x^α` at `point` (real coordinates).
    pub fn eval(&self, point: &[f64], derivative: &[usize]) -> Result<C64, GeometryError> {
        let order: usize = derivative.iter().sum();
        if order > MAX_DERIVATIVE {
            return Err(GeometryError::UnsupportedOrder { order, max: MAX_DERIVATIVE });
        }
        if derivative.len() > self.dim() || point.len() < self.dim() {
            return Err(GeometryError::Dimension {
                expected: self.dim(),
                found: point.len().min(derivative.len()),
            });
        }
        let mut acc = C64::new(0.0, 0.0);
        for (k, c) in &self.modes {
            let mut phase = 0.0;
            let mut factor = C64::new(1.0, 0.0);
            for j in 0..self.dim() {
                let w = self.wavenumber(k, j);
                phase += w * point[j];
                let a = derivative.get(j).copied().unwrap_or(0);
                if a > 0 {
                    factor *= C64::new(0.0, w).powu(a as u32);
                }
            }
            acc += c * factor * C64::from_polar(1.0, phase);
        }
        Ok(acc)
    }

    pub fn value(&self, point: &[f64]) -> C64 {
        self.eval(point, &[]).expect("value evaluation")
    }

    /// Termwise derivative `∂/∂x_j`.
    pub fn derivative(&self, j: usize) -> Self {
        let mut out = Self { periods: self.periods.clone(), modes: BTreeMap::new() };
        for (k, c) in &self.modes {
            let w = self.wavenumber(k, j);
            if k[j] != 0 {
                out.modes.insert(k.clone(), c * C64::new(0.0, w));
            }
        }
        out
    }

    /// Complex conjugate field.
    pub fn conjugate(&self) -> Self {
        let modes = self.modes.iter().map(|(k, c)| (k.iter().map(|v| -v).collect(), c.conj())).collect();
        Self { periods: self.periods.clone(), modes }
    }

    /// `∂/∂z^μ`, or `∂/∂z̄^μ` when `conjugate`.
    pub fn wirtinger(&self, mu: usize, conjugate: bool) -> Self {
        let (x, y) = (2 * mu, 2 * mu + 1);
        let mut out = Self { periods: self.periods.clone(), modes: BTreeMap::new() };
        for (k, c) in &self.modes {
            let wx = self.wavenumber(k, x);
            let wy = if y < self.dim() { self.wavenumber(k, y) } else { 0.0 };
            // ∂ = ½(∂_x − i∂_y), ∂̄ = ½(∂_x + i∂_y)
            let f = if conjugate { C64::new(-wy, wx) * 0.5 } else { C64::new(wy, wx) * 0.5 };
            if f.norm() > 0.0 {
                out.modes.insert(k.clone(), c * f);
            }
        }
        out
    }

    pub fn scaled(&self, s: C64) -> Self {
        Self { periods: self.periods.clone(), modes: self.modes.iter().map(|(k, c)| (k.clone(), c * s)).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.modes {
            out.add_mode(k.clone(), *c);
        }
        out
    }

    /// Taylor jet in the Wirtinger variables at `point`.
    ///
    /// Real coordinates beyond the field's dimension are ignored; jet
    /// variables beyond the chart's complex dimension carry zero derivative.
    pub fn jet(&self, point: &[f64], order: usize) -> Jet {
        let mut acc = Jet::zero(order);
        for (k, c) in &self.modes {
            let mut phase = 0.0;
            let mut lam = [C64::new(0.0, 0.0); NVARS];
            for j in 0..self.dim() {
                let w = self.wavenumber(k, j);
                phase += w * point[j];
                let mu = j / 2;
                if j % 2 == 0 {
                    // x = (z + z̄)/2
                    lam[mu] += C64::new(0.0, w / 2.0);
                    lam[3 + mu] += C64::new(0.0, w / 2.0);
                } else {
                    // y = (z − z̄)/(2i)
                    lam[mu] += C64::new(w / 2.0, 0.0);
                    lam[3 + mu] += C64::new(-w / 2.0, 0.0);
                }
            }
            let mode = Jet::exp_linear(order, C64::new(0.0, phase), &lam);
            acc.add_scaled(&mode, *c);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sine_derivative_at_origin() {
        let mut f = FourierScalarField::zero(2);
        // sin(2πx) = (e^{i2πx} − e^{−i2πx}) / 2i
        f.add_real_mode(vec![1, 0], C64::new(0.0, -0.5));
        let v = f.eval(&[0.0, 0.0], &[1, 0]).unwrap();
        assert!((v - C64::new(2.0 * PI, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn constant_has_no_derivatives() {
        let f = FourierScalarField::constant(4, C64::new(3.0, 0.0));
        assert_eq!(f.eval(&[0.1, 0.2, 0.3, 0.4], &[0, 2, 1, 0]).unwrap(), C64::new(0.0, 0.0));
    }

    #[test]
    fn order_five_rejected() {
        let f = FourierScalarField::constant(2, C64::new(1.0, 0.0));
        assert!(matches!(
            f.eval(&[0.0, 0.0], &[3, 2]),
            Err(GeometryError::UnsupportedOrder { order: 5, .. })
        ));
    }

    #[test]
    fn jet_matches_wirtinger_derivatives() {
        let mut f = FourierScalarField::zero(2);
        f.add_real_mode(vec![1, 2], C64::new(0.3, 0.1));
        let p = [0.17, 0.41];
        let j = f.jet(&p, 2);
        let fx = f.eval(&p, &[1, 0]).unwrap();
        let fy = f.eval(&p, &[0, 1]).unwrap();
        let dz = (fx - C64::new(0.0, 1.0) * fy) * 0.5;
        assert!((j.partial(&[1, 0, 0, 0, 0, 0]) - dz).norm() < 1e-12);
        let lap = f.eval(&p, &[2, 0]).unwrap() + f.eval(&p, &[0, 2]).unwrap();
        assert!((j.partial(&[1, 0, 0, 1, 0, 0]) - lap * 0.25).norm() < 1e-10);
    }
}

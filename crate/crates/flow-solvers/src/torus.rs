//! Real scalar fields on flat tori of real dimension 2 or 4, stored as
//! Fourier coefficients on a [`Grid`] of the 6-torus.

use crate::error::FlowError;
use chart_geometry::FourierScalarField;
use hodge_spectral::{Grid, SpectralForm};
use num_complex::Complex64 as C64;

#[derive(Clone, Debug)]
pub struct Torus {
    pub grid: Grid,
    pub real_dims: usize,
    /// Multiplier of `Δ_c = ¼ Σ ∂²` at each slot.
    symbol: Vec<f64>,
    nyquist: Vec<bool>,
}

impl Torus {
    pub fn new(real_dims: usize, n: usize) -> Result<Self, FlowError> {
        if real_dims != 2 && real_dims != 4 {
            return Err(FlowError::Scenario(format!("torus dimension must be 2 or 4, got {real_dims}")));
        }
        if n < 2 {
            return Err(FlowError::Scenario(format!("need at least 2 grid points per axis, got {n}")));
        }
        Ok(Self::from_grid(Grid::on_first(real_dims / 2, n), real_dims))
    }

    pub fn from_grid(grid: Grid, real_dims: usize) -> Self {
        let mut symbol = Vec::with_capacity(grid.len());
        let mut nyquist = Vec::with_capacity(grid.len());
        for k in 0..grid.len() {
            let w = grid.wavevector(k);
            symbol.push(-0.25 * w.iter().map(|x| x * x).sum::<f64>());
            let idx = grid.index(k);
            nyquist.push((0..6).any(|a| grid.shape[a] > 1 && grid.shape[a] % 2 == 0 && idx[a] == grid.shape[a] / 2));
        }
        Torus { grid, real_dims, symbol, nyquist }
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn laplacian_symbol(&self, k: usize) -> f64 {
        self.symbol[k]
    }

    /// Real coordinates of grid point `i`.
    pub fn point(&self, i: usize) -> Vec<f64> {
        self.grid.point(i)[..self.real_dims].to_vec()
    }

    pub fn values(&self, coeffs: &[C64]) -> Vec<f64> {
        self.grid.inverse(coeffs).iter().map(|c| c.re).collect()
    }

    /// Coefficients of real grid values, with Nyquist slots cleared.
    pub fn coeffs(&self, values: &[f64]) -> Vec<C64> {
        let v: Vec<C64> = values.iter().map(|&x| C64::new(x, 0.0)).collect();
        let mut c = self.grid.forward(&v);
        self.filter(&mut c);
        c
    }

    pub fn filter(&self, coeffs: &mut [C64]) {
        for (c, &ny) in coeffs.iter_mut().zip(&self.nyquist) {
            if ny {
                *c = C64::new(0.0, 0.0);
            }
        }
    }

    pub fn laplacian(&self, coeffs: &[C64]) -> Vec<C64> {
        coeffs.iter().zip(&self.symbol).map(|(c, s)| c * s).collect()
    }

    pub fn mean(&self, coeffs: &[C64]) -> f64 {
        coeffs[0].re
    }

    pub fn sample(&self, f: &FourierScalarField) -> Vec<f64> {
        (0..self.len()).map(|i| f.value(&self.grid.point(i)).re).collect()
    }

    /// `Σ_j (∂_j f)²` at every grid point.
    pub fn gradient_sq(&self, coeffs: &[C64]) -> Vec<f64> {
        let mut out = vec![0.0; self.len()];
        for a in 0..self.real_dims {
            let d: Vec<C64> =
                (0..self.len()).map(|k| coeffs[k] * C64::new(0.0, self.grid.wavevector(k)[a])).collect();
            for (o, v) in out.iter_mut().zip(self.values(&d)) {
                *o += v * v;
            }
        }
        out
    }

    /// The coefficients as a sparse field, keeping modes above
    /// `rel_tol · max |c|`.
    pub fn to_field(&self, coeffs: &[C64], rel_tol: f64) -> FourierScalarField {
        let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut f = FourierScalarField::zero(self.real_dims);
        for (k, c) in coeffs.iter().enumerate() {
            if c.norm() > rel_tol * scale && !self.nyquist[k] {
                let idx = self.grid.index(k);
                let mode: Vec<i32> = (0..self.real_dims).map(|a| self.grid.frequency(a, idx[a])).collect();
                f.add_mode(mode, *c);
            }
        }
        f
    }

    /// Coefficients of a field whose modes the grid resolves.
    pub fn from_field(&self, f: &FourierScalarField) -> Result<Vec<C64>, FlowError> {
        if f.dim() > self.real_dims {
            return Err(FlowError::Scenario(format!("field of dimension {} on a {}-torus", f.dim(), self.real_dims)));
        }
        let mut c = vec![C64::new(0.0, 0.0); self.len()];
        for (k, v) in &f.modes {
            let s = self
                .grid
                .slot(k)
                .ok_or_else(|| FlowError::Scenario(format!("mode {k:?} is not resolved by the grid")))?;
            c[s] += v;
        }
        Ok(c)
    }

    /// The function as a `(0,0)`-form.
    pub fn form(&self, coeffs: &[C64]) -> SpectralForm {
        let mut f = SpectralForm::zero(0, 0, self.grid);
        f.comps[0] = coeffs.to_vec();
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laplacian_of_a_mode() {
        let t = Torus::new(4, 8).unwrap();
        let mut f = FourierScalarField::zero(4);
        f.add_real_mode(vec![1, 0, 2, 0], C64::new(0.3, 0.1));
        let c = t.from_field(&f).unwrap();
        let lap = t.values(&t.laplacian(&c));
        let w2 = (2.0 * std::f64::consts::PI).powi(2) * 5.0;
        for (i, v) in t.sample(&f).iter().enumerate() {
            assert!((lap[i] + 0.25 * w2 * v).abs() < 1e-12);
        }
        let back = t.to_field(&c, 0.0);
        assert_eq!(back.modes.len(), 2);
    }
}

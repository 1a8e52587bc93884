//! Tensor-product FFT grids on the flat 6-torus.

use num_complex::Complex64 as C64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub const DIM: usize = 6;

/// Sample grid with `shape[a]` points along real axis `a` (axis 0 fastest).
/// Axes with a single point carry no dependence on that coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub shape: [usize; DIM],
    pub periods: [f64; DIM],
}

impl Grid {
    pub fn new(shape: [usize; DIM]) -> Self {
        assert!(shape.iter().all(|&s| s > 0));
        Grid { shape, periods: [1.0; DIM] }
    }

    /// `n` points along the first `2 * complex_dims` axes, one point elsewhere.
    pub fn on_first(complex_dims: usize, n: usize) -> Self {
        let mut shape = [1; DIM];
        for s in shape.iter_mut().take(2 * complex_dims) {
            *s = n;
        }
        Grid::new(shape)
    }

    pub fn len(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, flat: usize) -> [usize; DIM] {
        let mut idx = [0; DIM];
        let mut r = flat;
        for a in 0..DIM {
            idx[a] = r % self.shape[a];
            r /= self.shape[a];
        }
        idx
    }

    pub fn flat(&self, idx: &[usize; DIM]) -> usize {
        let mut f = 0;
        for a in (0..DIM).rev() {
            f = f * self.shape[a] + idx[a];
        }
        f
    }

    pub fn point(&self, flat: usize) -> [f64; DIM] {
        let idx = self.index(flat);
        let mut x = [0.0; DIM];
        for a in 0..DIM {
            x[a] = idx[a] as f64 * self.periods[a] / self.shape[a] as f64;
        }
        x
    }

    fn is_nyquist(&self, a: usize, j: usize) -> bool {
        self.shape[a] % 2 == 0 && j == self.shape[a] / 2
    }

    /// Signed frequency of FFT slot `j` along axis `a`.
    pub fn frequency(&self, a: usize, j: usize) -> i32 {
        let n = self.shape[a];
        if 2 * j < n {
            j as i32
        } else {
            j as i32 - n as i32
        }
    }

    /// Angular wavenumber used by derivatives; the Nyquist slot is given 0.
    pub fn wavenumber(&self, a: usize, j: usize) -> f64 {
        if self.is_nyquist(a, j) {
            0.0
        } else {
            2.0 * PI * self.frequency(a, j) as f64 / self.periods[a]
        }
    }

    /// Wavenumbers of every axis at a flat frequency index.
    pub fn wavevector(&self, flat: usize) -> [f64; DIM] {
        let idx = self.index(flat);
        let mut w = [0.0; DIM];
        for a in 0..DIM {
            w[a] = self.wavenumber(a, idx[a]);
        }
        w
    }

    /// FFT slot holding frequency `k`, if it is resolved (Nyquist excluded).
    pub fn slot(&self, k: &[i32]) -> Option<usize> {
        let mut idx = [0; DIM];
        for a in 0..DIM {
            let n = self.shape[a] as i32;
            let kk = k.get(a).copied().unwrap_or(0);
            if 2 * kk.abs() >= n && kk != 0 {
                return None;
            }
            idx[a] = kk.rem_euclid(n) as usize;
        }
        Some(self.flat(&idx))
    }

    /// Twice as many points on every resolved axis.
    pub fn padded(&self) -> Grid {
        let mut g = *self;
        for s in g.shape.iter_mut() {
            if *s > 1 {
                *s *= 2;
            }
        }
        g
    }

    /// Coefficients re-indexed on `target`, dropping or zero-filling
    /// frequencies the other grid lacks. Nyquist slots are not carried over.
    pub fn transfer(&self, coeffs: &[C64], target: &Grid) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); target.len()];
        let mut k = [0i32; DIM];
        for (flat, c) in coeffs.iter().enumerate() {
            if c.re == 0.0 && c.im == 0.0 {
                continue;
            }
            let idx = self.index(flat);
            if (0..DIM).any(|a| self.is_nyquist(a, idx[a])) {
                continue;
            }
            for a in 0..DIM {
                k[a] = self.frequency(a, idx[a]);
            }
            if let Some(s) = target.slot(&k) {
                out[s] = *c;
            }
        }
        out
    }

    fn fft(&self, data: &mut [C64], inverse: bool) {
        assert_eq!(data.len(), self.len());
        let mut planner = FftPlanner::new();
        let mut stride = 1;
        for a in 0..DIM {
            let n = self.shape[a];
            if n > 1 {
                let plan = if inverse { planner.plan_fft_inverse(n) } else { planner.plan_fft_forward(n) };
                let mut line = vec![C64::new(0.0, 0.0); n];
                let block = stride * n;
                for base in (0..data.len()).step_by(block) {
                    for off in 0..stride {
                        for (j, v) in line.iter_mut().enumerate() {
                            *v = data[base + off + j * stride];
                        }
                        plan.process(&mut line);
                        for (j, v) in line.iter().enumerate() {
                            data[base + off + j * stride] = *v;
                        }
                    }
                }
            }
            stride *= n;
        }
    }

    /// Grid values to Fourier coefficients.
    pub fn forward(&self, values: &[C64]) -> Vec<C64> {
        let mut d = values.to_vec();
        self.fft(&mut d, false);
        let s = 1.0 / self.len() as f64;
        d.iter_mut().for_each(|v| *v *= s);
        d
    }

    /// Fourier coefficients to grid values.
    pub fn inverse(&self, coeffs: &[C64]) -> Vec<C64> {
        let mut d = coeffs.to_vec();
        self.fft(&mut d, true);
        d
    }

    /// Evaluates a coefficient array at an arbitrary point. The Nyquist slot
    /// is read as a cosine so real fields stay real.
    pub fn evaluate(&self, coeffs: &[C64], x: &[f64]) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (flat, c) in coeffs.iter().enumerate() {
            if c.re == 0.0 && c.im == 0.0 {
                continue;
            }
            let idx = self.index(flat);
            let mut v = *c;
            for a in 0..DIM {
                let k = 2.0 * PI * self.frequency(a, idx[a]) as f64 / self.periods[a];
                let xa = x.get(a).copied().unwrap_or(0.0);
                if self.is_nyquist(a, idx[a]) {
                    v *= (k * xa).cos();
                } else {
                    v *= C64::from_polar(1.0, k * xa);
                }
            }
            acc += v;
        }
        acc
    }

    /// Flat index of the frequency `-k`.
    pub fn negate(&self, flat: usize) -> usize {
        let idx = self.index(flat);
        let mut out = [0; DIM];
        for a in 0..DIM {
            out[a] = (self.shape[a] - idx[a]) % self.shape[a];
        }
        self.flat(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forward_inverse_roundtrip() {
        let g = Grid::new([4, 3, 2, 1, 1, 1]);
        let v: Vec<C64> = (0..g.len()).map(|i| C64::new(i as f64, (i * i) as f64 * 0.1)).collect();
        let back = g.inverse(&g.forward(&v));
        for (a, b) in v.iter().zip(&back) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn single_mode_lands_in_its_slot() {
        let g = Grid::new([8, 8, 1, 1, 1, 1]);
        let v: Vec<C64> = (0..g.len())
            .map(|i| {
                let x = g.point(i);
                C64::from_polar(1.0, 2.0 * PI * (2.0 * x[0] - 3.0 * x[1]))
            })
            .collect();
        let c = g.forward(&v);
        let s = g.slot(&[2, -3]).unwrap();
        assert!((c[s] - 1.0).norm() < 1e-12);
        assert!((g.evaluate(&c, &[0.13, 0.71]) - C64::from_polar(1.0, 2.0 * PI * (0.26 - 2.13))).norm() < 1e-12);
    }

    #[test]
    fn padding_keeps_modes() {
        let g = Grid::new([6, 1, 1, 1, 1, 1]);
        let mut c = vec![C64::new(0.0, 0.0); 6];
        c[g.slot(&[-2]).unwrap()] = C64::new(1.0, 2.0);
        let p = g.padded();
        let back = p.transfer(&g.transfer(&c, &p), &g);
        assert_eq!(back, c);
    }
}

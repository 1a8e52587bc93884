//! The Kodaira–Spencer operator on `(2,2)`-forms, block-diagonal in frequency.

use crate::dops::{d_matrix, Part};
use crate::error::HodgeError;
use crate::form::SpectralForm;
use crate::grid::{Grid, DIM};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use rayon::prelude::*;

/// Relative size of a kernel component that makes a right-hand side ill-posed.
pub const KERNEL_TOL: f64 = 1e-6;
/// Eigenvalues below this fraction of `max(1, λ_max)` count as kernel.
const EIG_TOL: f64 = 1e-10;

fn adj(m: &DMatrix<C64>) -> DMatrix<C64> {
    m.adjoint()
}

/// The 9×9 block of `E` at wavevector `w`:
/// `E = ∂∂̄(∂∂̄)† + (∂∂̄)†∂∂̄ + (∂†∂̄)†∂†∂̄ + ∂†∂̄(∂†∂̄)† + ∂̄†∂̄ + ∂†∂`.
pub fn block(w: &[f64; DIM]) -> DMatrix<C64> {
    let d = |p, q, part| d_matrix(p, q, part, w);
    // ∂∂̄ : (1,1) → (2,2) and (2,2) → (3,3)
    let m11 = d(1, 2, Part::Holo) * d(1, 1, Part::Anti);
    let m22 = d(2, 3, Part::Holo) * d(2, 2, Part::Anti);
    // ∂†∂̄ : (2,2) → (1,3) and (3,1) → (2,2)
    let n22 = adj(&d(1, 3, Part::Holo)) * d(2, 2, Part::Anti);
    let n31 = adj(&d(2, 2, Part::Holo)) * d(3, 1, Part::Anti);
    let db = d(2, 2, Part::Anti);
    let dh = d(2, 2, Part::Holo);
    &m11 * adj(&m11) + adj(&m22) * &m22 + adj(&n22) * &n22 + &n31 * adj(&n31) + adj(&db) * &db + adj(&dh) * &dh
}

/// `E` on a grid, with blocks assembled on demand.
#[derive(Clone, Debug)]
pub struct OperatorE {
    pub grid: Grid,
}

/// Output of [`OperatorE::solve`].
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub gamma: SpectralForm,
    /// `L²` norm of the part of the right-hand side removed as kernel.
    pub kernel_norm: f64,
    pub rhs_norm: f64,
}

impl OperatorE {
    pub fn new(grid: Grid) -> Self {
        OperatorE { grid }
    }

    pub fn block(&self, k: usize) -> DMatrix<C64> {
        block(&self.grid.wavevector(k))
    }

    fn check(&self, f: &SpectralForm) -> Result<(), HodgeError> {
        if (f.p, f.q) != (2, 2) {
            return Err(HodgeError::Bidegree { ep: 2, eq: 2, p: f.p, q: f.q });
        }
        assert_eq!(f.grid, self.grid, "grid mismatch");
        Ok(())
    }

    pub fn apply(&self, f: &SpectralForm) -> Result<SpectralForm, HodgeError> {
        self.check(f)?;
        let fibres: Vec<Vec<C64>> = (0..self.grid.len())
            .into_par_iter()
            .map(|k| {
                let v = DVector::from_vec(f.fibre(k));
                if v.iter().all(|c| c.re == 0.0 && c.im == 0.0) {
                    return vec![C64::new(0.0, 0.0); 9];
                }
                (self.block(k) * v).iter().copied().collect()
            })
            .collect();
        let mut out = SpectralForm::zero(2, 2, self.grid);
        for (k, v) in fibres.iter().enumerate() {
            out.set_fibre(k, v);
        }
        Ok(out)
    }

    /// Kernel basis of the block at slot `k` (columns).
    pub fn kernel(&self, k: usize) -> DMatrix<C64> {
        let e = self.block(k).symmetric_eigen();
        let scale = e.eigenvalues.iter().cloned().fold(1.0, f64::max);
        let cols: Vec<DVector<C64>> = (0..9)
            .filter(|&i| e.eigenvalues[i] <= EIG_TOL * scale)
            .map(|i| e.eigenvectors.column(i).into_owned())
            .collect();
        if cols.is_empty() {
            DMatrix::zeros(9, 0)
        } else {
            DMatrix::from_columns(&cols)
        }
    }

    /// The solution of `Eγ = rhs` orthogonal to `ker E`. The kernel part of
    /// `rhs` is projected away; if it is not negligible the data is rejected.
    pub fn solve(&self, rhs: &SpectralForm) -> Result<SolveReport, HodgeError> {
        self.check(rhs)?;
        let parts: Vec<(Vec<C64>, f64)> = (0..self.grid.len())
            .into_par_iter()
            .map(|k| {
                let v = DVector::from_vec(rhs.fibre(k));
                if v.iter().all(|c| c.re == 0.0 && c.im == 0.0) {
                    return (vec![C64::new(0.0, 0.0); 9], 0.0);
                }
                let e = self.block(k).symmetric_eigen();
                let scale = e.eigenvalues.iter().cloned().fold(1.0, f64::max);
                let mut x = DVector::<C64>::zeros(9);
                let mut ker = 0.0;
                for i in 0..9 {
                    let u = e.eigenvectors.column(i);
                    let c = u.dotc(&v);
                    if e.eigenvalues[i] <= EIG_TOL * scale {
                        ker += c.norm_sqr();
                    } else {
                        x += u * (c / e.eigenvalues[i]);
                    }
                }
                (x.iter().copied().collect(), ker)
            })
            .collect();
        let mut gamma = SpectralForm::zero(2, 2, self.grid);
        let mut ker = 0.0;
        for (k, (v, kn)) in parts.iter().enumerate() {
            gamma.set_fibre(k, v);
            ker += kn;
        }
        let rhs_norm = rhs.norm();
        let kernel_norm = ker.sqrt();
        if rhs_norm > 0.0 && kernel_norm > KERNEL_TOL * rhs_norm {
            return Err(HodgeError::IllPosedRhs { relative: kernel_norm / rhs_norm, tol: KERNEL_TOL });
        }
        Ok(SolveReport { gamma, kernel_norm, rhs_norm })
    }
}

/// `E` applied to a `(2,2)`-form.
pub fn kodaira_spencer_apply(e: &OperatorE, f: &SpectralForm) -> Result<SpectralForm, HodgeError> {
    e.apply(f)
}

/// `γ ⟂ ker E` with `Eγ = rhs`.
pub fn solve_e(e: &OperatorE, rhs: &SpectralForm) -> Result<SolveReport, HodgeError> {
    e.solve(rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_frequency_block_vanishes() {
        let b = block(&[0.0; DIM]);
        assert!(b.iter().all(|c| c.norm() == 0.0));
    }

    #[test]
    fn nonzero_frequency_blocks_are_definite() {
        let g = Grid::new([4, 4, 4, 1, 1, 1]);
        let e = OperatorE::new(g);
        for k in 1..g.len() {
            if g.wavevector(k).iter().all(|&w| w == 0.0) {
                continue;
            }
            let b = e.block(k);
            assert!((&b - b.adjoint()).iter().map(|c| c.norm()).fold(0.0, f64::max) < 1e-9);
            let ev = b.symmetric_eigenvalues();
            assert!(ev.min() > 1.0, "k = {k}: {}", ev.min());
        }
    }
}

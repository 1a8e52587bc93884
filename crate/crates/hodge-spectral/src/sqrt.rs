//! Pointwise square root of positive `(2,2)`-forms on a 3-fold.
//!
//! For `ω = i g` the `(2,2)`-form `ω²` has component `2 · minor_{IJ}(g)` on
//! `dz^I ∧ dz̄^J`. Writing `I = {i}ᶜ`, `J = {j}ᶜ`, the signed complement
//! matrix `Q_{ji} = (−1)^{i+j} Ψ_{IJ}/2` of `Ψ = |Ω|_ω ω²` equals
//! `|f| √det g · g⁻¹`, which inverts to `g = det Q · Q⁻¹ / |f|²`.

use crate::error::HodgeError;
use crate::wedge::wedge_pointwise;
use nalgebra::{DMatrix, DVector, Matrix3};
use num_complex::Complex64 as C64;

pub type M3 = Matrix3<C64>;

/// Index of the 2-subset `{i}ᶜ` in the sorted basis `{01, 02, 12}`.
fn complement(i: usize) -> usize {
    2 - i
}

fn sign(i: usize, j: usize) -> f64 {
    if (i + j) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Components of `ω = i g` in the `(1,1)` basis.
pub fn omega_components(g: &M3) -> [C64; 9] {
    std::array::from_fn(|k| g[(k / 3, k % 3)] * C64::new(0.0, 1.0))
}

/// `|Ω|_ω = |f| / √det g`.
pub fn norm_omega(g: &M3, f: C64) -> f64 {
    f.norm() / g.determinant().re.sqrt()
}

/// `|Ω|_ω ω²` in the `(2,2)` basis.
pub fn psi_of(g: &M3, f: C64) -> [C64; 9] {
    let w = omega_components(g);
    let w2 = wedge_pointwise((1, 1, &w), (1, 1, &w));
    let s = norm_omega(g, f);
    std::array::from_fn(|k| w2[k] * s)
}

/// The hermitian `g` with `|Ω|_ω ω² = Ψ`, where `Ω = f dz¹∧dz²∧dz³`.
pub fn sqrt_metric_from_psi(psi: &[C64], f: C64) -> Result<M3, HodgeError> {
    if psi.len() != 9 {
        return Err(HodgeError::ComponentCount { expected: 9, found: psi.len() });
    }
    if f.norm() == 0.0 {
        return Err(HodgeError::PsiNotPositive { reason: "Ω vanishes".into() });
    }
    let q = M3::from_fn(|j, i| psi[complement(i) * 3 + complement(j)] * (0.5 * sign(i, j)));
    let scale = q.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let herm = (q - q.adjoint()).iter().map(|c| c.norm()).fold(0.0, f64::max);
    if !(scale > 0.0) || herm > 1e-10 * scale {
        return Err(HodgeError::PsiNotPositive { reason: format!("not hermitian (defect {:e})", herm / scale.max(1e-300)) });
    }
    let qh = (q + q.adjoint()) * C64::new(0.5, 0.0);
    let min = qh.symmetric_eigenvalues().min();
    if !(min > 0.0) {
        return Err(HodgeError::PsiNotPositive { reason: format!("min eigenvalue {min:e}") });
    }
    let det = qh.determinant().re;
    let inv = qh.try_inverse().ok_or_else(|| HodgeError::PsiNotPositive { reason: "singular".into() })?;
    let g = inv * C64::new(det / f.norm_sqr(), 0.0);
    Ok((g + g.adjoint()) * C64::new(0.5, 0.0))
}

/// `Λ_ω` on `(2,2)`-forms (`Λ_ω ω = 3`): solves `ω∧β = Ψ` for the
/// `(1,1)`-form `β` and uses `Λ(ω∧β) = β + (Λβ) ω`.
pub fn lambda_22(g: &M3, psi: &[C64]) -> [C64; 9] {
    let w = omega_components(g);
    let mut m = DMatrix::<C64>::zeros(9, 9);
    for c in 0..9 {
        let mut e = [C64::new(0.0, 0.0); 9];
        e[c] = C64::new(1.0, 0.0);
        let col = wedge_pointwise((1, 1, &w), (1, 1, &e));
        for r in 0..9 {
            m[(r, c)] = col[r];
        }
    }
    let beta = m.lu().solve(&DVector::from_column_slice(psi)).expect("Lefschetz map is invertible");
    let gi = g.try_inverse().expect("positive metric");
    // Λβ = −i g^{μν̄} β_{μν̄}
    let mut lb = C64::new(0.0, 0.0);
    for mu in 0..3 {
        for nu in 0..3 {
            lb += gi[(nu, mu)] * beta[mu * 3 + nu];
        }
    }
    lb *= C64::new(0.0, -1.0);
    std::array::from_fn(|k| beta[k] + w[k] * lb)
}

/// `δω = (1/2|Ω|_ω) Λ_ω δΨ`, returned as `δg` (so `δω = i δg`).
pub fn metric_variation(g: &M3, f: C64, dpsi: &[C64]) -> M3 {
    let l = lambda_22(g, dpsi);
    let s = 1.0 / (2.0 * norm_omega(g, f));
    M3::from_fn(|a, b| l[a * 3 + b] * C64::new(0.0, -s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_roundtrip() {
        let g = M3::identity();
        let back = sqrt_metric_from_psi(&psi_of(&g, C64::new(1.0, 0.0)), C64::new(1.0, 0.0)).unwrap();
        assert!((back - g).iter().all(|c| c.norm() < 1e-15));
    }

    #[test]
    fn lambda_of_omega_squared() {
        let g = M3::new(
            C64::new(2.0, 0.0), C64::new(0.1, 0.2), C64::new(0.0, 0.0),
            C64::new(0.1, -0.2), C64::new(1.0, 0.0), C64::new(0.3, 0.0),
            C64::new(0.0, 0.0), C64::new(0.3, 0.0), C64::new(1.5, 0.0),
        );
        let w = omega_components(&g);
        let w2 = wedge_pointwise((1, 1, &w), (1, 1, &w));
        let l = lambda_22(&g, &w2);
        for k in 0..9 {
            assert!((l[k] - w[k] * 4.0).norm() < 1e-12);
        }
    }

    #[test]
    fn negative_psi_rejected() {
        let mut psi = psi_of(&M3::identity(), C64::new(1.0, 0.0));
        psi.iter_mut().for_each(|c| *c = -*c);
        assert!(sqrt_metric_from_psi(&psi, C64::new(1.0, 0.0)).is_err());
    }
}

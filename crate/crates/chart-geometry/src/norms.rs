//! Pointwise norms taken in an orthonormal real frame.
//!
//! Tensors are stored in the complexified basis `{∂_μ, ∂_μ̄}`. They are
//! re-expressed on `(x_μ, y_μ)` with `∂_x = ∂ + ∂̄`, `∂_y = i(∂ − ∂̄)`, then in
//! a frame orthonormal for the Riemannian metric.

use crate::identities::PointGeometry;
use crate::local::ConnectionKind;
use crate::tensor::{RTensor, VTensor, Variance};
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

/// Frame vectors `Q[A][c]` and dual coframe `W[A][c]` in the complex basis.
pub struct OrthonormalFrame {
    pub q: DMatrix<C64>,
    pub w: DMatrix<C64>,
}

impl OrthonormalFrame {
    pub fn new(gmat: &VTensor, n: usize) -> Option<Self> {
        let d = 2 * n;
        let mut p = DMatrix::<C64>::zeros(d, d);
        for mu in 0..n {
            p[(2 * mu, mu)] = C64::new(1.0, 0.0);
            p[(2 * mu, n + mu)] = C64::new(1.0, 0.0);
            p[(2 * mu + 1, mu)] = C64::new(0.0, 1.0);
            p[(2 * mu + 1, n + mu)] = C64::new(0.0, -1.0);
        }
        let g = DMatrix::from_fn(d, d, |i, j| *gmat.at(&[i, j]));
        let greal = (&p * g * p.transpose()).map(|v| v.re);
        let greal = (&greal + greal.transpose()) * 0.5;
        let c = greal.cholesky()?;
        let l = c.l().try_inverse()?.map(|v| C64::new(v, 0.0));
        let q = l * p;
        let w = q.transpose().try_inverse()?;
        Some(OrthonormalFrame { q, w })
    }

    /// Components of `t` in the orthonormal frame.
    pub fn components(&self, t: &VTensor, variances: &[Variance]) -> VTensor {
        let mut cur = t.clone();
        for (s, v) in variances.iter().enumerate() {
            let m = match v {
                Variance::Lower => &self.q,
                Variance::Upper => &self.w,
            };
            cur = RTensor::from_fn(t.d, t.rank, |idx| {
                let mut src = idx.to_vec();
                let mut acc = C64::new(0.0, 0.0);
                for c in 0..t.d {
                    src[s] = c;
                    acc += m[(idx[s], c)] * cur.at(&src);
                }
                acc
            });
        }
        cur
    }
}

/// Frobenius norm of all orthonormal components.
pub fn tensor_norm(pg: &PointGeometry, t: &VTensor, variances: &[Variance]) -> f64 {
    match OrthonormalFrame::new(pg.gmat(), pg.n()) {
        Some(f) => f.components(t, variances).data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt(),
        None => f64::NAN,
    }
}

/// `|H|` over all index tuples.
pub fn torsion_norm(pg: &PointGeometry) -> f64 {
    tensor_norm(pg, &pg.torsion(), &[Variance::Lower; 3])
}

/// `|∇H|` for the Levi-Civita connection.
pub fn torsion_derivative_norm(pg: &PointGeometry) -> f64 {
    let gam = pg.connection(ConnectionKind::LeviCivita);
    let dh = pg.lg.cov_deriv(pg.torsion_j(), &[Variance::Lower; 3], gam).values();
    tensor_norm(pg, &dh, &[Variance::Lower; 4])
}

/// Operator norm of the curvature viewed as a map from unit 2-vectors
/// `e_A ∧ e_B` to endomorphisms with the Frobenius norm.
pub fn curvature_operator_norm(pg: &PointGeometry, kind: ConnectionKind) -> f64 {
    let Some(frame) = OrthonormalFrame::new(pg.gmat(), pg.n()) else {
        return f64::NAN;
    };
    let use_ = [Variance::Lower, Variance::Lower, Variance::Upper, Variance::Lower];
    let r = frame.components(pg.curvature(kind), &use_);
    let d = r.d;
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|a| ((a + 1)..d).map(move |b| (a, b))).collect();
    let m = DMatrix::from_fn(d * d, pairs.len(), |row, col| {
        let (a, b) = pairs[col];
        *r.at(&[a, b, row / d, row % d])
    });
    m.singular_values().iter().cloned().fold(0.0, f64::max)
}

/// Largest entry of the orthonormal components, for diagnostics.
pub fn max_component(pg: &PointGeometry, t: &VTensor, variances: &[Variance]) -> f64 {
    match OrthonormalFrame::new(pg.gmat(), pg.n()) {
        Some(f) => f.components(t, variances).max_norm(),
        None => f64::NAN,
    }
}

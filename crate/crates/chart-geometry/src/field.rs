//! Scalar fields on a chart as small expression trees over Fourier series
//! and coordinate monomials.
//!
//! Fourier series alone cannot describe the twisted coframes of the
//! nilmanifold charts (`θ = dz − x̄ dy` has a coefficient linear in `x̄`), nor
//! `e^u`. Every node evaluates to a [`Jet`], so derivatives stay exact.

use crate::fourier::FourierScalarField;
use crate::jet::Jet;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalarField {
    Const([f64; 2]),
    Fourier(FourierScalarField),
    /// The holomorphic coordinate `z^index`, or `z̄^index` when `conjugate`.
    Coord { index: usize, conjugate: bool },
    Sum(Vec<ScalarField>),
    Product(Vec<ScalarField>),
    Exp(Box<ScalarField>),
    Recip(Box<ScalarField>),
    Conj(Box<ScalarField>),
}

impl ScalarField {
    pub fn constant(c: C64) -> Self {
        ScalarField::Const([c.re, c.im])
    }

    pub fn real(v: f64) -> Self {
        ScalarField::Const([v, 0.0])
    }

    pub fn zero() -> Self {
        Self::real(0.0)
    }

    pub fn z(index: usize) -> Self {
        ScalarField::Coord { index, conjugate: false }
    }

    pub fn zbar(index: usize) -> Self {
        ScalarField::Coord { index, conjugate: true }
    }

    pub fn exp(self) -> Self {
        ScalarField::Exp(Box::new(self))
    }

    pub fn recip(self) -> Self {
        ScalarField::Recip(Box::new(self))
    }

    pub fn conj(self) -> Self {
        match self {
            ScalarField::Const(c) => ScalarField::Const([c[0], -c[1]]),
            ScalarField::Coord { index, conjugate } => ScalarField::Coord { index, conjugate: !conjugate },
            other => ScalarField::Conj(Box::new(other)),
        }
    }

    pub fn scaled(self, c: C64) -> Self {
        ScalarField::Product(vec![Self::constant(c), self])
    }

    pub fn plus(self, o: ScalarField) -> Self {
        match self {
            ScalarField::Sum(mut v) => {
                v.push(o);
                ScalarField::Sum(v)
            }
            s => ScalarField::Sum(vec![s, o]),
        }
    }

    pub fn times(self, o: ScalarField) -> Self {
        match self {
            ScalarField::Product(mut v) => {
                v.push(o);
                ScalarField::Product(v)
            }
            s => ScalarField::Product(vec![s, o]),
        }
    }

    pub fn is_zero_constant(&self) -> bool {
        matches!(self, ScalarField::Const(c) if c[0] == 0.0 && c[1] == 0.0)
    }

    /// Taylor jet at the real-coordinate `point`.
    pub fn jet(&self, point: &[f64], order: usize) -> Jet {
        match self {
            ScalarField::Const(c) => Jet::constant(order, C64::new(c[0], c[1])),
            ScalarField::Fourier(f) => f.jet(point, order),
            ScalarField::Coord { index, conjugate } => {
                let z = C64::new(point[2 * index], point[2 * index + 1]);
                if *conjugate {
                    Jet::variable(order, 3 + index, z.conj())
                } else {
                    Jet::variable(order, *index, z)
                }
            }
            ScalarField::Sum(v) => {
                let mut acc = Jet::zero(order);
                for t in v {
                    acc.add_assign_ref(&t.jet(point, order));
                }
                acc
            }
            ScalarField::Product(v) => {
                let mut acc = Jet::constant(order, C64::new(1.0, 0.0));
                for t in v {
                    acc = &acc * &t.jet(point, order);
                }
                acc
            }
            ScalarField::Exp(a) => a.jet(point, order).exp(),
            ScalarField::Recip(a) => a.jet(point, order).recip(),
            ScalarField::Conj(a) => a.jet(point, order).conj(),
        }
    }

    pub fn value(&self, point: &[f64]) -> C64 {
        self.jet(point, 0).value()
    }
}

impl From<FourierScalarField> for ScalarField {
    fn from(f: FourierScalarField) -> Self {
        ScalarField::Fourier(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_squared_of_coordinate() {
        // |z|² has ∂∂̄ = 1.
        let f = ScalarField::z(0).times(ScalarField::zbar(0));
        let j = f.jet(&[0.3, -0.2, 0.0, 0.0, 0.0, 0.0], 2);
        assert!((j.value().re - 0.13).abs() < 1e-15);
        assert_eq!(j.partial(&[1, 0, 0, 1, 0, 0]), C64::new(1.0, 0.0));
    }

    #[test]
    fn conj_of_product_is_conjugate() {
        let f = ScalarField::z(1).times(ScalarField::constant(C64::new(0.0, 2.0)));
        let p = [0.0, 0.0, 0.5, 0.25, 0.0, 0.0];
        let a = f.clone().conj().value(&p);
        assert!((a - f.value(&p).conj()).norm() < 1e-15);
    }
}

//! Tensors in the complexified real basis `{∂_1 … ∂_n, ∂_1̄ … ∂_n̄}`.
//!
//! Internally every tensor carries real indices of extent `2n`: positions
//! `0..n` are holomorphic and `n..2n` antiholomorphic. [`TensorValue`] is the
//! public, typed view used for dumps and block extraction.

use crate::jet::Jet;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

/// Dense tensor whose indices all have extent `d`.
#[derive(Clone, Debug)]
pub struct RTensor<T> {
    pub d: usize,
    pub rank: usize,
    pub data: Vec<T>,
}

impl<T: Clone> RTensor<T> {
    pub fn filled(d: usize, rank: usize, v: T) -> Self {
        RTensor { d, rank, data: vec![v; d.pow(rank as u32)] }
    }

    pub fn from_fn(d: usize, rank: usize, mut f: impl FnMut(&[usize]) -> T) -> Self {
        let len = d.pow(rank as u32);
        let mut data = Vec::with_capacity(len);
        let mut idx = vec![0usize; rank];
        for flat in 0..len {
            unflatten(flat, d, &mut idx);
            data.push(f(&idx));
        }
        RTensor { d, rank, data }
    }

    #[inline]
    pub fn flat(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank);
        idx.iter().fold(0, |acc, &i| acc * self.d + i)
    }

    #[inline]
    pub fn at(&self, idx: &[usize]) -> &T {
        &self.data[self.flat(idx)]
    }

    #[inline]
    pub fn set(&mut self, idx: &[usize], v: T) {
        let f = self.flat(idx);
        self.data[f] = v;
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> RTensor<U> {
        RTensor { d: self.d, rank: self.rank, data: self.data.iter().map(f).collect() }
    }
}

pub fn unflatten(mut flat: usize, d: usize, idx: &mut [usize]) {
    for slot in idx.iter_mut().rev() {
        *slot = flat % d;
        flat /= d;
    }
}

/// Jet-valued tensor.
pub type JTensor = RTensor<Jet>;
/// Value tensor.
pub type VTensor = RTensor<C64>;

impl JTensor {
    pub fn zeros(d: usize, rank: usize, order: usize) -> Self {
        RTensor::filled(d, rank, Jet::zero(order))
    }

    pub fn values(&self) -> VTensor {
        self.map(|j| j.value())
    }

    pub fn order(&self) -> usize {
        self.data.iter().map(|j| j.order()).min().unwrap_or(0)
    }
}

impl VTensor {
    pub fn zeros_v(d: usize, rank: usize) -> Self {
        RTensor::filled(d, rank, C64::new(0.0, 0.0))
    }

    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn sub(&self, o: &VTensor) -> VTensor {
        RTensor {
            d: self.d,
            rank: self.rank,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Max-norm of `a − b` over all components.
pub fn residual(a: &VTensor, b: &VTensor) -> f64 {
    assert_eq!(a.data.len(), b.data.len());
    a.data.iter().zip(&b.data).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variance {
    Upper,
    Lower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexKind {
    Holomorphic,
    Antiholomorphic,
    /// Both blocks, holomorphic first (extent `2n`).
    Real,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexMarker {
    pub variance: Variance,
    pub kind: IndexKind,
}

impl IndexMarker {
    pub fn lower() -> Self {
        IndexMarker { variance: Variance::Lower, kind: IndexKind::Real }
    }
    pub fn upper() -> Self {
        IndexMarker { variance: Variance::Upper, kind: IndexKind::Real }
    }
}

/// A pointwise tensor with typed indices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TensorValue {
    pub index_spec: Vec<IndexMarker>,
    pub shape: Vec<usize>,
    /// Row-major `[re, im]` pairs.
    pub data: Vec<[f64; 2]>,
    pub point: Vec<f64>,
}

impl TensorValue {
    /// Wraps a real-index tensor of complex dimension `n`.
    pub fn from_real(t: &VTensor, variances: &[Variance], point: &[f64]) -> Self {
        assert_eq!(variances.len(), t.rank);
        TensorValue {
            index_spec: variances.iter().map(|&v| IndexMarker { variance: v, kind: IndexKind::Real }).collect(),
            shape: vec![t.d; t.rank],
            data: t.data.iter().map(|c| [c.re, c.im]).collect(),
            point: point.to_vec(),
        }
    }

    pub fn complex_dim(&self) -> usize {
        self.index_spec
            .iter()
            .zip(&self.shape)
            .map(|(m, &s)| if m.kind == IndexKind::Real { s / 2 } else { s })
            .next()
            .unwrap_or(0)
    }

    pub fn get(&self, idx: &[usize]) -> C64 {
        let flat = idx.iter().zip(&self.shape).fold(0, |acc, (&i, &s)| acc * s + i);
        let v = self.data[flat];
        C64::new(v[0], v[1])
    }

    /// Restricts every real index to one block.
    pub fn block(&self, kinds: &[IndexKind]) -> TensorValue {
        assert_eq!(kinds.len(), self.shape.len());
        let n = self.complex_dim();
        let shape: Vec<usize> = kinds.iter().map(|_| n).collect();
        let len = shape.iter().product::<usize>();
        let mut idx = vec![0; kinds.len()];
        let mut data = Vec::with_capacity(len);
        for flat in 0..len {
            unflatten(flat, n, &mut idx);
            let full: Vec<usize> = idx
                .iter()
                .zip(kinds)
                .map(|(&i, k)| if *k == IndexKind::Antiholomorphic { i + n } else { i })
                .collect();
            let v = self.get(&full);
            data.push([v.re, v.im]);
        }
        TensorValue {
            index_spec: self
                .index_spec
                .iter()
                .zip(kinds)
                .map(|(m, &k)| IndexMarker { variance: m.variance, kind: k })
                .collect(),
            shape,
            data,
            point: self.point.clone(),
        }
    }

    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|v| v[0].hypot(v[1])).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("tensor serialization")
    }
}

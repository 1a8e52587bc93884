//! Truncated multivariate Taylor jets in the six Wirtinger variables
//! `(z¹, z², z³, z̄¹, z̄², z̄³)`.
//!
//! A jet of order `N` stores `c_α = ∂^α f(p) / α!` for every multi-index
//! with `|α| ≤ N`. Products, compositions and Wirtinger derivatives of jets
//! are exact up to the truncation order, which is what lets every curvature
//! identity be evaluated without finite differences.

use num_complex::Complex64 as C64;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

/// Number of jet variables: three holomorphic then three antiholomorphic.
pub const NVARS: usize = 6;
/// Highest supported truncation order.
pub const MAX_ORDER: usize = 4;

struct Tables {
    monos: Vec<[u8; NVARS]>,
    /// `count[d]` = number of monomials with degree ≤ d.
    count: [usize; MAX_ORDER + 1],
    /// (i, j, k) with mono_i + mono_j = mono_k, sorted by k.
    mul: Vec<(u16, u16, u16)>,
    /// `mul_end[d]` = number of `mul` entries whose target has degree ≤ d.
    mul_end: [usize; MAX_ORDER + 1],
    /// Per variable: (src, dst, factor) for ∂/∂w_v.
    deriv: Vec<Vec<(u16, u16, f64)>>,
    /// Index permutation exchanging z^μ and z̄^μ.
    swap: Vec<u16>,
    factorial: Vec<f64>,
}

fn degree(m: &[u8; NVARS]) -> usize {
    m.iter().map(|&e| e as usize).sum()
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(build_tables)
}

fn build_tables() -> Tables {
    let mut monos: Vec<[u8; NVARS]> = Vec::new();
    let mut count = [0usize; MAX_ORDER + 1];
    for d in 0..=MAX_ORDER {
        let mut cur = [0u8; NVARS];
        push_degree(d, 0, &mut cur, &mut monos);
        count[d] = monos.len();
    }
    let find = |m: &[u8; NVARS]| -> Option<usize> { monos.iter().position(|x| x == m) };
    let mut mul = Vec::new();
    for (k, mk) in monos.iter().enumerate() {
        for (i, mi) in monos.iter().enumerate() {
            if (0..NVARS).all(|v| mi[v] <= mk[v]) {
                let mut mj = [0u8; NVARS];
                for v in 0..NVARS {
                    mj[v] = mk[v] - mi[v];
                }
                let j = find(&mj).expect("complement monomial");
                mul.push((i as u16, j as u16, k as u16));
            }
        }
    }
    let mut mul_end = [0usize; MAX_ORDER + 1];
    for d in 0..=MAX_ORDER {
        mul_end[d] = mul.iter().filter(|e| degree(&monos[e.2 as usize]) <= d).count();
    }
    let mut deriv = vec![Vec::new(); NVARS];
    for (src, m) in monos.iter().enumerate() {
        for (v, dv) in deriv.iter_mut().enumerate() {
            if m[v] > 0 {
                let mut t = *m;
                t[v] -= 1;
                let dst = find(&t).unwrap();
                dv.push((src as u16, dst as u16, m[v] as f64));
            }
        }
    }
    let swap = monos
        .iter()
        .map(|m| {
            let s = [m[3], m[4], m[5], m[0], m[1], m[2]];
            find(&s).unwrap() as u16
        })
        .collect();
    let mut factorial = vec![1.0; MAX_ORDER + 2];
    for k in 1..factorial.len() {
        factorial[k] = factorial[k - 1] * k as f64;
    }
    Tables { monos, count, mul, mul_end, deriv, swap, factorial }
}

fn push_degree(rem: usize, var: usize, cur: &mut [u8; NVARS], out: &mut Vec<[u8; NVARS]>) {
    if var == NVARS - 1 {
        cur[var] = rem as u8;
        out.push(*cur);
        cur[var] = 0;
        return;
    }
    for e in (0..=rem).rev() {
        cur[var] = e as u8;
        push_degree(rem - e, var + 1, cur, out);
    }
    cur[var] = 0;
}

/// Number of Taylor coefficients of a jet of the given order.
pub fn jet_len(order: usize) -> usize {
    tables().count[order]
}

/// Exponent vector of the `i`-th monomial.
pub fn monomial(i: usize) -> [u8; NVARS] {
    tables().monos[i]
}

/// Index of a monomial, if its degree is within `MAX_ORDER`.
pub fn monomial_index(m: &[u8; NVARS]) -> Option<usize> {
    if degree(m) > MAX_ORDER {
        return None;
    }
    tables().monos.iter().position(|x| x == m)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    order: usize,
    c: Vec<C64>,
}

impl Jet {
    pub fn zero(order: usize) -> Self {
        assert!(order <= MAX_ORDER, "jet order {order} exceeds {MAX_ORDER}");
        Jet { order, c: vec![C64::new(0.0, 0.0); jet_len(order)] }
    }

    pub fn constant(order: usize, v: C64) -> Self {
        let mut j = Self::zero(order);
        j.c[0] = v;
        j
    }

    /// The affine jet `v + (w_var − w_var(p))`.
    pub fn variable(order: usize, var: usize, v: C64) -> Self {
        let mut j = Self::constant(order, v);
        if order >= 1 {
            let mut m = [0u8; NVARS];
            m[var] = 1;
            j.c[monomial_index(&m).unwrap()] = C64::new(1.0, 0.0);
        }
        j
    }

    /// Jet of `exp(v0 + Σ λ_v (w_v − w_v(p)))`.
    pub fn exp_linear(order: usize, v0: C64, lambda: &[C64; NVARS]) -> Self {
        let t = tables();
        let base = v0.exp();
        let mut pw = [[C64::new(1.0, 0.0); MAX_ORDER + 1]; NVARS];
        for v in 0..NVARS {
            for e in 1..=order {
                pw[v][e] = pw[v][e - 1] * lambda[v] / e as f64;
            }
        }
        let n = jet_len(order);
        let mut c = Vec::with_capacity(n);
        for m in &t.monos[..n] {
            let mut acc = base;
            for v in 0..NVARS {
                if m[v] > 0 {
                    acc *= pw[v][m[v] as usize];
                }
            }
            c.push(acc);
        }
        Jet { order, c }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn value(&self) -> C64 {
        self.c[0]
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.c
    }

    /// Partial derivative `∂^α f(p)` for a multi-index in jet variables.
    pub fn partial(&self, alpha: &[u8; NVARS]) -> C64 {
        let t = tables();
        let d = degree(alpha);
        assert!(d <= self.order, "derivative order {d} exceeds jet order {}", self.order);
        let i = monomial_index(alpha).unwrap();
        let scale: f64 = alpha.iter().map(|&e| t.factorial[e as usize]).product();
        self.c[i] * scale
    }

    pub fn truncate(&self, order: usize) -> Jet {
        let order = order.min(self.order);
        Jet { order, c: self.c[..jet_len(order)].to_vec() }
    }

    /// Wirtinger derivative in variable `var`; lowers the order by one.
    pub fn d(&self, var: usize) -> Jet {
        assert!(self.order >= 1, "cannot differentiate an order-0 jet");
        let t = tables();
        let mut out = Jet::zero(self.order - 1);
        let lim = jet_len(self.order);
        for &(src, dst, f) in &t.deriv[var] {
            if (src as usize) < lim {
                out.c[dst as usize] += self.c[src as usize] * f;
            }
        }
        out
    }

    /// Jet of the complex conjugate function.
    pub fn conj(&self) -> Jet {
        let t = tables();
        let mut out = Jet::zero(self.order);
        for (i, v) in self.c.iter().enumerate() {
            out.c[t.swap[i] as usize] = v.conj();
        }
        out
    }

    pub fn scale(&self, s: C64) -> Jet {
        Jet { order: self.order, c: self.c.iter().map(|v| v * s).collect() }
    }

    pub fn scale_re(&self, s: f64) -> Jet {
        Jet { order: self.order, c: self.c.iter().map(|v| v * s).collect() }
    }

    /// `self += a * b`, truncating to `self`'s order.
    pub fn add_mul(&mut self, a: &Jet, b: &Jet) {
        let order = self.order.min(a.order).min(b.order);
        if order < self.order {
            self.c.truncate(jet_len(order));
            self.order = order;
        }
        let t = tables();
        for &(i, j, k) in &t.mul[..t.mul_end[order]] {
            self.c[k as usize] += a.c[i as usize] * b.c[j as usize];
        }
    }

    pub fn add_assign_ref(&mut self, o: &Jet) {
        let order = self.order.min(o.order);
        if order < self.order {
            self.c.truncate(jet_len(order));
            self.order = order;
        }
        for (a, b) in self.c.iter_mut().zip(o.c.iter()) {
            *a += b;
        }
    }

    pub fn add_scaled(&mut self, o: &Jet, s: C64) {
        let order = self.order.min(o.order);
        if order < self.order {
            self.c.truncate(jet_len(order));
            self.order = order;
        }
        for (a, b) in self.c.iter_mut().zip(o.c.iter()) {
            *a += b * s;
        }
    }

    /// `φ(self)` given `derivs[k] = φ^{(k)}(self(p))` for `k ≤ order`.
    pub fn compose(&self, derivs: &[C64]) -> Jet {
        let t = tables();
        let mut eps = self.clone();
        eps.c[0] = C64::new(0.0, 0.0);
        let mut acc = Jet::constant(self.order, derivs[self.order] / t.factorial[self.order]);
        for k in (0..self.order).rev() {
            let mut next = Jet::constant(self.order, derivs[k] / t.factorial[k]);
            next.add_mul(&acc, &eps);
            acc = next;
        }
        acc
    }

    pub fn exp(&self) -> Jet {
        let e = self.c[0].exp();
        self.compose(&vec![e; self.order + 1])
    }

    /// Principal logarithm; the value must avoid the branch cut.
    pub fn ln(&self) -> Jet {
        let a = self.c[0];
        let mut d = vec![a.ln()];
        let mut fact = 1.0;
        for k in 1..=self.order {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            d.push(a.powi(-(k as i32)) * (sign * fact));
            fact *= k as f64;
        }
        self.compose(&d)
    }

    pub fn recip(&self) -> Jet {
        self.powf(-1.0)
    }

    pub fn sqrt(&self) -> Jet {
        self.powf(0.5)
    }

    /// `self^s` on the principal branch.
    pub fn powf(&self, s: f64) -> Jet {
        let a = self.c[0];
        let mut d = Vec::with_capacity(self.order + 1);
        let mut coef = 1.0;
        for k in 0..=self.order {
            d.push(a.powc(C64::new(s - k as f64, 0.0)) * coef);
            coef *= s - k as f64;
        }
        self.compose(&d)
    }
}

impl<'a> Add<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn add(self, o: &Jet) -> Jet {
        let mut r = self.clone();
        r.add_assign_ref(o);
        r
    }
}

impl<'a> Sub<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn sub(self, o: &Jet) -> Jet {
        let mut r = self.clone();
        r.add_scaled(o, C64::new(-1.0, 0.0));
        r
    }
}

impl<'a> Mul<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn mul(self, o: &Jet) -> Jet {
        let mut r = Jet::zero(self.order.min(o.order));
        r.add_mul(self, o);
        r
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale_re(-1.0)
    }
}


/// Jet of a function given its real partial derivatives at the point.
///
/// `derivative(α)` returns `∂^α f / ∂x^α` for a multi-index over real
/// coordinates `(x_0, y_0, x_1, …)` of length `real_dim ≤ 6`.
pub fn from_real_derivatives(order: usize, real_dim: usize, mut derivative: impl FnMut(&[usize]) -> C64) -> Jet {
    assert!(real_dim <= NVARS);
    // δx = (w + w̄)/2, δy = (w − w̄)/(2i)
    let deltas: Vec<Jet> = (0..real_dim)
        .map(|j| {
            let mu = j / 2;
            let mut t = Jet::zero(order.max(1));
            if j % 2 == 0 {
                t.add_assign_ref(&Jet::variable(order.max(1), mu, C64::new(0.0, 0.0)).scale_re(0.5));
                t.add_assign_ref(&Jet::variable(order.max(1), 3 + mu, C64::new(0.0, 0.0)).scale_re(0.5));
            } else {
                t.add_assign_ref(&Jet::variable(order.max(1), mu, C64::new(0.0, 0.0)).scale(C64::new(0.0, -0.5)));
                t.add_assign_ref(&Jet::variable(order.max(1), 3 + mu, C64::new(0.0, 0.0)).scale(C64::new(0.0, 0.5)));
            }
            t.truncate(order)
        })
        .collect();
    let mut acc = Jet::zero(order);
    let mut alpha = vec![0usize; real_dim];
    fn rec(
        j: usize,
        left: usize,
        alpha: &mut Vec<usize>,
        term: Jet,
        fact: f64,
        deltas: &[Jet],
        acc: &mut Jet,
        derivative: &mut dyn FnMut(&[usize]) -> C64,
    ) {
        if j == alpha.len() {
            acc.add_scaled(&term, derivative(alpha) / fact);
            return;
        }
        let mut t = term;
        let mut f = fact;
        for a in 0..=left {
            alpha[j] = a;
            rec(j + 1, left - a, alpha, t.clone(), f, deltas, acc, derivative);
            t = &t * &deltas[j];
            f *= (a + 1) as f64;
        }
        alpha[j] = 0;
    }
    rec(0, order, &mut alpha, Jet::constant(order, C64::new(1.0, 0.0)), 1.0, &deltas, &mut acc, &mut derivative);
    acc
}

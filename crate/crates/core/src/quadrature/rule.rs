//! Gauss–Legendre rules and Legendre series helpers.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest supported rule size.
pub const MAX_NODES: usize = 64;

/// P_0(x) .. P_{n-1}(x) by the three-term recurrence.
pub fn legendre_values<S: Real>(x: S, out: &mut [S]) {
    if out.is_empty() {
        return;
    }
    out[0] = S::one();
    if out.len() > 1 {
        out[1] = x;
    }
    for k in 2..out.len() {
        let kf = S::count(k);
        out[k] = ((S::lit(2.0) * kf - S::one()) * x * out[k - 1] - (kf - S::one()) * out[k - 2]) / kf;
    }
}

/// (P_n(x), P_n'(x)) for |x| < 1.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// An n-point Gauss–Legendre rule on [−1, 1], nodes ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre<S> {
    nodes: Vec<S>,
    weights: Vec<S>,
}

impl<S: Real> GaussLegendre<S> {
    pub fn new(n: usize) -> Result<Self> {
        if !(1..=MAX_NODES).contains(&n) {
            return Err(Error::Invalid(format!("Gauss–Legendre size {n} outside 1..={MAX_NODES}")));
        }
        let mut nodes = vec![S::zero(); n];
        let mut weights = vec![S::zero(); n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            // Tricomi initial guess for the i-th largest root
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d.is_finite() {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[n - 1 - i] = S::lit(x);
            nodes[i] = S::lit(-x);
            weights[i] = S::lit(w);
            weights[n - 1 - i] = S::lit(w);
        }
        if n % 2 == 1 {
            nodes[n / 2] = S::zero();
        }
        Ok(Self { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[S] {
        &self.nodes
    }

    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    /// Nodes mapped to [a, b].
    pub fn nodes_on(&self, a: S, b: S) -> impl Iterator<Item = S> + '_ {
        let half = (b - a) * S::lit(0.5);
        let mid = a + half;
        self.nodes.iter().map(move |&x| mid + half * x)
    }

    /// ∫_a^b f by this rule.
    pub fn integrate<F: FnMut(S) -> S>(&self, a: S, b: S, mut f: F) -> S {
        let half = (b - a) * S::lit(0.5);
        let mid = a + half;
        let mut acc = S::zero();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + w * f(mid + half * x);
        }
        acc * half
    }

    /// Legendre coefficients c_0..c_{n-1} of the interpolant through samples
    /// taken at [`Self::nodes`].
    pub fn legendre_coefficients(&self, samples: &[S]) -> Vec<S> {
        let n = self.len();
        assert_eq!(samples.len(), n);
        let mut c = vec![S::zero(); n];
        let mut p = vec![S::zero(); n];
        for ((&x, &w), &f) in self.nodes.iter().zip(&self.weights).zip(samples) {
            legendre_values(x, &mut p);
            for j in 0..n {
                c[j] = c[j] + w * f * p[j];
            }
        }
        for (j, cj) in c.iter_mut().enumerate() {
            *cj = *cj * (S::count(2 * j + 1) * S::lit(0.5));
        }
        c
    }
}

/// Coefficients of u ↦ ∫_{−1}^{u} Σ c_j P_j in the Legendre basis (one longer).
pub fn antiderivative_coefficients<S: Real>(c: &[S]) -> Vec<S> {
    let mut a = vec![S::zero(); c.len() + 1];
    if c.is_empty() {
        return a;
    }
    a[0] = a[0] + c[0];
    a[1] = a[1] + c[0];
    for (j, &cj) in c.iter().enumerate().skip(1) {
        let s = cj / S::count(2 * j + 1);
        a[j + 1] = a[j + 1] + s;
        a[j - 1] = a[j - 1] - s;
    }
    a
}

/// Σ c_j P_j(x) by Clenshaw's recurrence.
pub fn legendre_series<S: Real>(c: &[S], x: S) -> S {
    let (mut b1, mut b2) = (S::zero(), S::zero());
    for k in (0..c.len()).rev() {
        let kf = S::count(k);
        // α_k = (2k+1)x/(k+1), β_{k+1} = −(k+1)/(k+2)
        let alpha = (S::lit(2.0) * kf + S::one()) * x / (kf + S::one());
        let beta = -(kf + S::one()) / (kf + S::lit(2.0));
        let b0 = c[k] + alpha * b1 + beta * b2;
        b2 = b1;
        b1 = b0;
    }
    b1
}

//! Product Gauss rules on S^{d-1}.
//!
//! Each polar angle `t_j` carries the surface-measure weight
//! `sin^{d-1-j} t_j`, i.e. `(1-c^2)^{(d-2-j)/2} dc` in `c = cos t_j`. That is
//! a Gauss-Gegenbauer weight with parameter `(d-1-j)/2`. The azimuth uses the
//! trapezoidal rule. With `n` polar nodes and `q` azimuth nodes the rule
//! integrates every polynomial of degree `min(2n-1, q-1)` exactly.

use super::gegenbauer::gamma_half;
use super::SpherePoint;
use crate::error::{check_dim, Error, Result};
use nalgebra::DMatrix;
use std::f64::consts::PI;

pub const DEFAULT_NODE_BUDGET: usize = 4_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    d: usize,
    nodes: Vec<SpherePoint>,
    weights: Vec<f64>,
    exactness_degree: usize,
}

impl QuadratureRule {
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn nodes(&self) -> &[SpherePoint] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn exactness_degree(&self) -> usize {
        self.exactness_degree
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `sum_i w_i f(xi_i)`, accumulated in node order.
    pub fn integrate<F: Fn(&SpherePoint) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(p, w)| w * f(p))
            .sum()
    }

    /// Spherical mean `(1/|S|) int f`.
    pub fn mean<F: Fn(&SpherePoint) -> f64>(&self, f: F) -> f64 {
        self.integrate(f) / self.weights.iter().sum::<f64>()
    }
}

pub fn build_quadrature(d: usize, target_degree: usize) -> Result<QuadratureRule> {
    build_quadrature_with_budget(d, target_degree, DEFAULT_NODE_BUDGET)
}

pub fn build_quadrature_with_budget(
    d: usize,
    target_degree: usize,
    budget: usize,
) -> Result<QuadratureRule> {
    check_dim(d)?;
    let polar_count = target_degree / 2 + 1;
    let azimuth_count = target_degree + 1;
    let required = (polar_count as u128).pow(d as u32 - 2) * azimuth_count as u128;
    if required > budget as u128 {
        return Err(Error::NodeBudget {
            d,
            degree: target_degree,
            required,
            budget,
        });
    }
    let exactness_degree = (2 * polar_count - 1).min(azimuth_count - 1);

    let levels: Vec<GaussRule> = (1..=d - 2)
        .map(|j| gauss_gegenbauer(polar_count, (d - 1 - j) as f64 / 2.0))
        .collect();
    let azimuth_weight = 2.0 * PI / azimuth_count as f64;

    let total = required as usize;
    let mut nodes = Vec::with_capacity(total);
    let mut weights = Vec::with_capacity(total);
    let mut counter = vec![0usize; d - 2];
    loop {
        let mut weight = azimuth_weight;
        let mut sines = 1.0;
        let mut prefix = Vec::with_capacity(d);
        for (level, &i) in levels.iter().zip(&counter) {
            let c = level.nodes[i];
            prefix.push(sines * c);
            sines *= (1.0 - c * c).max(0.0).sqrt();
            weight *= level.weights[i];
        }
        for a in 0..azimuth_count {
            let phi = 2.0 * PI * a as f64 / azimuth_count as f64;
            let mut x = prefix.clone();
            x.push(sines * phi.cos());
            x.push(sines * phi.sin());
            nodes.push(SpherePoint::from_unit_unchecked(x));
            weights.push(weight);
        }
        // odometer over the polar levels, last level fastest
        let mut pos = d - 2;
        loop {
            if pos == 0 {
                return Ok(QuadratureRule {
                    d,
                    nodes,
                    weights,
                    exactness_degree,
                });
            }
            pos -= 1;
            counter[pos] += 1;
            if counter[pos] < polar_count {
                break;
            }
            counter[pos] = 0;
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Off-diagonal of the Jacobi matrix for the weight `(1-t^2)^{lambda-1/2}`.
fn jacobi_offdiag(k: usize, lambda: f64) -> f64 {
    let k = k as f64;
    (k * (k + 2.0 * lambda - 1.0) / (4.0 * (k + lambda) * (k + lambda - 1.0))).sqrt()
}

/// Orthonormal polynomial `p_n(t)` and its derivative.
fn orthonormal(n: usize, lambda: f64, mu0: f64, t: f64) -> (f64, f64, f64) {
    let mut p_prev = 0.0;
    let mut d_prev = 0.0;
    let mut p = 1.0 / mu0.sqrt();
    let mut dp = 0.0;
    let mut christoffel = p * p;
    for k in 0..n {
        let b_next = jacobi_offdiag(k + 1, lambda);
        let b_cur = if k == 0 { 0.0 } else { jacobi_offdiag(k, lambda) };
        let p_next = (t * p - b_cur * p_prev) / b_next;
        let d_next = (p + t * dp - b_cur * d_prev) / b_next;
        p_prev = p;
        d_prev = dp;
        p = p_next;
        dp = d_next;
        if k + 1 < n {
            christoffel += p * p;
        }
    }
    (p, dp, christoffel)
}

/// n-point Gauss rule for `(1-t^2)^{lambda-1/2}` on [-1, 1], `lambda >= 1/2`
/// a multiple of 1/2. Golub-Welsch for the initial nodes, then Newton
/// polishing and Christoffel weights.
pub(crate) fn gauss_gegenbauer(n: usize, lambda: f64) -> GaussRule {
    let twice = (2.0 * lambda).round() as u32;
    // int (1-t^2)^{lambda-1/2} = sqrt(pi) Gamma(lambda+1/2) / Gamma(lambda+1)
    let mu0 = PI.sqrt() * gamma_half(twice + 1) / gamma_half(twice + 2);
    if n == 1 {
        return GaussRule {
            nodes: vec![0.0],
            weights: vec![mu0],
        };
    }
    let mut jacobi = DMatrix::<f64>::zeros(n, n);
    for k in 1..n {
        let b = jacobi_offdiag(k, lambda);
        jacobi[(k - 1, k)] = b;
        jacobi[(k, k - 1)] = b;
    }
    let mut nodes: Vec<f64> = jacobi.symmetric_eigenvalues().iter().copied().collect();
    nodes.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));

    let mut weights = Vec::with_capacity(n);
    for t in nodes.iter_mut() {
        for _ in 0..3 {
            let (p, dp, _) = orthonormal(n, lambda, mu0, *t);
            let step = p / dp;
            *t -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let (_, _, christoffel) = orthonormal(n, lambda, mu0, *t);
        weights.push(1.0 / christoffel);
    }
    // enforce the reflection symmetry of the weight exactly
    for i in 0..n / 2 {
        let j = n - 1 - i;
        let t = 0.5 * (nodes[j] - nodes[i]);
        let w = 0.5 * (weights[i] + weights[j]);
        nodes[i] = -t;
        nodes[j] = t;
        weights[i] = w;
        weights[j] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    GaussRule { nodes, weights }
}

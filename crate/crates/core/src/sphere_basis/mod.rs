//! Real orthonormal spherical harmonics on S^{d-1} for any d >= 2, plus
//! product quadrature rules on the sphere.
//!
//! The basis is the hyperspherical chain basis. A harmonic of degree `k` is
//! labelled by a chain `k = k1 >= k2 >= ... >= k_{d-2} >= |k_{d-1}|` whose
//! last entry is signed. In hyperspherical angles
//!
//! ```text
//! x1 = cos t1, x2 = sin t1 cos t2, ..., x_{d-1} = sin t1 ... sin t_{d-2} cos p,
//! x_d = sin t1 ... sin t_{d-2} sin p
//! ```
//!
//! the element is `N * prod_j sin^{k_{j+1}} t_j C^{l_j}_{k_j - k_{j+1}}(cos t_j) * A(p)`
//! with Gegenbauer parameter `l_j = |k_{j+1}| + (d - j - 1) / 2` and azimuth
//! factor `A = cos(m p)` for `m = k_{d-1} >= 0`, `sin(|m| p)` for `m < 0`.
//!
//! Sign and ordering convention: within a degree, chains are ordered
//! lexicographically on `(k2, ..., k_{d-2})` ascending, then by the signed
//! azimuth index in the order `0, +1, -1, +2, -2, ...`. For d = 2 the chain is
//! the single signed entry `(k)` (cosine) followed by `(-k)` (sine).
//!
//! Evaluation never goes through the angles: every factor is written in its
//! homogeneous Cartesian (solid-harmonic) form, which is a polynomial and has
//! no pole singularities.

mod gegenbauer;
mod harmonics;
mod point;
mod quadrature;

pub use gegenbauer::{gegenbauer, gegenbauer_norm_sq, gamma_half};
pub use harmonics::{eval_grad_y, eval_y, solid_harmonic, solid_harmonic_grad};
pub(crate) use harmonics::eval_y_and_grad;
pub use point::SpherePoint;
pub use quadrature::{build_quadrature, build_quadrature_with_budget, QuadratureRule, DEFAULT_NODE_BUDGET};

use crate::error::{check_dim, Error, Result};
use std::f64::consts::PI;

/// One element `Y_{k,l}` of the real orthonormal basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HarmonicIndex {
    degree: usize,
    chain: Vec<i32>,
    flat_l: usize,
}

impl HarmonicIndex {
    /// Builds an index from a chain, checking the chain conditions. `flat_l`
    /// is recomputed from the canonical ordering.
    pub fn from_chain(d: usize, chain: Vec<i32>) -> Result<Self> {
        check_dim(d)?;
        if chain.len() != d - 1 {
            return Err(Error::InvalidArgument(format!(
                "chain {:?} has length {}, expected {} for d={}",
                chain,
                chain.len(),
                d - 1,
                d
            )));
        }
        let degree = chain[0].unsigned_abs() as usize;
        let valid = if d == 2 {
            true
        } else {
            chain[0] >= 0
                && chain[1..d - 2].iter().all(|&c| c >= 0)
                && chain.windows(2).all(|w| w[0] >= w[1].abs())
        };
        if !valid {
            return Err(Error::InvalidArgument(format!(
                "{chain:?} is not a valid harmonic chain"
            )));
        }
        let flat_l = chains_of_degree(d, degree)
            .iter()
            .position(|c| *c == chain)
            .map(|p| p + 1)
            .expect("valid chain is enumerated");
        Ok(Self {
            degree,
            chain,
            flat_l,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn chain(&self) -> &[i32] {
        &self.chain
    }

    /// 1-based position within its degree.
    pub fn flat_l(&self) -> usize {
        self.flat_l
    }

    pub fn dim(&self) -> usize {
        self.chain.len() + 1
    }

    /// Colon-separated chain, e.g. `3:1:-1`.
    pub fn chain_label(&self) -> String {
        self.chain
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(":")
    }
}

/// Dimension `d` and maximum degree `m` of a truncated basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisSpec {
    pub d: usize,
    pub m: usize,
}

impl BasisSpec {
    pub fn new(d: usize, m: usize) -> Result<Self> {
        check_dim(d)?;
        Ok(Self { d, m })
    }
}

/// `N_{k,d}`, the dimension of the degree-`k` harmonic polynomials in `d`
/// variables, in exact integer arithmetic.
pub fn harmonic_space_dim(k: usize, d: usize) -> Result<u64> {
    check_dim(d)?;
    if k == 0 {
        return Ok(1);
    }
    let overflow = || Error::Overflow("harmonic_space_dim");
    // (k+d-3)!/(k!(d-2)!) = C(k+d-2, k) / (k+d-2)
    let mut binom: u64 = 1;
    for i in 1..=k as u64 {
        binom = binom
            .checked_mul(d as u64 - 2 + i)
            .ok_or_else(overflow)?
            / i;
    }
    let lead = (2 * k + d - 2) as u64;
    let top = (k + d - 2) as u64;
    let numerator = binom.checked_mul(lead).ok_or_else(overflow)?;
    debug_assert_eq!(numerator % top, 0);
    Ok(numerator / top)
}

/// Surface area of the unit sphere S^{d-1}: `2 pi^{d/2} / Gamma(d/2)`.
pub fn surface_area(d: usize) -> f64 {
    2.0 * PI.powf(d as f64 / 2.0) / gamma_half(d as u32)
}

/// All chains of degree `k` in canonical order.
pub fn chains_of_degree(d: usize, k: usize) -> Vec<Vec<i32>> {
    let k = k as i32;
    if d == 2 {
        return if k == 0 { vec![vec![0]] } else { vec![vec![k], vec![-k]] };
    }
    let mut out = Vec::new();
    let mut prefix = vec![k];
    push_chains(d, &mut prefix, &mut out);
    out
}

fn push_chains(d: usize, prefix: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
    let top = *prefix.last().expect("prefix is nonempty");
    if prefix.len() == d - 2 {
        for m in signed_order(top) {
            let mut chain = prefix.clone();
            chain.push(m);
            out.push(chain);
        }
        return;
    }
    for next in 0..=top {
        prefix.push(next);
        push_chains(d, prefix, out);
        prefix.pop();
    }
}

fn signed_order(bound: i32) -> impl Iterator<Item = i32> {
    std::iter::once(0).chain((1..=bound).flat_map(|m| [m, -m]))
}

/// Every basis index with degree `<= spec.m`, grouped by ascending degree.
pub fn enumerate_basis(spec: BasisSpec) -> Vec<HarmonicIndex> {
    let mut out = Vec::new();
    for k in 0..=spec.m {
        for (pos, chain) in chains_of_degree(spec.d, k).into_iter().enumerate() {
            out.push(HarmonicIndex {
                degree: k,
                chain,
                flat_l: pos + 1,
            });
        }
    }
    out
}

/// Sum of `N_{k,d}` over `k <= m`.
pub fn basis_size(spec: BasisSpec) -> Result<u64> {
    (0..=spec.m).try_fold(0u64, |acc, k| {
        acc.checked_add(harmonic_space_dim(k, spec.d)?)
            .ok_or(Error::Overflow("basis_size"))
    })
}

/// Largest entry of `|G - I|` where `G_ij = quad(Y_i Y_j)` over `basis`.
pub fn gram_max_residual(basis: &[HarmonicIndex], rule: &QuadratureRule) -> Result<f64> {
    use rayon::prelude::*;
    let weighted: Vec<Vec<f64>> = basis
        .par_iter()
        .map(|idx| {
            rule.nodes()
                .iter()
                .zip(rule.weights())
                .map(|(p, w)| eval_y(idx, p).map(|y| y * w.sqrt()))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;
    let worst = (0..basis.len())
        .into_par_iter()
        .map(|i| {
            (i..basis.len())
                .map(|j| {
                    let dot = dot(&weighted[i], &weighted[j]);
                    let target = if i == j { 1.0 } else { 0.0 };
                    (dot - target).abs()
                })
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    Ok(worst)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = [0.0; 4];
    let chunks = a.len() / 4 * 4;
    for (x, y) in a[..chunks].chunks_exact(4).zip(b[..chunks].chunks_exact(4)) {
        for lane in 0..4 {
            acc[lane] += x[lane] * y[lane];
        }
    }
    let tail: f64 = a[chunks..].iter().zip(&b[chunks..]).map(|(x, y)| x * y).sum();
    acc[0] + acc[1] + acc[2] + acc[3] + tail
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_space_dim_values() {
        assert_eq!(harmonic_space_dim(0, 5).unwrap(), 1);
        assert_eq!(harmonic_space_dim(1, 3).unwrap(), 3);
        assert_eq!(harmonic_space_dim(2, 4).unwrap(), 9);
        for k in 1..20 {
            assert_eq!(harmonic_space_dim(k, 2).unwrap(), 2);
            assert_eq!(harmonic_space_dim(k, 3).unwrap(), 2 * k as u64 + 1);
        }
        assert_eq!(harmonic_space_dim(3, 1), Err(Error::Dimension(1)));
    }

    #[test]
    fn harmonic_space_dim_overflow_is_reported() {
        assert_eq!(
            harmonic_space_dim(200, 60),
            Err(Error::Overflow("harmonic_space_dim"))
        );
    }

    #[test]
    fn chain_counts_match_formula() {
        for d in 2..=8 {
            for k in 0..=10 {
                let chains = chains_of_degree(d, k);
                assert_eq!(chains.len() as u64, harmonic_space_dim(k, d).unwrap());
                let mut sorted = chains.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), chains.len(), "duplicate chains d={d} k={k}");
            }
        }
    }

    #[test]
    fn enumerate_small_cases() {
        assert_eq!(enumerate_basis(BasisSpec::new(2, 2).unwrap()).len(), 5);
        assert_eq!(enumerate_basis(BasisSpec::new(3, 1).unwrap()).len(), 4);
        assert_eq!(enumerate_basis(BasisSpec::new(4, 0).unwrap()).len(), 1);
        let basis = enumerate_basis(BasisSpec::new(3, 2).unwrap());
        let labels: Vec<_> = basis.iter().map(|i| i.chain_label()).collect();
        assert_eq!(
            labels,
            ["0:0", "1:0", "1:1", "1:-1", "2:0", "2:1", "2:-1", "2:2", "2:-2"]
        );
        assert_eq!(basis[3].flat_l(), 3);
    }

    #[test]
    fn from_chain_round_trips_flat_position() {
        for idx in enumerate_basis(BasisSpec::new(5, 4).unwrap()) {
            let again = HarmonicIndex::from_chain(5, idx.chain().to_vec()).unwrap();
            assert_eq!(again, idx);
        }
        assert!(HarmonicIndex::from_chain(4, vec![2, 3, 0]).is_err());
        assert!(HarmonicIndex::from_chain(4, vec![2, 1]).is_err());
    }

    #[test]
    fn surface_areas() {
        assert!((surface_area(2) - 2.0 * PI).abs() < 1e-14);
        assert!((surface_area(3) - 4.0 * PI).abs() < 1e-14);
        assert!((surface_area(4) - 2.0 * PI * PI).abs() < 1e-13);
        // |S^4| = 8 pi^2 / 3
        assert!((surface_area(5) - 8.0 * PI * PI / 3.0).abs() < 1e-13);
    }
}

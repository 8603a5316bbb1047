//! Evaluation and differentiation of the chain basis through its solid
//! (homogeneous polynomial) form `P(x) = |x|^k Y(x / |x|)`.

use super::gegenbauer::{gegenbauer_norm_sq, homogeneous};
use super::{HarmonicIndex, SpherePoint};
use crate::error::{check_same_dim, Result};
use std::f64::consts::PI;

fn normalization(idx: &HarmonicIndex) -> f64 {
    let d = idx.dim();
    let chain = idx.chain();
    let mut norm_sq = if chain[d - 2] == 0 { 2.0 * PI } else { PI };
    for j in 1..=d.saturating_sub(2) {
        let upper = chain[j - 1] as usize;
        let lower = chain[j].unsigned_abs() as usize;
        norm_sq *= gegenbauer_norm_sq(upper - lower, lambda(d, j, lower));
    }
    1.0 / norm_sq.sqrt()
}

fn lambda(d: usize, level: usize, lower: usize) -> f64 {
    lower as f64 + (d - level - 1) as f64 / 2.0
}

/// `(Re z^p, Im z^p)` for `z = a + ib`.
fn complex_pow(a: f64, b: f64, p: u32) -> (f64, f64) {
    let (mut re, mut im) = (1.0, 0.0);
    for _ in 0..p {
        (re, im) = (re * a - im * b, re * b + im * a);
    }
    (re, im)
}

/// Value of the factors and their Cartesian gradients at `x`. Factor `j`
/// (`0 <= j < d-2`) is the homogeneous Gegenbauer term of polar level `j+1`;
/// the last factor is the azimuthal term.
fn factors(idx: &HarmonicIndex, x: &[f64], with_grad: bool) -> (Vec<f64>, Vec<Vec<f64>>) {
    let d = x.len();
    let chain = idx.chain();
    let mut values = Vec::with_capacity(d - 1);
    let mut grads = Vec::new();

    let mut tail_sq = vec![0.0; d + 1];
    for i in (0..d).rev() {
        tail_sq[i] = tail_sq[i + 1] + x[i] * x[i];
    }
    for level in 1..=d - 2 {
        let upper = chain[level - 1] as usize;
        let lower = chain[level].unsigned_abs() as usize;
        let j = level - 1;
        let h = homogeneous(upper - lower, lambda(d, level, lower), x[j], tail_sq[j]);
        values.push(h.value);
        if with_grad {
            let mut g = vec![0.0; d];
            g[j] = h.d_x + 2.0 * x[j] * h.d_s;
            for i in j + 1..d {
                g[i] = 2.0 * x[i] * h.d_s;
            }
            grads.push(g);
        }
    }

    let m = chain[d - 2];
    let p = m.unsigned_abs();
    let (a, b) = (x[d - 2], x[d - 1]);
    let (re, im) = complex_pow(a, b, p);
    values.push(if m >= 0 { re } else { im });
    if with_grad {
        let mut g = vec![0.0; d];
        if p > 0 {
            let (re1, im1) = complex_pow(a, b, p - 1);
            let pf = p as f64;
            if m >= 0 {
                g[d - 2] = pf * re1;
                g[d - 1] = -pf * im1;
            } else {
                g[d - 2] = pf * im1;
                g[d - 1] = pf * re1;
            }
        }
        grads.push(g);
    }
    (values, grads)
}

/// Solid harmonic `|x|^k Y_{k,l}(x/|x|)` at any `x` in R^d.
pub fn solid_harmonic(idx: &HarmonicIndex, x: &[f64]) -> Result<f64> {
    check_same_dim(idx.dim(), x.len())?;
    let (values, _) = factors(idx, x, false);
    Ok(normalization(idx) * values.iter().product::<f64>())
}

/// Cartesian gradient of the solid harmonic.
pub fn solid_harmonic_grad(idx: &HarmonicIndex, x: &[f64]) -> Result<Vec<f64>> {
    check_same_dim(idx.dim(), x.len())?;
    Ok(solid_value_and_grad(idx, x).1)
}

fn solid_value_and_grad(idx: &HarmonicIndex, x: &[f64]) -> (f64, Vec<f64>) {
    let d = x.len();
    let (values, grads) = factors(idx, x, true);
    let n = values.len();
    // product of all factors except f, via prefix/suffix products
    let mut prefix = vec![1.0; n + 1];
    let mut suffix = vec![1.0; n + 1];
    for f in 0..n {
        prefix[f + 1] = prefix[f] * values[f];
    }
    for f in (0..n).rev() {
        suffix[f] = suffix[f + 1] * values[f];
    }
    let norm = normalization(idx);
    let mut grad = vec![0.0; d];
    for f in 0..n {
        let others = prefix[f] * suffix[f + 1] * norm;
        for (gi, dfi) in grad.iter_mut().zip(&grads[f]) {
            *gi += others * dfi;
        }
    }
    (norm * prefix[n], grad)
}

/// `Y_{k,l}(xi)`.
pub fn eval_y(idx: &HarmonicIndex, xi: &SpherePoint) -> Result<f64> {
    solid_harmonic(idx, xi.cartesian())
}

/// Surface gradient `grad_S Y_{k,l}(xi)`, from the identity
/// `grad P(xi) = k Y(xi) xi + grad_S Y(xi)` on the unit sphere.
pub fn eval_grad_y(idx: &HarmonicIndex, xi: &SpherePoint) -> Result<Vec<f64>> {
    Ok(eval_y_and_grad(idx, xi)?.1)
}

pub(crate) fn eval_y_and_grad(idx: &HarmonicIndex, xi: &SpherePoint) -> Result<(f64, Vec<f64>)> {
    check_same_dim(idx.dim(), xi.dim())?;
    let x = xi.cartesian();
    let (value, mut grad) = solid_value_and_grad(idx, x);
    let k = idx.degree() as f64;
    for (g, xv) in grad.iter_mut().zip(x) {
        *g -= k * value * xv;
    }
    Ok((value, grad))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere_basis::{enumerate_basis, surface_area, BasisSpec};
    use crate::error::Error;

    fn index(d: usize, chain: &[i32]) -> HarmonicIndex {
        HarmonicIndex::from_chain(d, chain.to_vec()).unwrap()
    }

    #[test]
    fn constant_harmonic() {
        for d in 2..=6 {
            let idx = &enumerate_basis(BasisSpec::new(d, 0).unwrap())[0];
            let xi = SpherePoint::from_cartesian(&vec![0.3; d]).unwrap();
            let expected = surface_area(d).powf(-0.5);
            assert!((eval_y(idx, &xi).unwrap() - expected).abs() < 1e-15);
            let grad = eval_grad_y(idx, &xi).unwrap();
            assert!(grad.iter().all(|g| g.abs() < 1e-15));
        }
        let xi = SpherePoint::axis(3, 2).unwrap();
        let y00 = eval_y(&index(3, &[0, 0]), &xi).unwrap();
        assert!((y00 - (4.0 * PI).powf(-0.5)).abs() < 1e-15);
    }

    #[test]
    fn circle_harmonics_are_normalized_fourier_modes() {
        let theta: f64 = 1.1;
        let xi = SpherePoint::from_angles(&[theta]).unwrap();
        let c = eval_y(&index(2, &[1]), &xi).unwrap();
        let s = eval_y(&index(2, &[-1]), &xi).unwrap();
        assert!((c - theta.cos() / PI.sqrt()).abs() < 1e-15);
        assert!((s - theta.sin() / PI.sqrt()).abs() < 1e-15);
        let c3 = eval_y(&index(2, &[3]), &xi).unwrap();
        assert!((c3 - (3.0 * theta).cos() / PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn linear_harmonics_in_three_dimensions() {
        let xi = SpherePoint::from_cartesian(&[0.2, -0.5, 0.7]).unwrap();
        let x = xi.cartesian();
        let scale = (3.0 / (4.0 * PI)).sqrt();
        let cases = [(&[1, 0][..], 0), (&[1, 1][..], 1), (&[1, -1][..], 2)];
        for (chain, coord) in cases {
            let y = eval_y(&index(3, chain), &xi).unwrap();
            assert!((y - scale * x[coord]).abs() < 1e-15);
        }
    }

    #[test]
    fn surface_gradient_of_x3_at_e1() {
        let e1 = SpherePoint::axis(3, 1).unwrap();
        let grad = eval_grad_y(&index(3, &[1, -1]), &e1).unwrap();
        let scale = (3.0 / (4.0 * PI)).sqrt();
        assert!(grad[0].abs() < 1e-15 && grad[1].abs() < 1e-15);
        assert!((grad[2] - scale).abs() < 1e-15);
    }

    #[test]
    fn gradient_is_tangent_at_poles_and_generic_points() {
        let points = [
            SpherePoint::axis(4, 1).unwrap(),
            SpherePoint::axis(4, 4).unwrap(),
            SpherePoint::from_cartesian(&[0.1, -0.3, 0.8, 0.2]).unwrap(),
        ];
        for idx in enumerate_basis(BasisSpec::new(4, 6).unwrap()) {
            for xi in &points {
                let grad = eval_grad_y(&idx, xi).unwrap();
                let dot: f64 = grad.iter().zip(xi.cartesian()).map(|(g, x)| g * x).sum();
                assert!(dot.abs() < 1e-10, "{:?}", idx.chain());
            }
        }
    }

    #[test]
    fn solid_gradient_matches_finite_differences() {
        let x = [0.3, -0.2, 0.5, 0.4, -0.6];
        let h = 1e-6;
        for idx in enumerate_basis(BasisSpec::new(5, 4).unwrap()) {
            let grad = solid_harmonic_grad(&idx, &x).unwrap();
            for i in 0..5 {
                let mut xp = x;
                let mut xm = x;
                xp[i] += h;
                xm[i] -= h;
                let fd = (solid_harmonic(&idx, &xp).unwrap() - solid_harmonic(&idx, &xm).unwrap())
                    / (2.0 * h);
                assert!((fd - grad[i]).abs() < 1e-8, "{:?} i={i}", idx.chain());
            }
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let xi = SpherePoint::axis(3, 1).unwrap();
        assert_eq!(
            eval_y(&index(4, &[1, 0, 0]), &xi),
            Err(Error::DimensionMismatch {
                expected: 4,
                found: 3
            })
        );
        assert!(eval_grad_y(&index(2, &[1]), &xi).is_err());
    }
}

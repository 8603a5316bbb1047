//! Independent numerical solvers used to check the series solutions.
//!
//! None of this is needed to evaluate the exact solutions. It exists so that
//! the closed forms are compared against something that does not share their
//! derivation: finite-difference radial boundary value problems per mode, a
//! full finite-difference solver on a 2-D annulus, a Cartesian Laplacian
//! stencil and a quadrature flux integral.

mod polar;
mod radial;

pub use polar::{polar_laplace_solve_2d, PolarGrid, PolarSolution};
pub use radial::{
    closed_form_profile, convergence_study, radial_bvp_solve, InnerBc, ModeBvpSpec, RadialGrid,
    RadialProfile,
};

use crate::error::{Error, Result};
use crate::exact_solutions::Geometry;
use crate::sphere_basis::QuadratureRule;

/// Solves a tridiagonal system with the Thomas algorithm. `lower[i]` couples
/// row `i + 1` to column `i`, `upper[i]` couples row `i` to column `i + 1`.
pub fn solve_tridiagonal(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if rhs.len() != n || lower.len() + 1 != n.max(1) || upper.len() + 1 != n.max(1) {
        return Err(Error::InvalidArgument("tridiagonal system has inconsistent sizes".into()));
    }
    let scale = diag.iter().chain(lower).chain(upper).fold(0.0f64, |m, v| m.max(v.abs()));
    let mut c = vec![0.0; n];
    let mut y = vec![0.0; n];
    let mut prev_c = 0.0;
    let mut prev_y = 0.0;
    for i in 0..n {
        let sub = if i == 0 { 0.0 } else { lower[i - 1] };
        let pivot = diag[i] - sub * prev_c;
        if !(pivot.abs() > 1e-14 * scale) {
            return Err(Error::Singular(format!("tridiagonal pivot {pivot:e} at row {i}")));
        }
        c[i] = if i + 1 < n { upper[i] / pivot } else { 0.0 };
        y[i] = (rhs[i] - sub * prev_y) / pivot;
        prev_c = c[i];
        prev_y = y[i];
    }
    for i in (0..n.saturating_sub(1)).rev() {
        y[i] -= c[i] * y[i + 1];
    }
    Ok(y)
}

/// One row of a grid-refinement study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub h: f64,
    pub max_error: f64,
    /// `ln(e_prev / e) / ln(h_prev / h)`, absent on the first row.
    pub observed_order: Option<f64>,
}

/// Fills in `observed_order` for rows given in refinement order.
pub fn with_observed_orders(rows: &mut [ConvergenceRow]) {
    for i in 1..rows.len() {
        let (prev, cur) = (rows[i - 1], rows[i]);
        rows[i].observed_order = Some((prev.max_error / cur.max_error).ln() / (prev.h / cur.h).ln());
    }
}

/// `(sum_i u(x + h e_i) + u(x - h e_i) - 2d u(x)) / h^2`. With a shell given,
/// the ball of radius `h sqrt(d)` around `x` must lie inside it.
pub fn discrete_laplacian_residual<F>(u: F, x: &[f64], h: f64, shell: Option<&Geometry>) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let d = x.len();
    if !(h > 0.0) {
        return Err(Error::InvalidArgument(format!("stencil step must be positive, got {h}")));
    }
    if let Some(geom) = shell {
        crate::error::check_same_dim(geom.d, d)?;
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let reach = h * (d as f64).sqrt();
        if r - reach <= geom.r0 || r + reach >= geom.outer() {
            return Err(Error::OutsideShell {
                radius: r,
                inner: geom.r0 + reach,
                outer: geom.outer() - reach,
            });
        }
    }
    let center = u(x)?;
    let mut probe = x.to_vec();
    let mut total = -2.0 * d as f64 * center;
    for i in 0..d {
        probe[i] = x[i] + h;
        total += u(&probe)?;
        probe[i] = x[i] - h;
        total += u(&probe)?;
        probe[i] = x[i];
    }
    Ok(total / (h * h))
}

/// `r^{d-1} sum_j w_j xi_j . grad u(r xi_j)`, the outward flux through the
/// sphere of radius `r`.
pub fn flux_integral<G>(grad: G, r: f64, rule: &QuadratureRule) -> Result<f64>
where
    G: Fn(&[f64]) -> Result<Vec<f64>>,
{
    let d = rule.dim();
    let mut total = 0.0;
    let mut x = vec![0.0; d];
    for (p, w) in rule.nodes().iter().zip(rule.weights()) {
        for (xi, c) in x.iter_mut().zip(p.cartesian()) {
            *xi = r * c;
        }
        let g = grad(&x)?;
        let normal: f64 = g.iter().zip(p.cartesian()).map(|(a, b)| a * b).sum();
        total += w * normal;
    }
    Ok(r.powi(d as i32 - 1) * total)
}

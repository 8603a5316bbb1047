//! Five-point finite differences for Laplace's equation on a 2-D annulus.
//!
//! The periodic second difference in `theta` is diagonalised by a DFT, which
//! leaves one real tridiagonal radial system per Fourier mode. This is a
//! direct solve of the full five-point system, not an approximation to it.

use super::solve_tridiagonal;
use crate::error::{Error, Result};
use crate::exact_solutions::{Geometry, Problem};
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use std::f64::consts::PI;

/// `n_r` radial intervals and `n_theta` angular nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolarGrid {
    pub n_r: usize,
    pub n_theta: usize,
}

impl PolarGrid {
    pub fn new(n_r: usize, n_theta: usize) -> Result<Self> {
        if n_r < 8 || n_theta < 4 || !n_theta.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "polar grid needs n_r >= 8 and even n_theta >= 4, got {n_r} x {n_theta}"
            )));
        }
        Ok(Self { n_r, n_theta })
    }

    /// Angles `2 pi j / n_theta` at which outer data is sampled.
    pub fn angles(&self) -> Vec<f64> {
        (0..self.n_theta)
            .map(|j| 2.0 * PI * j as f64 / self.n_theta as f64)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolarSolution {
    pub radii: Vec<f64>,
    pub angles: Vec<f64>,
    /// `values[i][j]` is `u(radii[i], angles[j])`.
    pub values: Vec<Vec<f64>>,
    /// Superposition constant `C` (perfect problem only).
    pub inner_constant: Option<f64>,
}

impl PolarSolution {
    /// Largest `|u_h - f|` over all nodes, `f` taking Cartesian points.
    pub fn max_nodal_error<F>(&self, f: F) -> Result<f64>
    where
        F: Fn(&[f64]) -> Result<f64>,
    {
        let mut worst = 0.0f64;
        for (r, row) in self.radii.iter().zip(&self.values) {
            for (t, u) in self.angles.iter().zip(row) {
                worst = worst.max((u - f(&[r * t.cos(), r * t.sin()])?).abs());
            }
        }
        Ok(worst)
    }
}

#[derive(Debug, Clone, Copy)]
enum Inner {
    Neumann,
    Dirichlet(f64),
}

/// One radial system `w'' + w'/r - mu w / r^2 = 0` on the grid radii.
fn mode_solve(radii: &[f64], h: f64, mu: f64, inner: Inner, outer: f64) -> Result<Vec<f64>> {
    let n = radii.len() - 1;
    let first = match inner {
        Inner::Neumann => 0,
        Inner::Dirichlet(_) => 1,
    };
    let size = n - first;
    let mut lower = vec![0.0; size - 1];
    let mut diag = vec![0.0; size];
    let mut upper = vec![0.0; size - 1];
    let mut rhs = vec![0.0; size];
    for (row, i) in (first..n).enumerate() {
        let r = radii[i];
        let west = 1.0 / (h * h) - 1.0 / (2.0 * r * h);
        let east = 1.0 / (h * h) + 1.0 / (2.0 * r * h);
        diag[row] = -2.0 / (h * h) - mu / (r * r);
        if i == 0 {
            upper[0] = west + east;
            continue;
        }
        if row > 0 {
            lower[row - 1] = west;
        } else if let Inner::Dirichlet(v) = inner {
            rhs[row] -= west * v;
        }
        if i + 1 < n {
            upper[row] = east;
        } else {
            rhs[row] -= east * outer;
        }
    }
    let solved = solve_tridiagonal(&lower, &diag, &upper, &rhs)?;
    let mut out = Vec::with_capacity(n + 1);
    if let Inner::Dirichlet(v) = inner {
        out.push(v);
    }
    out.extend(solved);
    out.push(outer);
    Ok(out)
}

fn inner_slope(w: &[f64], h: f64) -> f64 {
    (-3.0 * w[0] + 4.0 * w[1] - w[2]) / (2.0 * h)
}

/// Solves either shell problem on an annulus, `phi_samples[j]` being the
/// outer data at `grid.angles()[j]`.
///
/// The perfect problem is solved as `w0 + C w1` with `w0` grounded inside,
/// `w1` equal to one inside and zero outside, and `C` chosen so that the
/// second-order one-sided inner flux of the sum vanishes.
pub fn polar_laplace_solve_2d(
    geom: &Geometry,
    phi_samples: &[f64],
    problem: Problem,
    grid: PolarGrid,
) -> Result<PolarSolution> {
    if geom.d != 2 {
        return Err(Error::Dimension(geom.d));
    }
    if phi_samples.len() != grid.n_theta {
        return Err(Error::InvalidArgument(format!(
            "expected {} outer samples, got {}",
            grid.n_theta,
            phi_samples.len()
        )));
    }
    let (n_r, n_t) = (grid.n_r, grid.n_theta);
    let h = geom.eps / n_r as f64;
    let mut radii: Vec<f64> = (0..=n_r).map(|i| geom.r0 + i as f64 * h).collect();
    radii[n_r] = geom.outer();
    let dtheta = 2.0 * PI / n_t as f64;

    let mut planner = FftPlanner::<f64>::new();
    let mut spectrum: Vec<Complex<f64>> = phi_samples.iter().map(|&v| Complex::new(v, 0.0)).collect();
    planner.plan_fft_forward(n_t).process(&mut spectrum);

    let inner = match problem {
        Problem::Insulated => Inner::Neumann,
        Problem::Perfect => Inner::Dirichlet(0.0),
    };
    // modes[m][i]
    let mut modes = Vec::with_capacity(n_t);
    for (m, coef) in spectrum.iter().enumerate() {
        let mu = (2.0 * (PI * m as f64 / n_t as f64).sin() / dtheta).powi(2);
        let re = mode_solve(&radii, h, mu, inner, coef.re)?;
        let im = mode_solve(&radii, h, mu, inner, coef.im)?;
        modes.push((re, im));
    }

    let inner_constant = match problem {
        Problem::Insulated => None,
        Problem::Perfect => {
            let unit = mode_solve(&radii, h, 0.0, Inner::Dirichlet(1.0), 0.0)?;
            let grounded = &modes[0].0;
            let c = -inner_slope(grounded, h) / n_t as f64 / inner_slope(&unit, h);
            for (g, w) in modes[0].0.iter_mut().zip(&unit) {
                *g += c * n_t as f64 * w;
            }
            Some(c)
        }
    };

    let inverse = planner.plan_fft_inverse(n_t);
    let mut values = Vec::with_capacity(n_r + 1);
    let mut buffer = vec![Complex::new(0.0, 0.0); n_t];
    for i in 0..=n_r {
        for (slot, (re, im)) in buffer.iter_mut().zip(&modes) {
            *slot = Complex::new(re[i], im[i]);
        }
        inverse.process(&mut buffer);
        values.push(buffer.iter().map(|z| z.re / n_t as f64).collect());
    }
    Ok(PolarSolution {
        radii,
        angles: grid.angles(),
        values,
        inner_constant,
    })
}

//! Finite-difference solves of the radial mode equation
//! `f'' + (d-1)/r f' - k(k+d-2)/r^2 f = 0` on `[r0, r0 + eps]`.

use super::{solve_tridiagonal, with_observed_orders, ConvergenceRow};
use crate::error::{check_dim, Error, Result};
use crate::exact_solutions::{inner_unit_potential, insulated_mode, one_minus_ratio_pow, perfect_mode, Geometry};

/// Uniform nodes `r0 + i h`, `i = 0..=n+1`, with `n` interior nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    pub n: usize,
    pub r_nodes: Vec<f64>,
    pub h: f64,
}

impl RadialGrid {
    pub fn new(r0: f64, eps: f64, n: usize) -> Result<Self> {
        if !(r0 > 0.0 && eps > 0.0) || n == 0 {
            return Err(Error::InvalidArgument(format!(
                "radial grid needs r0 > 0, eps > 0, n > 0; got r0={r0}, eps={eps}, n={n}"
            )));
        }
        let h = eps / (n + 1) as f64;
        let mut r_nodes: Vec<f64> = (0..=n + 1).map(|i| r0 + i as f64 * h).collect();
        r_nodes[n + 1] = r0 + eps;
        Ok(Self { n, r_nodes, h })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerBc {
    /// `f'(r0) = 0`, the insulated condition.
    NeumannZero,
    DirichletZero,
    DirichletOne,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeBvpSpec {
    pub d: usize,
    pub k: usize,
    pub r0: f64,
    pub eps: f64,
    pub inner_bc: InnerBc,
    pub outer_value: f64,
}

impl ModeBvpSpec {
    fn geometry(&self) -> Result<Geometry> {
        check_dim(self.d)?;
        Geometry::new(self.d, self.r0, self.eps)
    }
}

/// Sampled profile on the nodes of a [`RadialGrid`], boundary nodes included.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    pub r: Vec<f64>,
    pub f: Vec<f64>,
}

/// Second-order centred differences. The Neumann condition uses a ghost
/// node `f_{-1} = f_1`.
pub fn radial_bvp_solve(spec: &ModeBvpSpec, grid: &RadialGrid) -> Result<RadialProfile> {
    spec.geometry()?;
    if grid.n < 8 {
        return Err(Error::InvalidArgument(format!("radial grid needs n >= 8, got {}", grid.n)));
    }
    let (h, n) = (grid.h, grid.n);
    if (grid.r_nodes[0] - spec.r0).abs() > 1e-12 * spec.r0
        || (grid.r_nodes[n + 1] - spec.r0 - spec.eps).abs() > 1e-12 * spec.r0
    {
        return Err(Error::InvalidArgument("radial grid does not span the shell".into()));
    }
    let c = (spec.k * (spec.k + spec.d - 2)) as f64;
    let dm1 = (spec.d - 1) as f64;
    let row = |r: f64| {
        let west = 1.0 / (h * h) - dm1 / (2.0 * r * h);
        let centre = -2.0 / (h * h) - c / (r * r);
        let east = 1.0 / (h * h) + dm1 / (2.0 * r * h);
        (west, centre, east)
    };

    let first = match spec.inner_bc {
        InnerBc::NeumannZero => 0,
        _ => 1,
    };
    let size = n + 1 - first;
    let mut lower = vec![0.0; size - 1];
    let mut diag = vec![0.0; size];
    let mut upper = vec![0.0; size - 1];
    let mut rhs = vec![0.0; size];
    for (row_idx, i) in (first..=n).enumerate() {
        let (west, centre, east) = row(grid.r_nodes[i]);
        diag[row_idx] = centre;
        if i == 0 {
            upper[0] = west + east;
            continue;
        }
        if row_idx > 0 {
            lower[row_idx - 1] = west;
        } else {
            let inner = if spec.inner_bc == InnerBc::DirichletOne { 1.0 } else { 0.0 };
            rhs[row_idx] -= west * inner;
        }
        if i < n {
            upper[row_idx] = east;
        } else {
            rhs[row_idx] -= east * spec.outer_value;
        }
    }
    let interior = solve_tridiagonal(&lower, &diag, &upper, &rhs)?;
    let mut f = Vec::with_capacity(n + 2);
    match spec.inner_bc {
        InnerBc::NeumannZero => {}
        InnerBc::DirichletZero => f.push(0.0),
        InnerBc::DirichletOne => f.push(1.0),
    }
    f.extend(interior);
    f.push(spec.outer_value);
    Ok(RadialProfile {
        r: grid.r_nodes.clone(),
        f,
    })
}

/// Exact solution of the same boundary value problem, from the rescaled
/// closed forms.
pub fn closed_form_profile(spec: &ModeBvpSpec, r: f64) -> Result<f64> {
    let geom = spec.geometry()?;
    let r = geom.check_radius(r)?;
    let k = spec.k;
    Ok(match spec.inner_bc {
        InnerBc::NeumannZero => spec.outer_value * insulated_mode(&geom, k, r).0,
        InnerBc::DirichletZero if k == 0 => spec.outer_value * (1.0 - inner_unit_potential(&geom, r).0),
        InnerBc::DirichletZero => spec.outer_value * perfect_mode(&geom, k, r).0,
        InnerBc::DirichletOne => {
            let from_outer = if k == 0 {
                1.0 - inner_unit_potential(&geom, r).0
            } else {
                perfect_mode(&geom, k, r).0
            };
            let from_inner = if k == 0 {
                inner_unit_potential(&geom, r).0
            } else {
                // (r0/r)^q (1 - (r/R)^p) / (1 - (r0/R)^p)
                let q = (spec.d + k - 2) as f64;
                let p = (spec.d + 2 * k - 2) as f64;
                let outer = geom.outer();
                (spec.r0 / r).powf(q) * one_minus_ratio_pow(r, outer, p)
                    / one_minus_ratio_pow(spec.r0, outer, p)
            };
            spec.outer_value * from_outer + from_inner
        }
    })
}

/// Max nodal error against [`closed_form_profile`] for each `n` in `ns`.
pub fn convergence_study(spec: &ModeBvpSpec, ns: &[usize]) -> Result<Vec<ConvergenceRow>> {
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let grid = RadialGrid::new(spec.r0, spec.eps, n)?;
        let profile = radial_bvp_solve(spec, &grid)?;
        let mut max_error = 0.0f64;
        for (r, f) in profile.r.iter().zip(&profile.f) {
            max_error = max_error.max((f - closed_form_profile(spec, *r)?).abs());
        }
        rows.push(ConvergenceRow {
            n,
            h: grid.h,
            max_error,
            observed_order: None,
        });
    }
    with_observed_orders(&mut rows);
    Ok(rows)
}

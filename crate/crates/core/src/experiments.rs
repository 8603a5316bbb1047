//! Gap sweeps of the gradient supremum, power-law fits and the Taylor
//! expansions behind the blow-up rate.
//!
//! The supremum of `|grad u|` is estimated on a tensor grid of equally spaced
//! radii times the nodes of a sphere rule, so it is a lower bound for the
//! true supremum. The angular sums at the rule nodes do not depend on the gap
//! and are computed once per sweep.

use crate::boundary_data::{expand_auto, BoundaryFunction, ExpansionCoefficients};
use crate::error::{check_dim, Error, Result};
use crate::exact_solutions::{
    rho, AngularSums, Geometry, InsulatedSolution, PerfectSolution, Problem, SeriesSolution,
    ShellPotential,
};
use crate::sphere_basis::{build_quadrature, BasisSpec, QuadratureRule};
use rayon::prelude::*;

pub const DEFAULT_EPS_LIST: [f64; 5] = [0.2, 0.1, 0.05, 0.025, 0.0125];
pub const DEFAULT_RADIAL_SAMPLES: usize = 33;
pub const DEFAULT_SWEEP_DEGREE: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub eps: f64,
    pub sup_grad: f64,
    pub c0: Option<f64>,
    pub m: usize,
    pub sample_count: usize,
    /// Radius at which the sampled supremum is attained.
    pub argmax_radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub exponent: f64,
    pub intercept: f64,
    pub max_log_residual: f64,
}

/// Sampled supremum of `|grad u|` and where it was found.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradientSup {
    pub value: f64,
    pub radius: f64,
}

/// Angular sums at every node of `rule`.
pub fn angular_sums_on(coeffs: &ExpansionCoefficients, rule: &QuadratureRule) -> Result<Vec<AngularSums>> {
    rule.nodes()
        .par_iter()
        .map(|xi| AngularSums::new(coeffs, xi))
        .collect()
}

fn sup_over_grid<S: ShellPotential + ?Sized>(
    sol: &S,
    sums: &[AngularSums],
    radial_samples: usize,
) -> Result<GradientSup> {
    if radial_samples < 3 {
        return Err(Error::InvalidArgument(format!(
            "need at least 3 radial samples, got {radial_samples}"
        )));
    }
    let geom = sol.geometry();
    let mut best = GradientSup { value: 0.0, radius: geom.r0 };
    for j in 0..radial_samples {
        let r = if j + 1 == radial_samples {
            geom.outer()
        } else {
            geom.r0 + j as f64 * geom.eps / (radial_samples - 1) as f64
        };
        for s in sums {
            let g = sol.gradient_from_sums(r, s);
            let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm > best.value {
                best = GradientSup { value: norm, radius: r };
            }
        }
    }
    Ok(best)
}

/// `max |grad u|` over `{r0 + j eps / (radial_samples - 1)} x rule.nodes()`.
pub fn sup_grad<S: ShellPotential + ?Sized>(
    sol: &S,
    radial_samples: usize,
    rule: &QuadratureRule,
) -> Result<GradientSup> {
    let sums = angular_sums_on(sol.coefficients(), rule)?;
    sup_over_grid(sol, &sums, radial_samples)
}

/// Everything that defines one gap sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub problem: Problem,
    pub d: usize,
    pub r0: f64,
    pub phi: BoundaryFunction,
    pub eps_list: Vec<f64>,
    pub m: usize,
    pub radial_samples: usize,
    /// Exactness degree of the sampling rule; `None` picks `max(2m, 8)`.
    pub sample_degree: Option<usize>,
}

impl SweepConfig {
    pub fn new(problem: Problem, d: usize, phi: BoundaryFunction) -> Self {
        Self {
            problem,
            d,
            r0: 1.0,
            phi,
            eps_list: DEFAULT_EPS_LIST.to_vec(),
            m: DEFAULT_SWEEP_DEGREE,
            radial_samples: DEFAULT_RADIAL_SAMPLES,
            sample_degree: None,
        }
    }

    fn validate(&self) -> Result<()> {
        check_dim(self.d)?;
        self.phi.validate(self.d)?;
        if self.eps_list.len() < 3 {
            return Err(Error::InvalidArgument(format!(
                "a sweep needs at least 3 gaps, got {}",
                self.eps_list.len()
            )));
        }
        if self.eps_list.windows(2).any(|w| !(w[1] < w[0])) {
            return Err(Error::InvalidArgument("gaps must be strictly decreasing".into()));
        }
        Ok(())
    }
}

/// One row per gap, in the order of `eps_list`.
///
/// `phi` is a function of the direction only, so its expansion does not
/// depend on the gap and is computed once.
pub fn epsilon_sweep(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    config.validate()?;
    let spec = BasisSpec::new(config.d, config.m)?;
    let (coeffs, expansion_rule) = expand_auto(&config.phi, spec)?;
    let sample_rule = build_quadrature(config.d, config.sample_degree.unwrap_or((2 * config.m).max(8)))?;
    let sums = angular_sums_on(&coeffs, &sample_rule)?;
    let base = Geometry::new(config.d, config.r0, config.eps_list[0])?;
    let template = match config.problem {
        Problem::Insulated => SeriesSolution::Insulated(InsulatedSolution::new(base, coeffs)?),
        Problem::Perfect => SeriesSolution::Perfect(PerfectSolution::new(base, coeffs, &expansion_rule)?),
    };
    let sample_count = config.radial_samples * sample_rule.len();
    config
        .eps_list
        .par_iter()
        .map(|&eps| {
            let sol = template.with_eps(eps)?;
            let sup = sup_over_grid(&sol, &sums, config.radial_samples)?;
            Ok(SweepRow {
                eps,
                sup_grad: sup.value,
                c0: sol.c0(),
                m: config.m,
                sample_count,
                argmax_radius: sup.radius,
            })
        })
        .collect()
}

/// Least-squares line through `(ln eps, ln sup_grad)`.
pub fn fit_power_law(rows: &[SweepRow]) -> Result<PowerLawFit> {
    let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.eps, r.sup_grad)).collect();
    fit_power_law_points(&points)
}

/// Least-squares fit of `y = exp(intercept) x^exponent` to positive data.
pub fn fit_power_law_points(points: &[(f64, f64)]) -> Result<PowerLawFit> {
    if points.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "a power-law fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    if let Some(&(x, y)) = points.iter().find(|(x, y)| !(*x > 0.0 && *y > 0.0)) {
        return Err(Error::InvalidArgument(format!(
            "power-law fit needs positive data, got ({x}, {y})"
        )));
    }
    Ok(log_fit(points))
}

fn log_fit(points: &[(f64, f64)]) -> PowerLawFit {
    let n = points.len() as f64;
    let logs: Vec<(f64, f64)> = points.iter().map(|(x, y)| (x.ln(), y.ln())).collect();
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let max_log_residual = logs
        .iter()
        .map(|(x, y)| (y - intercept - exponent * x).abs())
        .fold(0.0, f64::max);
    PowerLawFit {
        exponent,
        intercept,
        max_log_residual,
    }
}

/// Slope of the fit through rows `0..=i`, absent for the first row.
pub fn running_exponents(rows: &[SweepRow]) -> Vec<Option<f64>> {
    (0..rows.len())
        .map(|i| {
            if i == 0 || rows[..=i].iter().any(|r| !(r.sup_grad > 0.0)) {
                return None;
            }
            let points: Vec<(f64, f64)> = rows[..=i].iter().map(|r| (r.eps, r.sup_grad)).collect();
            Some(log_fit(&points).exponent)
        })
        .collect()
}

/// Taylor residuals for one gap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaylorRow {
    pub eps: f64,
    /// `rho_d(r0) - rho_d(r0 + eps)`.
    pub delta1: f64,
    pub delta1_residual: f64,
    pub delta1_order: Option<f64>,
    /// `rho_{4-d-2k}(r0 + eps) - rho_{4-d-2k}(r0)`.
    pub delta2: f64,
    pub delta2_residual: f64,
    pub delta2_order: Option<f64>,
}

/// Orders of the `(delta1, delta2)` remainders from the two smallest gaps,
/// where the higher Taylor terms matter least.
pub fn asymptotic_orders(rows: &[TaylorRow]) -> Option<(f64, f64)> {
    let last = rows.last()?;
    Some((last.delta1_order?, last.delta2_order?))
}

/// Compares the two radial gaps with their first-order Taylor terms,
/// `chi_d r0^{1-d} eps` and `(d+2k-2) r0^{d+2k-3} eps`, and reports the
/// empirical order of the remainders between consecutive gaps.
pub fn taylor_gap_check(d: usize, r0: f64, k: usize, eps_list: &[f64]) -> Result<Vec<TaylorRow>> {
    check_dim(d)?;
    if k == 0 {
        return Err(Error::InvalidArgument("Taylor check needs k >= 1".into()));
    }
    if eps_list.windows(2).any(|w| !(w[1] < w[0])) || eps_list.iter().any(|e| !(*e > 0.0)) {
        return Err(Error::InvalidArgument("gaps must be positive and strictly decreasing".into()));
    }
    let (di, ki) = (d as i64, k as i64);
    let p = (d + 2 * k - 2) as f64;
    let lead1 = if d == 2 { 1.0 / r0 } else { (d - 2) as f64 * r0.powi(1 - d as i32) };
    let lead2 = p * r0.powf(p - 1.0);
    let mut rows: Vec<TaylorRow> = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let delta1 = rho(di, r0)? - rho(di, r0 + eps)?;
        let delta2 = rho(4 - di - 2 * ki, r0 + eps)? - rho(4 - di - 2 * ki, r0)?;
        let mut row = TaylorRow {
            eps,
            delta1,
            delta1_residual: delta1 - lead1 * eps,
            delta1_order: None,
            delta2,
            delta2_residual: delta2 - lead2 * eps,
            delta2_order: None,
        };
        if let Some(prev) = rows.last() {
            let scale = (prev.eps / eps).ln();
            row.delta1_order = Some((prev.delta1_residual / row.delta1_residual).abs().ln() / scale);
            row.delta2_order = Some((prev.delta2_residual / row.delta2_residual).abs().ln() / scale);
        }
        rows.push(row);
    }
    Ok(rows)
}

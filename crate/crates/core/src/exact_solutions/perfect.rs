//! Outer sphere held at `phi`, inner sphere an equipotential at an unknown
//! constant `C0` fixed by zero net flux.

use super::radial::{inner_unit_potential, perfect_mode};
use super::{check_coefficients, Geometry, ShellPotential};
use crate::boundary_data::ExpansionCoefficients;
use crate::error::{check_same_dim, Result};
use crate::sphere_basis::{eval_y, QuadratureRule};

#[derive(Debug, Clone)]
pub struct PerfectSolution {
    geom: Geometry,
    coeffs: ExpansionCoefficients,
    c0: f64,
    mean_weight: f64,
}

impl PerfectSolution {
    /// `rule` is used for the spherical means of the basis functions and
    /// should integrate degree `coeffs.max_degree()` exactly.
    pub fn new(geom: Geometry, coeffs: ExpansionCoefficients, rule: &QuadratureRule) -> Result<Self> {
        check_coefficients(&geom, &coeffs)?;
        let means = sphere_means(&coeffs, rule)?;
        let mut c0 = 0.0;
        let mut mean_weight = 0.0;
        for ((idx, a), mean) in coeffs.iter().zip(&means) {
            c0 += a * mean;
            if idx.degree() > 0 {
                mean_weight += a * mean;
            }
        }
        Ok(Self {
            geom,
            coeffs,
            c0,
            mean_weight,
        })
    }

    /// Same data on another shell. `C0` does not depend on the geometry.
    pub fn with_geometry(&self, geom: Geometry) -> Result<Self> {
        check_coefficients(&geom, &self.coeffs)?;
        Ok(Self {
            geom,
            ..self.clone()
        })
    }

    /// Potential of the inner sphere.
    pub fn c0(&self) -> f64 {
        self.c0
    }

    /// Value of the series with the quadrature means of the `k >= 1`
    /// harmonics set to zero, i.e. the analytically simplified form.
    pub fn eval_dropping_mean_terms(&self, x: &[f64]) -> Result<f64> {
        let (r, xi) = self.geom.polar(x)?;
        let mut total = 0.0;
        for (idx, a) in self.coeffs.iter() {
            total += a * self.mode_profile(idx.degree(), r).0 * eval_y(idx, &xi)?;
        }
        Ok(total)
    }
}

impl ShellPotential for PerfectSolution {
    fn geometry(&self) -> &Geometry {
        &self.geom
    }

    fn coefficients(&self) -> &ExpansionCoefficients {
        &self.coeffs
    }

    fn mode_profile(&self, k: usize, r: f64) -> (f64, f64) {
        perfect_mode(&self.geom, k, r)
    }

    fn mean_profile(&self, r: f64) -> (f64, f64) {
        inner_unit_potential(&self.geom, r)
    }

    fn mean_weight(&self) -> f64 {
        self.mean_weight
    }
}

/// Quadrature spherical means `avg(Y_kl)` in basis order.
pub fn sphere_means(coeffs: &ExpansionCoefficients, rule: &QuadratureRule) -> Result<Vec<f64>> {
    check_same_dim(coeffs.dim(), rule.dim())?;
    let area: f64 = rule.weights().iter().sum();
    coeffs
        .basis()
        .iter()
        .map(|idx| {
            let mut total = 0.0;
            for (p, w) in rule.nodes().iter().zip(rule.weights()) {
                total += w * eval_y(idx, p)?;
            }
            Ok(total / area)
        })
        .collect()
}

/// `C0 = sum_kl a_kl avg(Y_kl)`, equal to the mean of the truncated data.
pub fn perfect_c0(coeffs: &ExpansionCoefficients, rule: &QuadratureRule) -> Result<f64> {
    Ok(sphere_means(coeffs, rule)?
        .iter()
        .zip(coeffs.values())
        .map(|(m, a)| m * a)
        .sum())
}

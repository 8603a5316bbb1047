//! Series solutions of the two conductivity problems on the shell
//! `r0 < |x| < r0 + eps`.
//!
//! Both solutions have the form
//!
//! ```text
//! u(r xi) = sum_k F_k(r) S_k(xi) + G(r) M,    S_k = sum_l a_kl Y_kl(xi)
//! ```
//!
//! with `F_0 = 1`. For the insulated problem `G = 0`. For the perfect
//! problem `G` is the inner-unit potential and `M = sum_{k>=1} a_kl avg(Y_kl)`,
//! which vanishes analytically but is kept as written and computed by
//! quadrature. The gradient is `xi d_r u + (1/r) grad_S u`.

mod insulated;
mod perfect;
mod radial;

pub use insulated::InsulatedSolution;
pub use perfect::{perfect_c0, sphere_means, PerfectSolution};
pub use radial::{
    chi, inner_potential_coeffs_by_solve, insulated_coeffs, insulated_coeffs_by_solve,
    perfect_coeffs, perfect_coeffs_by_solve, perfect_profiles, rho, rho_deriv, solve_2x2,
};
pub(crate) use radial::{inner_unit_potential, insulated_mode, one_minus_ratio_pow, perfect_mode};

use crate::boundary_data::ExpansionCoefficients;
use crate::error::{check_dim, check_same_dim, Error, Result};
use crate::sphere_basis::{surface_area, SpherePoint};
use std::fmt;
use std::str::FromStr;

/// Relative slack when deciding whether a radius lies in the closed shell.
const SHELL_SLACK: f64 = 1e-12;

/// Concentric shell: inner radius `r0`, gap `eps`, dimension `d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    pub d: usize,
    pub r0: f64,
    pub eps: f64,
}

impl Geometry {
    pub fn new(d: usize, r0: f64, eps: f64) -> Result<Self> {
        check_dim(d)?;
        if !(r0 > 0.0 && r0.is_finite()) {
            return Err(Error::InvalidArgument(format!("inner radius must be positive, got {r0}")));
        }
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::InvalidArgument(format!("gap must be positive, got {eps}")));
        }
        Ok(Self { d, r0, eps })
    }

    pub fn outer(&self) -> f64 {
        self.r0 + self.eps
    }

    pub fn with_eps(&self, eps: f64) -> Result<Self> {
        Self::new(self.d, self.r0, eps)
    }

    /// Accepts radii in the closed shell up to a relative `1e-12` slack and
    /// clamps them into `[r0, r0 + eps]`.
    pub fn check_radius(&self, r: f64) -> Result<f64> {
        let outer = self.outer();
        if r >= self.r0 * (1.0 - SHELL_SLACK) && r <= outer * (1.0 + SHELL_SLACK) {
            Ok(r.clamp(self.r0, outer))
        } else {
            Err(Error::OutsideShell {
                radius: r,
                inner: self.r0,
                outer,
            })
        }
    }

    /// Splits `x` into a checked radius and a direction.
    pub fn polar(&self, x: &[f64]) -> Result<(f64, SpherePoint)> {
        check_same_dim(self.d, x.len())?;
        let radius = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let r = self.check_radius(radius)?;
        Ok((r, SpherePoint::from_cartesian(x)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem {
    Insulated,
    Perfect,
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Insulated => "insulated",
            Self::Perfect => "perfect",
        })
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "insulated" => Ok(Self::Insulated),
            "perfect" => Ok(Self::Perfect),
            other => Err(Error::InvalidArgument(format!(
                "unknown problem '{other}', expected insulated or perfect"
            ))),
        }
    }
}

/// Degree-wise angular sums at one direction: `S_k = sum_l a_kl Y_kl(xi)`
/// and `T_k = sum_l a_kl grad_S Y_kl(xi)`. They do not depend on the radius
/// or the gap, so field evaluations on a fixed set of directions can reuse
/// them.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularSums {
    direction: SpherePoint,
    values: Vec<f64>,
    tangential: Vec<Vec<f64>>,
}

impl AngularSums {
    pub fn new(coeffs: &ExpansionCoefficients, xi: &SpherePoint) -> Result<Self> {
        Self::build(coeffs, xi, true)
    }

    fn build(coeffs: &ExpansionCoefficients, xi: &SpherePoint, with_grad: bool) -> Result<Self> {
        let d = coeffs.dim();
        check_same_dim(d, xi.dim())?;
        let degrees = coeffs.max_degree() + 1;
        let mut values = vec![0.0; degrees];
        let mut tangential = if with_grad {
            vec![vec![0.0; d]; degrees]
        } else {
            Vec::new()
        };
        for (idx, a) in coeffs.iter() {
            let k = idx.degree();
            if with_grad {
                let (y, grad) = crate::sphere_basis::eval_y_and_grad(idx, xi)?;
                values[k] += a * y;
                for (t, g) in tangential[k].iter_mut().zip(grad) {
                    *t += a * g;
                }
            } else {
                values[k] += a * crate::sphere_basis::eval_y(idx, xi)?;
            }
        }
        Ok(Self {
            direction: xi.clone(),
            values,
            tangential,
        })
    }

    pub fn direction(&self) -> &SpherePoint {
        &self.direction
    }

    pub fn degree_values(&self) -> &[f64] {
        &self.values
    }
}

/// Common evaluation for both series solutions.
pub trait ShellPotential: Send + Sync {
    fn geometry(&self) -> &Geometry;

    fn coefficients(&self) -> &ExpansionCoefficients;

    /// `(F_k(r), F_k'(r))`.
    fn mode_profile(&self, k: usize, r: f64) -> (f64, f64);

    /// `(G(r), G'(r))`.
    fn mean_profile(&self, _r: f64) -> (f64, f64) {
        (0.0, 0.0)
    }

    /// `M`, the weight of the mean profile.
    fn mean_weight(&self) -> f64 {
        0.0
    }

    fn value_from_sums(&self, r: f64, sums: &AngularSums) -> f64 {
        let modes: f64 = sums
            .values
            .iter()
            .enumerate()
            .map(|(k, s)| self.mode_profile(k, r).0 * s)
            .sum();
        modes + self.mean_profile(r).0 * self.mean_weight()
    }

    fn gradient_from_sums(&self, r: f64, sums: &AngularSums) -> Vec<f64> {
        let xi = sums.direction.cartesian();
        let mut radial = self.mean_profile(r).1 * self.mean_weight();
        let mut grad = vec![0.0; xi.len()];
        for (k, (s, t)) in sums.values.iter().zip(&sums.tangential).enumerate() {
            let (f, df) = self.mode_profile(k, r);
            radial += df * s;
            for (g, tv) in grad.iter_mut().zip(t) {
                *g += f / r * tv;
            }
        }
        for (g, x) in grad.iter_mut().zip(xi) {
            *g += radial * x;
        }
        grad
    }

    /// `u(x)` for `x` in the closed shell.
    fn eval(&self, x: &[f64]) -> Result<f64> {
        let (r, xi) = self.geometry().polar(x)?;
        let sums = AngularSums::build(self.coefficients(), &xi, false)?;
        Ok(self.value_from_sums(r, &sums))
    }

    /// `grad u(x)` for `x` in the closed shell.
    fn grad(&self, x: &[f64]) -> Result<Vec<f64>> {
        let (r, xi) = self.geometry().polar(x)?;
        let sums = AngularSums::new(self.coefficients(), &xi)?;
        Ok(self.gradient_from_sums(r, &sums))
    }

    /// `(u(x), grad u(x))` sharing one angular pass.
    fn eval_with_grad(&self, x: &[f64]) -> Result<(f64, Vec<f64>)> {
        let (r, xi) = self.geometry().polar(x)?;
        let sums = AngularSums::new(self.coefficients(), &xi)?;
        Ok((self.value_from_sums(r, &sums), self.gradient_from_sums(r, &sums)))
    }
}

/// Either solution behind one type.
#[derive(Debug, Clone)]
pub enum SeriesSolution {
    Insulated(InsulatedSolution),
    Perfect(PerfectSolution),
}

impl SeriesSolution {
    pub fn problem(&self) -> Problem {
        match self {
            Self::Insulated(_) => Problem::Insulated,
            Self::Perfect(_) => Problem::Perfect,
        }
    }

    /// Free constant on the inner sphere, perfect problem only.
    pub fn c0(&self) -> Option<f64> {
        match self {
            Self::Insulated(_) => None,
            Self::Perfect(p) => Some(p.c0()),
        }
    }

    /// Same boundary data on a shell with a different gap.
    pub fn with_eps(&self, eps: f64) -> Result<Self> {
        Ok(match self {
            Self::Insulated(s) => Self::Insulated(s.with_geometry(s.geometry().with_eps(eps)?)?),
            Self::Perfect(s) => Self::Perfect(s.with_geometry(s.geometry().with_eps(eps)?)?),
        })
    }

    fn inner(&self) -> &dyn ShellPotential {
        match self {
            Self::Insulated(s) => s,
            Self::Perfect(s) => s,
        }
    }
}

impl ShellPotential for SeriesSolution {
    fn geometry(&self) -> &Geometry {
        self.inner().geometry()
    }

    fn coefficients(&self) -> &ExpansionCoefficients {
        self.inner().coefficients()
    }

    fn mode_profile(&self, k: usize, r: f64) -> (f64, f64) {
        self.inner().mode_profile(k, r)
    }

    fn mean_profile(&self, r: f64) -> (f64, f64) {
        self.inner().mean_profile(r)
    }

    fn mean_weight(&self) -> f64 {
        self.inner().mean_weight()
    }
}

pub(crate) fn check_coefficients(geom: &Geometry, coeffs: &ExpansionCoefficients) -> Result<()> {
    check_same_dim(geom.d, coeffs.dim())
}

/// `a_00 |S^{d-1}|^{-1/2}`, the constant part of both series.
pub fn constant_part(coeffs: &ExpansionCoefficients) -> f64 {
    coeffs.constant_term() / surface_area(coeffs.dim()).sqrt()
}

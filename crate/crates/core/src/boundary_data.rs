//! Boundary data on the outer sphere and its spherical-harmonic expansion.
//!
//! Boundary functions are given as functions of the direction `xi` on the
//! unit sphere; the outer radius only enters through the solution formulas.

use crate::error::{check_same_dim, Error, Result};
use crate::sphere_basis::{enumerate_basis, eval_y, BasisSpec, HarmonicIndex, QuadratureRule, SpherePoint};
use rayon::prelude::*;

/// One Cartesian monomial `coefficient * prod x_i^p` (coordinates 1-based).
#[derive(Debug, Clone, PartialEq)]
pub struct Monomial {
    pub coefficient: f64,
    pub powers: Vec<(usize, u32)>,
}

impl Monomial {
    pub fn degree(&self) -> usize {
        self.powers.iter().map(|&(_, p)| p as usize).sum()
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.powers
            .iter()
            .fold(self.coefficient, |acc, &(i, p)| acc * x[i - 1].powi(p as i32))
    }
}

/// The closed catalog of boundary data.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryFunction {
    Constant(f64),
    /// `xi_i`, 1-based.
    Coordinate(usize),
    Polynomial(Vec<Monomial>),
    /// `exp(xi_i)`, 1-based.
    ExpCoordinate(usize),
    /// `exp(-|xi - center|^2 / width^2)`.
    GaussianBump { center: Vec<f64>, width: f64 },
    /// Values at the nodes of one specific quadrature rule.
    Sampled(Vec<f64>),
}

impl BoundaryFunction {
    /// Checks coordinate indices and parameters against the dimension.
    pub fn validate(&self, d: usize) -> Result<()> {
        let check_index = |i: usize| {
            if i == 0 || i > d {
                Err(Error::BoundaryData(format!(
                    "coordinate index out of range: {i} not in 1..={d}"
                )))
            } else {
                Ok(())
            }
        };
        match self {
            Self::Constant(c) if !c.is_finite() => {
                Err(Error::BoundaryData(format!("constant {c} is not finite")))
            }
            Self::Constant(_) | Self::Sampled(_) => Ok(()),
            Self::Coordinate(i) | Self::ExpCoordinate(i) => check_index(*i),
            Self::Polynomial(terms) => {
                for term in terms {
                    for &(i, _) in &term.powers {
                        check_index(i)?;
                    }
                }
                Ok(())
            }
            Self::GaussianBump { center, width } => {
                check_same_dim(d, center.len())?;
                if *width > 0.0 && width.is_finite() {
                    Ok(())
                } else {
                    Err(Error::BoundaryData(format!("bump width {width} must be positive")))
                }
            }
        }
    }

    /// Value at `xi`. Sampled data can only be read at its own nodes.
    pub fn eval(&self, xi: &SpherePoint) -> Result<f64> {
        let x = xi.cartesian();
        Ok(match self {
            Self::Constant(c) => *c,
            Self::Coordinate(i) => x[*i - 1],
            Self::Polynomial(terms) => terms.iter().map(|t| t.eval(x)).sum(),
            Self::ExpCoordinate(i) => x[*i - 1].exp(),
            Self::GaussianBump { center, width } => {
                let dist_sq: f64 = x.iter().zip(center).map(|(a, b)| (a - b) * (a - b)).sum();
                (-dist_sq / (width * width)).exp()
            }
            Self::Sampled(_) => {
                return Err(Error::BoundaryData(
                    "sampled data has no values off its quadrature nodes".into(),
                ))
            }
        })
    }

    /// Values at every node of `rule`, in node order.
    pub fn values_on(&self, rule: &QuadratureRule) -> Result<Vec<f64>> {
        self.validate(rule.dim())?;
        match self {
            Self::Sampled(values) if values.len() == rule.len() => Ok(values.clone()),
            Self::Sampled(values) => Err(Error::BoundaryData(format!(
                "{} samples for a rule with {} nodes",
                values.len(),
                rule.len()
            ))),
            _ => rule.nodes().iter().map(|p| self.eval(p)).collect(),
        }
    }

    /// Polynomial degree when the function is a polynomial in `xi`.
    pub fn polynomial_degree(&self) -> Option<usize> {
        match self {
            Self::Constant(_) => Some(0),
            Self::Coordinate(_) => Some(1),
            Self::Polynomial(terms) => Some(terms.iter().map(Monomial::degree).max().unwrap_or(0)),
            _ => None,
        }
    }

    /// Quadrature exactness used for coefficients up to degree `m`:
    /// `2 max(m, p)` for polynomial data of degree `p` (coefficients and
    /// `quad(phi^2)` are then exact), `2m + 8` otherwise.
    pub fn required_exactness(&self, m: usize) -> usize {
        match self.polynomial_degree() {
            Some(p) => 2 * p.max(m),
            None => 2 * m + 8,
        }
    }
}

/// Coefficients `a_{kl} = <phi, Y_{k,l}>` for every index of degree `<= m`,
/// in canonical basis order.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionCoefficients {
    d: usize,
    m: usize,
    basis: Vec<HarmonicIndex>,
    values: Vec<f64>,
    quad_exactness: usize,
}

impl ExpansionCoefficients {
    /// Wraps coefficient values listed in canonical order for `spec`.
    pub fn from_values(spec: BasisSpec, values: Vec<f64>, quad_exactness: usize) -> Result<Self> {
        let basis = enumerate_basis(spec);
        if basis.len() != values.len() {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients given, basis (d={}, m={}) has {}",
                values.len(),
                spec.d,
                spec.m,
                basis.len()
            )));
        }
        Ok(Self {
            d: spec.d,
            m: spec.m,
            basis,
            values,
            quad_exactness,
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn max_degree(&self) -> usize {
        self.m
    }

    pub fn quad_exactness(&self) -> usize {
        self.quad_exactness
    }

    pub fn basis(&self) -> &[HarmonicIndex] {
        &self.basis
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, idx: &HarmonicIndex) -> Option<f64> {
        self.basis.iter().position(|b| b == idx).map(|p| self.values[p])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&HarmonicIndex, f64)> {
        self.basis.iter().zip(self.values.iter().copied())
    }

    /// `a_{00}`.
    pub fn constant_term(&self) -> f64 {
        self.values[0]
    }

    /// Same coefficients with the truncation degree lowered to `m`.
    pub fn truncated(&self, m: usize) -> Self {
        let m = m.min(self.m);
        let keep = self.basis.iter().take_while(|b| b.degree() <= m).count();
        Self {
            d: self.d,
            m,
            basis: self.basis[..keep].to_vec(),
            values: self.values[..keep].to_vec(),
            quad_exactness: self.quad_exactness,
        }
    }
}

pub fn expand(
    phi: &BoundaryFunction,
    spec: BasisSpec,
    rule: &QuadratureRule,
) -> Result<ExpansionCoefficients> {
    check_same_dim(spec.d, rule.dim())?;
    let samples = phi.values_on(rule)?;
    let weighted: Vec<f64> = samples.iter().zip(rule.weights()).map(|(f, w)| f * w).collect();
    let basis = enumerate_basis(spec);
    let values = basis
        .par_iter()
        .map(|idx| {
            let mut acc = 0.0;
            for (p, fw) in rule.nodes().iter().zip(&weighted) {
                acc += fw * eval_y(idx, p)?;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(ExpansionCoefficients {
        d: spec.d,
        m: spec.m,
        basis,
        values,
        quad_exactness: rule.exactness_degree(),
    })
}

/// Expands `phi` on a rule built from [`BoundaryFunction::required_exactness`]
/// and returns the rule with the coefficients.
pub fn expand_auto(phi: &BoundaryFunction, spec: BasisSpec) -> Result<(ExpansionCoefficients, QuadratureRule)> {
    phi.validate(spec.d)?;
    let rule = crate::sphere_basis::build_quadrature(spec.d, phi.required_exactness(spec.m))?;
    Ok((expand(phi, spec, &rule)?, rule))
}

/// `phi_m(xi) = sum a_{kl} Y_{k,l}(xi)`.
pub fn reconstruct(coeffs: &ExpansionCoefficients, xi: &SpherePoint) -> Result<f64> {
    check_same_dim(coeffs.d, xi.dim())?;
    coeffs
        .iter()
        .map(|(idx, a)| Ok(a * eval_y(idx, xi)?))
        .sum()
}

/// `max |phi_m - phi|` over the sample points.
pub fn truncation_error(
    coeffs: &ExpansionCoefficients,
    phi: &BoundaryFunction,
    samples: &[SpherePoint],
) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::InvalidArgument("no sample points".into()));
    }
    samples.iter().try_fold(0.0f64, |worst, xi| {
        Ok(worst.max((reconstruct(coeffs, xi)? - phi.eval(xi)?).abs()))
    })
}

/// `sum a_{kl}^2`, the squared L^2 norm of `phi_m`.
pub fn coefficient_energy(coeffs: &ExpansionCoefficients) -> f64 {
    coeffs.values.iter().map(|a| a * a).sum()
}

/// `quad(phi^2)`.
pub fn quadrature_energy(phi: &BoundaryFunction, rule: &QuadratureRule) -> Result<f64> {
    let samples = phi.values_on(rule)?;
    Ok(samples.iter().zip(rule.weights()).map(|(f, w)| w * f * f).sum())
}

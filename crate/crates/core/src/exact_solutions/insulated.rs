//! Outer sphere held at `phi`, zero normal flux on the inner sphere.

use super::radial::insulated_mode;
use super::{check_coefficients, Geometry, ShellPotential};
use crate::boundary_data::ExpansionCoefficients;
use crate::error::Result;

#[derive(Debug, Clone)]
pub struct InsulatedSolution {
    geom: Geometry,
    coeffs: ExpansionCoefficients,
}

impl InsulatedSolution {
    pub fn new(geom: Geometry, coeffs: ExpansionCoefficients) -> Result<Self> {
        check_coefficients(&geom, &coeffs)?;
        Ok(Self { geom, coeffs })
    }

    pub fn with_geometry(&self, geom: Geometry) -> Result<Self> {
        Self::new(geom, self.coeffs.clone())
    }
}

impl ShellPotential for InsulatedSolution {
    fn geometry(&self) -> &Geometry {
        &self.geom
    }

    fn coefficients(&self) -> &ExpansionCoefficients {
        &self.coeffs
    }

    fn mode_profile(&self, k: usize, r: f64) -> (f64, f64) {
        insulated_mode(&self.geom, k, r)
    }
}

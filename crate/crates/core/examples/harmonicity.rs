//! Checks that the series solutions are harmonic with a Cartesian
//! second-difference stencil, and that the flux through concentric spheres
//! vanishes.
//!
//! Run with `cargo run --release --example harmonicity`.

use harmshell::boundary_data::{expand_auto, BoundaryFunction};
use harmshell::exact_solutions::{Geometry, InsulatedSolution, PerfectSolution, ShellPotential};
use harmshell::oracle::{discrete_laplacian_residual, flux_integral};
use harmshell::sphere_basis::BasisSpec;

fn main() -> harmshell::Result<()> {
    let geom = Geometry::new(3, 1.0, 0.5)?;
    let phi = BoundaryFunction::GaussianBump { center: vec![0.0, 0.0, 1.0], width: 0.8 };
    let (coeffs, rule) = expand_auto(&phi, BasisSpec::new(3, 8)?)?;
    let insulated = InsulatedSolution::new(geom, coeffs.clone())?;
    let perfect = PerfectSolution::new(geom, coeffs, &rule)?;
    let x = [0.4, 0.7, 0.8];
    for (name, sol) in [("insulated", &insulated as &dyn ShellPotential), ("perfect", &perfect)] {
        let residuals: Vec<String> = [1e-2, 5e-3, 2.5e-3]
            .iter()
            .map(|&h| discrete_laplacian_residual(|y| sol.eval(y), &x, h, Some(&geom)).map(|v| format!("{v:.3e}")))
            .collect::<Result<_, _>>()?;
        let fluxes: Vec<String> = [1.0, 1.25, 1.5]
            .iter()
            .map(|&r| flux_integral(|y| sol.grad(y), r, &rule).map(|v| format!("{v:+.1e}")))
            .collect::<Result<_, _>>()?;
        println!("{name}: Laplacian residuals {} ; fluxes {}", residuals.join(" "), fluxes.join(" "));
    }
    Ok(())
}

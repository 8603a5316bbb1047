//! Full-field check in two dimensions: a five-point finite-difference solve
//! on the annulus against the series solution, for both problems.
//!
//! Run with `cargo run --release --example polar_oracle`.

use harmshell::boundary_data::{expand_auto, BoundaryFunction, Monomial};
use harmshell::exact_solutions::{Geometry, InsulatedSolution, PerfectSolution, Problem, ShellPotential};
use harmshell::oracle::{polar_laplace_solve_2d, PolarGrid};
use harmshell::sphere_basis::BasisSpec;

fn main() -> harmshell::Result<()> {
    // cos t + 0.3 cos 3t written as a polynomial in x1 = cos t
    let phi = BoundaryFunction::Polynomial(vec![
        Monomial { coefficient: 0.1, powers: vec![(1, 1)] },
        Monomial { coefficient: 1.2, powers: vec![(1, 3)] },
    ]);
    let geom = Geometry::new(2, 1.0, 0.5)?;
    let (coeffs, rule) = expand_auto(&phi, BasisSpec::new(2, 3)?)?;
    let insulated = InsulatedSolution::new(geom, coeffs.clone())?;
    let perfect = PerfectSolution::new(geom, coeffs, &rule)?;
    for n in [64, 128, 256] {
        let grid = PolarGrid::new(n, n)?;
        let samples: Vec<f64> = grid.angles().iter().map(|t| t.cos() + 0.3 * (3.0 * t).cos()).collect();
        for problem in [Problem::Insulated, Problem::Perfect] {
            let fd = polar_laplace_solve_2d(&geom, &samples, problem, grid)?;
            let err = match problem {
                Problem::Insulated => fd.max_nodal_error(|x| insulated.eval(x))?,
                Problem::Perfect => fd.max_nodal_error(|x| perfect.eval(x))?,
            };
            let extra = fd
                .inner_constant
                .map(|c| format!(", C={c:+.2e} vs C0={:+.2e}", perfect.c0()))
                .unwrap_or_default();
            println!("{n}x{n} {problem}: max error {err:.3e}{extra}");
        }
    }
    Ok(())
}

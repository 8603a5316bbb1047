//! The insulated shell solution along a ray and its boundary laws: the data
//! is matched on the outer sphere and the normal derivative vanishes on the
//! inner one.
//!
//! Run with `cargo run --release --example insulated_field`.

use harmshell::boundary_data::{expand_auto, BoundaryFunction};
use harmshell::exact_solutions::{insulated_coeffs, Geometry, InsulatedSolution, ShellPotential};
use harmshell::sphere_basis::BasisSpec;

fn main() -> harmshell::Result<()> {
    let geom = Geometry::new(3, 1.0, 0.1)?;
    let (c1, c2) = insulated_coeffs(&geom, 1)?;
    println!("k=1 constants: c1={c1:.6} c2={c2:.6}");

    let phi = BoundaryFunction::Coordinate(3);
    let (coeffs, _) = expand_auto(&phi, BasisSpec::new(3, 4)?)?;
    let sol = InsulatedSolution::new(geom, coeffs)?;
    println!("   r        u(r e3)        du/dr");
    for j in 0..=4 {
        let r = geom.r0 + geom.eps * j as f64 / 4.0;
        let (u, g) = sol.eval_with_grad(&[0.0, 0.0, r])?;
        println!("{r:.3}  {u:.12}  {:+.3e}", g[2]);
    }

    let bump = BoundaryFunction::GaussianBump { center: vec![0.0, 0.6, 0.8], width: 0.5 };
    let (coeffs, _) = expand_auto(&bump, BasisSpec::new(3, 12)?)?;
    let sol = InsulatedSolution::new(geom, coeffs)?;
    let x = [0.0, 0.6 * 1.05, 0.8 * 1.05];
    println!("Gaussian bump at 1.05 (0, 0.6, 0.8): u={:.10} grad={:?}", sol.eval(&x)?, sol.grad(&x)?);
    Ok(())
}

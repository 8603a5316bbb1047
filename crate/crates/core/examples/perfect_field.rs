//! The perfect-conductor shell solution: the inner potential C0 equals the
//! mean of the data, and the radial derivative at the inner sphere grows like
//! 1/eps.
//!
//! Run with `cargo run --release --example perfect_field`.

use harmshell::boundary_data::{expand_auto, BoundaryFunction, Monomial};
use harmshell::exact_solutions::{Geometry, PerfectSolution, ShellPotential};
use harmshell::sphere_basis::BasisSpec;

fn main() -> harmshell::Result<()> {
    let phi = BoundaryFunction::Polynomial(vec![
        Monomial { coefficient: 2.0, powers: vec![] },
        Monomial { coefficient: 1.0, powers: vec![(3, 1)] },
    ]);
    let (coeffs, rule) = expand_auto(&phi, BasisSpec::new(3, 6)?)?;
    let mean = rule.mean(|p| phi.eval(p).unwrap_or(f64::NAN));
    for eps in [0.2, 0.1, 0.05] {
        let sol = PerfectSolution::new(Geometry::new(3, 1.0, eps)?, coeffs.clone(), &rule)?;
        let u_mid = sol.eval(&[0.0, 0.0, 1.0 + eps / 2.0])?;
        let slope = sol.grad(&[0.0, 0.0, 1.0])?[2];
        println!(
            "eps={eps:<5} C0={:.12} (mean of phi {mean:.12})  u(mid)={u_mid:.9}  du/dr(r0)={slope:.6}  eps*du/dr={:.6}",
            sol.c0(),
            eps * slope
        );
    }
    Ok(())
}

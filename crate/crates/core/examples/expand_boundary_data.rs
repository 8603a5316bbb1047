//! Expands catalog boundary data in spherical harmonics and shows how the
//! truncation error falls with the degree.
//!
//! Run with `cargo run --release --example expand_boundary_data`.

use harmshell::boundary_data::{coefficient_energy, expand_auto, truncation_error, BoundaryFunction, Monomial};
use harmshell::sphere_basis::{build_quadrature, BasisSpec};

fn main() -> harmshell::Result<()> {
    let d = 3;
    let samples = build_quadrature(d, 40)?;

    let quadratic = BoundaryFunction::Polynomial(vec![
        Monomial { coefficient: 1.0, powers: vec![(1, 2)] },
        Monomial { coefficient: -0.5, powers: vec![(2, 1), (3, 1)] },
    ]);
    let (coeffs, _) = expand_auto(&quadratic, BasisSpec::new(d, 4)?)?;
    println!("x1^2 - x2 x3/2, nonzero coefficients:");
    for (idx, a) in coeffs.iter().filter(|(_, a)| a.abs() > 1e-12) {
        println!("  k={} chain={} a={a:+.12}", idx.degree(), idx.chain_label());
    }
    println!("  reconstruction error {:.2e}", truncation_error(&coeffs, &quadratic, samples.nodes())?);

    let smooth = BoundaryFunction::ExpCoordinate(3);
    println!("exp(x3):");
    for m in [3, 6, 9, 12] {
        let (coeffs, _) = expand_auto(&smooth, BasisSpec::new(d, m)?)?;
        println!(
            "  m={m:2}: max error {:.3e}, sum a^2 = {:.15}",
            truncation_error(&coeffs, &smooth, samples.nodes())?,
            coefficient_energy(&coeffs)
        );
    }
    Ok(())
}

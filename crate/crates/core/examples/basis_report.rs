//! Enumerates the harmonic basis for a few dimensions, checks the counts
//! against the closed formula and prints the Gram-matrix residual of the
//! product quadrature rule.
//!
//! Run with `cargo run --release --example basis_report`.

use harmshell::sphere_basis::{
    basis_size, build_quadrature, enumerate_basis, gram_max_residual, harmonic_space_dim, BasisSpec,
};

fn main() -> harmshell::Result<()> {
    for d in 2..=5 {
        let spec = BasisSpec::new(d, 6)?;
        let basis = enumerate_basis(spec);
        let rule = build_quadrature(d, 2 * spec.m)?;
        let dims: Vec<u64> = (0..=spec.m).map(|k| harmonic_space_dim(k, d)).collect::<Result<_, _>>()?;
        println!(
            "d={d}: N_k = {dims:?}, total {} (enumerated {}), {} nodes, Gram residual {:.2e}",
            basis_size(spec)?,
            basis.len(),
            rule.len(),
            gram_max_residual(&basis, &rule)?
        );
    }
    let labels: Vec<String> = enumerate_basis(BasisSpec::new(3, 2)?)
        .iter()
        .map(|idx| format!("({})", idx.chain_label()))
        .collect();
    println!("d=3 ordering up to degree 2: {}", labels.join(" "));
    Ok(())
}

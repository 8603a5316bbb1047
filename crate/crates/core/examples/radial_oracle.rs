//! Solves the radial mode equation by finite differences and compares with
//! the closed-form profiles under grid refinement.
//!
//! Run with `cargo run --release --example radial_oracle`.

use harmshell::oracle::{convergence_study, InnerBc, ModeBvpSpec};

fn main() -> harmshell::Result<()> {
    for inner_bc in [InnerBc::NeumannZero, InnerBc::DirichletZero, InnerBc::DirichletOne] {
        for k in [0, 1, 4] {
            let spec = ModeBvpSpec { d: 3, k, r0: 1.0, eps: 0.1, inner_bc, outer_value: 1.0 };
            let rows = convergence_study(&spec, &[40, 80, 160, 320])?;
            let summary: Vec<String> = rows
                .iter()
                .map(|r| match r.observed_order {
                    Some(p) => format!("n={} err={:.2e} p={p:.3}", r.n, r.max_error),
                    None => format!("n={} err={:.2e}", r.n, r.max_error),
                })
                .collect();
            println!("{inner_bc:?} k={k}: {}", summary.join(", "));
        }
    }
    Ok(())
}

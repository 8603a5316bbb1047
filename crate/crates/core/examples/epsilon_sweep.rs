//! Sweeps the gap for both problems and fits the power law of the sampled
//! gradient supremum: the perfect problem blows up like 1/eps, the insulated
//! one stays bounded.
//!
//! Run with `cargo run --release --example epsilon_sweep`.

use harmshell::boundary_data::BoundaryFunction;
use harmshell::exact_solutions::Problem;
use harmshell::experiments::{epsilon_sweep, fit_power_law, SweepConfig};

fn main() -> harmshell::Result<()> {
    for problem in [Problem::Perfect, Problem::Insulated] {
        let config = SweepConfig::new(problem, 3, BoundaryFunction::Coordinate(3));
        let rows = epsilon_sweep(&config)?;
        println!("{problem}:");
        for row in &rows {
            println!(
                "  eps={:<7} sup|grad u|={:>10.6}  at r={:.4}  ({} samples)",
                row.eps, row.sup_grad, row.argmax_radius, row.sample_count
            );
        }
        let fit = fit_power_law(&rows)?;
        println!("  exponent {:.4}, max log residual {:.3e}", fit.exponent, fit.max_log_residual);
    }
    Ok(())
}

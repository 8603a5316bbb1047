//! Remainders of the first-order Taylor expansions of the two radial gaps
//! that drive the 1/eps rate, with their empirical orders.
//!
//! Run with `cargo run --release --example taylor_residuals`.

use harmshell::experiments::{asymptotic_orders, taylor_gap_check, DEFAULT_EPS_LIST};

fn main() -> harmshell::Result<()> {
    for d in [2, 3] {
        for k in [1, 2] {
            let rows = taylor_gap_check(d, 1.0, k, &DEFAULT_EPS_LIST)?;
            println!("d={d} k={k}");
            for row in &rows {
                println!(
                    "  eps={:<7} R1={:+.4e} R2={:+.4e}",
                    row.eps, row.delta1_residual, row.delta2_residual
                );
            }
            if let Some((o1, o2)) = asymptotic_orders(&rows) {
                println!("  orders on the finest pair: {o1:.3}, {o2:.3}");
            }
        }
    }
    Ok(())
}

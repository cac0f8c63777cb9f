//! Unit-ball volumes, Bessel zeros and Rayleigh–Faber–Krahn constants for
//! N = 2..5, plus the eigenvalue bounds they give.
//!
//! `cargo run --example rfk_table`

use posicert::constants::{liyau_lower, rfk_constant};
use posicert::tables::{format_rfk_table, rfk_rows, DEFAULT_DIMENSIONS};
use posicert::{Interval, Result};

fn main() -> Result<()> {
    print!("{}", format_rfk_table(&rfk_rows(&DEFAULT_DIMENSIONS)?));
    println!();
    println!("lambda_1 lower bounds for |Omega| = 1:");
    for n in DEFAULT_DIMENSIONS {
        let rfk = rfk_constant(n)?;
        let ly = liyau_lower(1, n, Interval::ONE)?;
        println!("  N = {n}: Rayleigh–Faber–Krahn {:.10}   Li–Yau {:.10}", rfk.lo(), ly.lo());
    }
    Ok(())
}

//! Certified enclosures of the first positive zeros of J_0, J_1/2, J_1, J_3/2.
//!
//! `cargo run --example bessel_zeros`

use posicert::special::{first_zero, verify_increasing_on, verify_positive_on, BesselOrder, ZeroCertificate};
use posicert::{Interval, Result};

fn main() -> Result<()> {
    let orders =
        [BesselOrder::Integer(0), BesselOrder::HalfInteger(0), BesselOrder::Integer(1), BesselOrder::HalfInteger(1)];
    for order in orders {
        let z = first_zero(order, 1e-10)?;
        let how = match &z.certificate {
            ZeroCertificate::Analytic { statement } => statement.to_string(),
            ZeroCertificate::SignChange { function, bisections, .. } => {
                format!("sign change of {function} after {bisections} bisections")
            }
        };
        println!("j_{order:<4} in {}  width {:.1e}  ({how})", z.zero, z.zero.width());
    }
    let unit = Interval::new(0.0, 1.0)?;
    println!("J_0 > 0 on [0,1]:        {}", verify_positive_on(0, unit, 16));
    println!("J_1 increasing on [0,1]: {}", verify_increasing_on(1, unit, 16));
    Ok(())
}

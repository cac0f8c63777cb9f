//! Talenti and embedding constants C_p(Omega), and Poincaré constants.
//!
//! `cargo run --example embedding_constants -- 5 3 2`   (p, N, |Omega|)

use posicert::constants::{embedding_const, poincare_c2, DomainSpec, Lambda1Source};
use posicert::tables::{default_embedding_grid, embedding_rows, format_embedding_table};
use posicert::{Interval, Result};

fn main() -> Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    if let [p, n, vol] = args[..] {
        let dom = DomainSpec::new(n as u32, Interval::point(vol), Some(Lambda1Source::RayleighFaberKrahn))?;
        println!("C_{p}(Omega) <= {:.10}", embedding_const(Interval::point(p), &dom)?.hi());
        return Ok(());
    }
    print!("{}", format_embedding_table(&embedding_rows(&default_embedding_grid())?));
    println!();
    println!("C_2(unit square)      <= {:.10}", poincare_c2(&DomainSpec::unit_square())?.hi());
    let disk = DomainSpec::new(2, Interval::ONE, Some(Lambda1Source::RayleighFaberKrahn))?;
    println!("C_2(any |Omega| = 1)  <= {:.10}", poincare_c2(&disk)?.hi());
    Ok(())
}

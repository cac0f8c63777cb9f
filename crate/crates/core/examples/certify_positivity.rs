//! End-to-end positivity test on a small synthetic mesh, and the same
//! problem with a radius too large to conclude anything.
//!
//! `cargo run --example certify_positivity [-- problem.json]`

use std::path::Path;

use posicert::certify::{certify_positivity, text_report, NonlinearityBound};
use posicert::constants::DomainSpec;
use posicert::field::{Cell, CellMesh};
use posicert::formats::load_problem;
use posicert::{Interval, Result};

fn main() -> Result<()> {
    if let Some(path) = std::env::args().nth(1) {
        let p = load_problem(Path::new(&path))?;
        let cert = certify_positivity(&p.mesh, &p.domain, &p.nonlinearity, p.rho, p.q, &p.m_candidates, p.assumptions)?;
        print!("{}", text_report(&cert));
        return Ok(());
    }

    // 4×4 cells on the unit square: a thin positive ring around a plateau.
    let mut cells = Vec::new();
    for ix in 0..4 {
        for iy in 0..4 {
            let ring = ix == 0 || ix == 3 || iy == 0 || iy == 3;
            let (lo, hi) = if ring { (0.03, 0.05) } else { (1.0, 1.0) };
            cells.push(Cell::new(cells.len(), Interval::ratio(1, 16), lo, hi)?);
        }
    }
    let mesh = CellMesh::new(2, cells)?;
    let dom = DomainSpec::unit_square();
    let nl = NonlinearityBound::allen_cahn(Interval::point(10.0))?;
    for rho in [1e-3, 1e3] {
        let cert = certify_positivity(&mesh, &dom, &nl, rho, 2.0, &[1.0 / 16.0], vec![])?;
        println!("--- rho = {rho}");
        print!("{}", text_report(&cert));
    }
    Ok(())
}

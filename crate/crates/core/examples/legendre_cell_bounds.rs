//! Cellwise bounds of a tensor Legendre series and the field bounds built
//! on them.
//!
//! `cargo run --example legendre_cell_bounds`

use posicert::field::{legendre_to_mesh, LegendreField};
use posicert::Result;

fn main() -> Result<()> {
    // û(x, y) = 16 φ₁(x)φ₁(y) − 0.5 φ₂(x)φ₁(y) + 0.25 φ₁(x)φ₃(y)
    let degree = 3;
    let mut coeffs = vec![0.0; degree * degree];
    coeffs[0] = 16.0;
    coeffs[degree] = -0.5;
    coeffs[2] = 0.25;
    for depth in [0, 3, 6] {
        let field = LegendreField::new(degree, coeffs.clone(), [8, 8], depth)?;
        let mesh = legendre_to_mesh(&field)?;
        let widest = mesh.cells().iter().map(|c| c.upper - c.lower).fold(0.0, f64::max);
        println!(
            "depth {depth}: widest cell range {widest:.4}, sup u- <= {:.3e}, |D(1/4)| <= {}, ||u||_L4 <= {:.6}",
            mesh.minus_sup_upper().hi(),
            mesh.dm_vol_upper(0.25).hi(),
            mesh.uhat_norm_upper(4.0)?.hi()
        );
    }
    let field = LegendreField::new(degree, coeffs, [8, 8], 3)?;
    println!("u(0.5, 0.5) in {}", field.eval_point(0.5, 0.5));
    Ok(())
}

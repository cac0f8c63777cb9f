//! Newton–Kantorovich radii from reference α, β pairs, and a Lipschitz
//! bound assembled from embedding constants.
//!
//! `cargo run --example newton_kantorovich`

use posicert::constants::DomainSpec;
use posicert::nk::{lipschitz_bound, next_float_up, nk_radius, radius_from, LipschitzKind, NKInput};
use posicert::text::parse_decimal;
use posicert::{Interval, Result};

fn main() -> Result<()> {
    let rows = [
        ("Lane–Emden, L-shape", "8.61543762e-2", "1.44540578", "1.03811119e-1"),
        ("Allen–Cahn λ=400", "9.87317430e-6", "22.9920922", "1.78014183e-5"),
        ("Lions, L-shape", "6.90573233e-3", "14.9166536", "7.38736922e-3"),
    ];
    for (name, a, b, rho) in rows {
        let r = radius_from(parse_decimal(a)?, parse_decimal(b)?);
        let rho = parse_decimal(rho)?;
        println!(
            "{name:<22} rho in [{:.9e}, {:.9e}]  reference rho admissible: {}",
            r.rho_min.expect("feasible").hi(),
            r.rho_max.lo(),
            r.admits_interval(rho)
        );
    }

    // α, β from operator norms, with an L² residual and r just above 2α.
    let dom = DomainSpec::unit_square();
    let kind = LipschitzKind::AllenCahn { lambda: Interval::point(10.0) };
    let inv_norm = Interval::point(2.0);
    let residual_l2 = Interval::point(1e-4);
    let guess = NKInput::with_l2_residual(inv_norm, residual_l2, Interval::ONE, &dom)?;
    let r = Interval::point(next_float_up(nk_radius(&guess).rho_max.hi()));
    let l = lipschitz_bound(kind, &dom, Interval::point(0.5), r)?;
    let report = nk_radius(&NKInput::with_l2_residual(inv_norm, residual_l2, l, &dom)?);
    println!(
        "L <= {:.6}, alpha*beta <= {:.3e}, feasible: {}",
        l.hi(),
        (report.alpha * report.beta).hi(),
        report.feasible
    );
    Ok(())
}

//! Newton–Kantorovich existence radius and Lipschitz bounds for the
//! Fréchet derivative of the model problems.

use crate::constants::{embedding_const, poincare_c2, DomainSpec};
use crate::error::{domain, Result};
use crate::interval::Interval;

#[derive(Clone, Debug, PartialEq)]
pub struct NKInput {
    /// Upper bound of `‖F′(û)⁻¹‖`.
    pub inv_norm: Interval,
    /// Upper bound of `‖F(û)‖` in the dual norm.
    pub residual: Interval,
    pub lipschitz: Interval,
    pub provenance: String,
}

impl NKInput {
    pub fn new(inv_norm: Interval, residual: Interval, lipschitz: Interval) -> Result<NKInput> {
        for (name, v) in [("inverse norm", inv_norm), ("residual", residual), ("Lipschitz constant", lipschitz)] {
            if !(v.hi() > 0.0 && v.is_certifying()) {
                return domain(format!("{name} {v} must be positive and finite"));
            }
        }
        Ok(NKInput { inv_norm, residual, lipschitz, provenance: "user supplied".into() })
    }

    /// Uses an `L²` residual: `‖F(û)‖_{H⁻¹} ≤ C₂(Ω)·‖F(û)‖_{L²}`.
    pub fn with_l2_residual(
        inv_norm: Interval,
        residual_l2: Interval,
        lipschitz: Interval,
        dom: &DomainSpec,
    ) -> Result<NKInput> {
        let c2 = Interval::point(poincare_c2(dom)?.hi());
        NKInput::new(inv_norm, residual_l2 * c2, lipschitz)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NKReport {
    pub alpha: Interval,
    pub beta: Interval,
    /// `(1 − √(1 − 2αβ))/β`; `None` when infeasible.
    pub rho_min: Option<Interval>,
    /// `2α`, also the uniqueness radius.
    pub rho_max: Interval,
    pub feasible: bool,
}

impl NKReport {
    pub fn uniqueness_radius(&self) -> Interval {
        self.rho_max
    }

    /// Whether `ρ ∈ [ρ₋.hi, 2α.lo]`.
    pub fn admits(&self, rho: f64) -> bool {
        match self.rho_min {
            Some(lo) if self.feasible => lo.hi() <= rho && rho <= self.rho_max.lo(),
            _ => false,
        }
    }

    /// Whether every ρ in the enclosure is admissible.
    pub fn admits_interval(&self, rho: Interval) -> bool {
        self.admits(rho.lo()) && self.admits(rho.hi())
    }
}

/// Radius report from `α = ‖F′⁻¹‖‖F(û)‖` and `β = ‖F′⁻¹‖L`.
pub fn nk_radius(inp: &NKInput) -> NKReport {
    radius_from(inp.inv_norm * inp.residual, inp.inv_norm * inp.lipschitz)
}

/// Radius report from already computed `α`, `β` (upper bounds).
pub fn radius_from(alpha: Interval, beta: Interval) -> NKReport {
    let ab = alpha * beta;
    let rho_max = alpha * 2.0;
    let feasible = ab.hi() <= 0.5;
    let rho_min = feasible.then(|| {
        // 2α/(1 + √(1 − 2αβ)) equals (1 − √(1 − 2αβ))/β without the cancellation.
        let disc = Interval::ONE - ab * 2.0;
        let disc = disc.max(Interval::ZERO);
        let root = disc.sqrt().expect("nonnegative discriminant");
        rho_max.checked_div(Interval::ONE + root).expect("denominator ≥ 1")
    });
    NKReport { alpha, beta, rho_min, rho_max, feasible }
}

/// Smallest double strictly greater than `x`.
pub fn next_float_up(x: f64) -> f64 {
    assert!(x.is_finite(), "next_float_up of {x}");
    x.next_up()
}

/// Nonlinearities with a Lipschitz bound for `f′` on a ball of radius r.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LipschitzKind {
    /// `f(u) = u^p`, p ≥ 2.
    LaneEmden { p: f64 },
    /// `f(u) = λ(u − u³)`.
    AllenCahn { lambda: Interval },
    /// `f(u) = λu(1 − u)(u − a)`.
    Nagumo { lambda: Interval, a: Interval },
    /// `f(u) = λ(u + Au² − Bu³)`.
    Lions { lambda: Interval, a: Interval, b: Interval },
}

impl LipschitzKind {
    /// The `L^s` norm of û the bound needs.
    pub fn norm_exponent(self) -> f64 {
        match self {
            LipschitzKind::LaneEmden { p } => p + 1.0,
            _ => 4.0,
        }
    }
}

fn cube(x: Interval) -> Interval {
    x.sqr() * x
}

/// Upper bound of `L` on the ball `B(û, r)`; `uhat_norm` bounds
/// `‖û‖_{L^s}` with `s` from [`LipschitzKind::norm_exponent`].
pub fn lipschitz_bound(kind: LipschitzKind, dom: &DomainSpec, uhat_norm: Interval, r: Interval) -> Result<Interval> {
    if uhat_norm.lo() < 0.0 || r.lo() < 0.0 {
        return domain(format!("norm {uhat_norm} and radius {r} must be nonnegative"));
    }
    let c4 = || -> Result<Interval> { Ok(Interval::point(embedding_const(Interval::point(4.0), dom)?.hi())) };
    let c3 = || -> Result<Interval> { Ok(Interval::point(embedding_const(Interval::point(3.0), dom)?.hi())) };
    let l = match kind {
        LipschitzKind::LaneEmden { p } => {
            if !(p >= 2.0 && p.is_finite()) {
                return domain(format!("Lane-Emden bound needs p >= 2, got {p}"));
            }
            let cp = Interval::point(embedding_const(Interval::point(p + 1.0), dom)?.hi());
            let base = uhat_norm + cp * r;
            let pw = if p == 2.0 {
                Interval::ONE
            } else if base.hi() == 0.0 {
                Interval::ZERO
            } else {
                base.pow(Interval::point(p - 2.0))?
            };
            Interval::point(p) * (p - 1.0) * cube(cp) * pw
        }
        LipschitzKind::AllenCahn { lambda } => {
            let c4 = c4()?;
            lambda * 6.0 * cube(c4) * (uhat_norm + c4 * r)
        }
        LipschitzKind::Nagumo { lambda, a } => {
            let (c3, c4) = (c3()?, c4()?);
            lambda * ((Interval::ONE + a) * 2.0 * cube(c3) + cube(c4) * 6.0 * (uhat_norm + c4 * r))
        }
        LipschitzKind::Lions { lambda, a, b } => {
            let (c3, c4) = (c3()?, c4()?);
            lambda * (a * 2.0 * cube(c3) + b * 6.0 * cube(c4) * (uhat_norm + c4 * r))
        }
    };
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64) -> Interval {
        Interval::point(x)
    }

    #[test]
    fn infeasible() {
        let r = radius_from(p(1.0), p(1.0));
        assert!(!r.feasible && r.rho_min.is_none() && !r.admits(1.0));
    }

    #[test]
    fn table_rows() {
        let r = radius_from(p(6.90573233e-3), p(14.9166536));
        let lo = r.rho_min.unwrap();
        assert!(lo.contains(7.30357606375e-3) || (lo.mid() - 7.30357606375e-3).abs() < 1e-14);
        assert!(r.admits(7.38736922e-3));
        assert!((r.rho_max.mid() - 1.381146466e-2).abs() < 1e-11);
        let r = radius_from(p(8.61543762e-2), p(1.44540578));
        assert!((r.rho_min.unwrap().mid() - 0.0923130301975).abs() < 1e-12);
        assert!(r.admits(1.03811119e-1));
    }

    #[test]
    fn tiny_beta_gives_alpha() {
        let r = radius_from(p(0.3), p(1e-12));
        assert!((r.rho_min.unwrap().hi() / 0.3 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn next_float() {
        assert_eq!(next_float_up(0.0), f64::from_bits(1));
        assert_eq!(next_float_up(1.0), 1.0 + f64::EPSILON);
        assert!(next_float_up(next_float_up(-3.5)) > next_float_up(-3.5));
    }

    #[test]
    fn lipschitz_examples() {
        let dom = DomainSpec::unit_square();
        let ac = LipschitzKind::AllenCahn { lambda: Interval::ONE };
        let l = lipschitz_bound(ac, &dom, Interval::ONE, Interval::ZERO).unwrap();
        assert!(l.hi() >= 0.19350920659919693 && l.hi() - 0.19350920659919693 < 1e-6);
        assert_eq!(lipschitz_bound(ac, &dom, Interval::ZERO, Interval::ZERO).unwrap().hi(), 0.0);
        let l = lipschitz_bound(LipschitzKind::LaneEmden { p: 3.0 }, &dom, Interval::ZERO, Interval::ZERO).unwrap();
        assert_eq!(l.hi(), 0.0);
        assert!(lipschitz_bound(LipschitzKind::LaneEmden { p: 1.5 }, &dom, Interval::ZERO, Interval::ONE).is_err());
        let kind = LipschitzKind::Lions { lambda: p(10.0), a: p(5.0), b: p(1.0) };
        let small = lipschitz_bound(kind, &dom, p(0.1), p(1e-3)).unwrap();
        let large = lipschitz_bound(kind, &dom, p(0.2), p(1e-3)).unwrap();
        assert!(small.hi() < large.hi());
    }

    #[test]
    fn l2_residual_is_scaled() {
        let dom = DomainSpec::unit_square();
        let inp = NKInput::with_l2_residual(p(2.0), p(1.0), p(1.0), &dom).unwrap();
        assert!(inp.residual.hi() >= 0.225079 && inp.residual.hi() < 0.2251);
        assert!(NKInput::new(Interval::ZERO, p(1.0), p(1.0)).is_err());
    }
}

//! Geometric and functional-analytic constants: unit-ball volumes, the
//! Rayleigh–Faber–Krahn constant, the Li–Yau bound, Talenti's constant and
//! the embedding constants `C_p(Ω)`.

use std::fmt;

use crate::error::{domain, Error, Result};
use crate::interval::{pi, Interval};
use crate::special::{tightest_zero, BesselOrder};

pub const MAX_DIMENSION: u32 = 10;

/// Where a lower bound of λ₁(Ω) comes from, in order of preference.
#[derive(Clone, Debug, PartialEq)]
pub enum Lambda1Source {
    /// A certified lower bound supplied by the caller.
    Lower { value: Interval, source: String },
    /// Ω is a box with these side lengths; λ₁ = Σ π²/ℓᵢ².
    Hyperrectangle(Vec<f64>),
    /// λ₁(Ω) ≥ A_{1,N} |Ω|^{−2/N}.
    RayleighFaberKrahn,
}

impl fmt::Display for Lambda1Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lambda1Source::Lower { value, source } => write!(f, "user lower bound {value} ({source})"),
            Lambda1Source::Hyperrectangle(sides) => write!(f, "exact box eigenvalue, sides {sides:?}"),
            Lambda1Source::RayleighFaberKrahn => write!(f, "Rayleigh-Faber-Krahn bound"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DomainSpec {
    pub dimension: u32,
    /// Encloses |Ω|.
    pub volume: Interval,
    pub lambda1: Option<Lambda1Source>,
}

impl DomainSpec {
    pub fn new(dimension: u32, volume: Interval, lambda1: Option<Lambda1Source>) -> Result<DomainSpec> {
        if !(2..=MAX_DIMENSION).contains(&dimension) {
            return domain(format!("dimension {dimension} outside 2..={MAX_DIMENSION}"));
        }
        if !(volume.is_positive() && volume.is_certifying()) {
            return domain(format!("domain volume {volume} must be positive and finite"));
        }
        match &lambda1 {
            Some(Lambda1Source::Lower { value, .. }) if !value.is_positive() => {
                return domain(format!("lambda1 lower bound {value} must be positive"));
            }
            Some(Lambda1Source::Hyperrectangle(sides)) => {
                if sides.len() != dimension as usize || sides.iter().any(|s| !(*s > 0.0 && s.is_finite())) {
                    return domain(format!("hyperrectangle sides {sides:?} do not match dimension {dimension}"));
                }
            }
            _ => {}
        }
        Ok(DomainSpec { dimension, volume, lambda1 })
    }

    /// The box `∏ (0, ℓᵢ)` with its exact first eigenvalue.
    pub fn hyperrectangle(sides: &[f64]) -> Result<DomainSpec> {
        let volume = sides.iter().fold(Interval::ONE, |v, &s| v * s);
        DomainSpec::new(sides.len() as u32, volume, Some(Lambda1Source::Hyperrectangle(sides.to_vec())))
    }

    pub fn unit_square() -> DomainSpec {
        DomainSpec::hyperrectangle(&[1.0, 1.0]).expect("unit square is valid")
    }
}

fn check_dimension(n: u32, max: u32) -> Result<()> {
    if !(2..=max).contains(&n) {
        return domain(format!("dimension {n} outside 2..={max}"));
    }
    Ok(())
}

/// `2/N` as an interval (a point when exact).
fn two_over(n: u32) -> Interval {
    Interval::ratio(2, n as i64)
}

/// `π^{N/2} / Γ(N/2 + 1)`.
pub fn unit_ball_volume(n: u32) -> Result<Interval> {
    check_dimension(n, MAX_DIMENSION)?;
    let pi_pow =
        if n.is_multiple_of(2) { pi().powi((n / 2) as i32)? } else { pi().powi((n / 2) as i32)? * pi().sqrt()? };
    pi_pow.checked_div(Interval::point(n as f64 / 2.0 + 1.0).gamma()?)
}

/// `A_{1,N} = B_N^{2/N} j²_{N/2−1,1}`.
pub fn rfk_constant(n: u32) -> Result<Interval> {
    check_dimension(n, 5)?;
    let b = unit_ball_volume(n)?;
    let j = tightest_zero(BesselOrder::for_dimension(n)?)?.zero;
    Ok(b.pow(two_over(n))? * j.sqr())
}

/// Li–Yau: `λ_k(Ω) ≥ 4π²N/(N+2) · (k/(B_N|Ω|))^{2/N}`; the `lo` endpoint is
/// the usable bound.
pub fn liyau_lower(k: u32, n: u32, volume: Interval) -> Result<Interval> {
    check_dimension(n, MAX_DIMENSION)?;
    if k == 0 {
        return domain("eigenvalue index k must be ≥ 1");
    }
    if !volume.is_positive() {
        return domain(format!("volume {volume} must be positive"));
    }
    let nf = n as f64;
    let lead = (pi().sqr() * (4.0 * nf)).checked_div(Interval::point(nf + 2.0))?;
    let base = Interval::point(k as f64).checked_div(unit_ball_volume(n)? * volume)?;
    Ok(lead * base.pow(two_over(n))?)
}

/// Whether `p` lies in Talenti's range for dimension N.
pub fn talenti_admissible(p: Interval, n: u32) -> bool {
    let nf = n as f64;
    if n == 2 {
        p.lo() > 2.0 && p.hi().is_finite()
    } else {
        p.lo() > nf / (nf - 1.0) && p.hi() <= 2.0 * nf / (nf - 2.0)
    }
}

/// Talenti's constant
/// `T_{p,N} = π^{−1/2} N^{−1/q} ((q−1)/(N−q))^{1−1/q}
///   {Γ(1+N/2)Γ(N) / (Γ(N/q)Γ(1+N−N/q))}^{1/N}` with `q = Np/(N+p)`.
pub fn talenti(p: Interval, n: u32) -> Result<Interval> {
    check_dimension(n, MAX_DIMENSION)?;
    if !talenti_admissible(p, n) {
        return domain(format!("exponent p = {p} outside the admissible range for N = {n}"));
    }
    // With q = pN/(p+N): 1/q = 1/p + 1/N, N/q = 1 + N/p, N + 1 − N/q = N − N/p
    // and (q−1)/(N−q) = (p(N−1) − N)/N², which keeps integer data exact.
    let nn = Interval::point(n as f64);
    let n_over_p = nn.checked_div(p)?;
    let inv_q = p.recip()? + nn.recip()?;
    let one_minus_inv_q = Interval::ONE - inv_q;
    let ratio = (p * (n as f64 - 1.0) - nn).checked_div(nn.sqr())?;
    let gammas = (Interval::point(1.0 + n as f64 / 2.0).gamma()? * nn.gamma()?)
        .checked_div((n_over_p + 1.0).gamma()? * (nn - n_over_p).gamma()?)?;
    let t = pi().sqrt()?.recip()?
        * nn.pow(-inv_q)?
        * ratio.pow(one_minus_inv_q)?
        * gammas.pow(Interval::ONE.checked_div(nn)?)?;
    Ok(t)
}

/// `C_p(Ω) = |Ω|^{1/N+1/p−1/2} T_{p,N}`; the `hi` endpoint is the usable bound.
pub fn embedding_const(p: Interval, dom: &DomainSpec) -> Result<Interval> {
    if p.contains(2.0) {
        return domain("p = 2 is not covered by Talenti's constant; use poincare_c2");
    }
    let t = talenti(p, dom.dimension)?;
    Ok(dom.volume.pow(volume_exponent(p, dom.dimension)?)? * t)
}

/// `1/N + 1/p − 1/2`.
pub fn volume_exponent(p: Interval, n: u32) -> Result<Interval> {
    Ok(Interval::ratio(1, n as i64) + p.recip()? - 0.5)
}

/// A certified lower bound of λ₁(Ω) following the source hierarchy.
pub fn lambda1_lower(dom: &DomainSpec) -> Result<Interval> {
    match &dom.lambda1 {
        Some(Lambda1Source::Lower { value, .. }) => Ok(*value),
        Some(Lambda1Source::Hyperrectangle(sides)) => {
            let pi2 = pi().sqr();
            let mut sum = Interval::ZERO;
            for &s in sides {
                sum += pi2.checked_div(Interval::point(s).sqr())?;
            }
            Ok(sum)
        }
        Some(Lambda1Source::RayleighFaberKrahn) => {
            let a = rfk_constant(dom.dimension)?;
            a.checked_div(dom.volume.pow(two_over(dom.dimension))?)
        }
        None => Err(Error::Config(
            "no source for a lower bound of lambda1(Omega): give a value, a box, or allow the RFK fallback".into(),
        )),
    }
}

/// `C₂(Ω) = 1/√λ₁(Ω)`; the `hi` endpoint is certified.
pub fn poincare_c2(dom: &DomainSpec) -> Result<Interval> {
    let l = lambda1_lower(dom)?;
    // Only the lower end of λ₁ is certified, so C₂ ≤ 1/√λ₁.lo.
    let c = Interval::point(l.lo()).sqrt()?.recip()?;
    Ok(c)
}

/// `C_q(Ω)` for the support condition: the Poincaré constant for q = 2,
/// otherwise the Talenti embedding constant.
pub fn embedding_or_poincare(q: f64, dom: &DomainSpec) -> Result<Interval> {
    if q == 2.0 {
        poincare_c2(dom)
    } else {
        embedding_const(Interval::point(q), dom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inside(v: Interval, lo: f64, hi: f64) -> bool {
        v.lo() >= lo && v.hi() <= hi
    }

    #[test]
    fn ball_volumes() {
        assert!(inside(unit_ball_volume(2).unwrap(), 3.1415926535, 3.1415926536));
        assert!(inside(unit_ball_volume(4).unwrap(), 4.9348022005, 4.9348022006));
        assert!(unit_ball_volume(3).unwrap().contains(4.0 / 3.0 * std::f64::consts::PI));
        assert!(unit_ball_volume(1).is_err());
        assert!(unit_ball_volume(11).is_err());
    }

    #[test]
    fn rfk_values() {
        assert!(inside(rfk_constant(2).unwrap(), 18.1684145355, 18.1684145356));
        assert!(inside(rfk_constant(3).unwrap(), 25.6463452794, 25.6463452795));
        assert!(inside(rfk_constant(4).unwrap(), 32.6151384322, 32.6151384323));
        assert!(inside(rfk_constant(5).unwrap(), 39.2347942529, 39.2347942530));
        assert!(rfk_constant(6).is_err());
    }

    #[test]
    fn liyau() {
        let one = liyau_lower(1, 2, Interval::ONE).unwrap();
        assert!(one.contains(2.0 * std::f64::consts::PI));
        assert!(one.hi() < rfk_constant(2).unwrap().lo());
        let four = liyau_lower(4, 2, Interval::ONE).unwrap();
        assert!(four.contains(8.0 * std::f64::consts::PI));
        for n in 2..=5 {
            assert!(rfk_constant(n).unwrap().lo() > liyau_lower(1, n, Interval::ONE).unwrap().hi());
        }
    }

    #[test]
    fn talenti_values() {
        let t42 = talenti(Interval::point(4.0), 2).unwrap();
        assert!(t42.contains(1.0 / std::f64::consts::PI));
        assert!(talenti(Interval::point(3.0), 3).unwrap().hi() <= 0.26053090);
        assert!(talenti(Interval::point(6.0), 3).unwrap().hi() <= 0.42726056);
        assert!(talenti(Interval::point(2.0), 2).is_err());
        assert!(talenti(Interval::point(7.0), 3).is_err());
        assert!(talenti(Interval::point(1.5), 3).is_err());
    }

    #[test]
    fn embedding_values() {
        let dom = |n, v: f64| DomainSpec::new(n, Interval::point(v), None).unwrap();
        assert!(embedding_const(Interval::point(3.0), &dom(2, 2.0)).unwrap().hi() <= 0.35266583);
        assert!(embedding_const(Interval::point(5.0), &dom(3, 2.0)).unwrap().hi() <= 0.38240343);
        assert_eq!(
            embedding_const(Interval::point(4.0), &dom(2, 1.0)).unwrap(),
            talenti(Interval::point(4.0), 2).unwrap()
        );
        assert!(embedding_const(Interval::point(2.0), &dom(3, 1.0)).is_err());
    }

    #[test]
    fn poincare() {
        let c = poincare_c2(&DomainSpec::unit_square()).unwrap();
        assert!(c.hi() >= 0.225079 && c.hi() <= 0.2251);
        let one = DomainSpec::new(
            2,
            Interval::ONE,
            Some(Lambda1Source::Lower { value: Interval::ONE, source: "test".into() }),
        )
        .unwrap();
        assert!(poincare_c2(&one).unwrap().hi() <= 1.0);
        let rfk = DomainSpec::new(2, Interval::ONE, Some(Lambda1Source::RayleighFaberKrahn)).unwrap();
        let c = poincare_c2(&rfk).unwrap();
        // Upper bound only: 1/√(A₁,₂) = 0.2346072802421248262…
        assert!(c.hi() >= 0.2346072802421249 && c.hi() < 0.23460728024213);
        let none = DomainSpec::new(2, Interval::ONE, None).unwrap();
        assert!(matches!(poincare_c2(&none), Err(Error::Config(_))));
    }

    #[test]
    fn domain_validation() {
        assert!(DomainSpec::new(2, Interval::ZERO, None).is_err());
        assert!(DomainSpec::new(2, Interval::ONE, Some(Lambda1Source::Hyperrectangle(vec![1.0]))).is_err());
    }
}

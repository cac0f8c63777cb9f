//! Gamma function for positive arguments.

use super::{pi, Interval};
use crate::error::{domain, Result};

/// Arguments are shifted up to at least this value before Stirling's series.
const SHIFT_TARGET: f64 = 8.0;

/// `B_{2k} / (2k(2k−1))` for k = 1..=8, as numerator/denominator pairs.
const STIRLING: [(i64, i64); 8] =
    [(1, 12), (-1, 360), (1, 1260), (-1, 1680), (1, 1188), (-691, 360_360), (1, 156), (-3617, 122_400)];

/// First omitted coefficient, `B_18/(18·17)`.
const STIRLING_NEXT: (i64, i64) = (43_867, 244_188);

/// ln Γ(z) for `z ≥ 8` by Stirling's series; the error is at most the first
/// omitted term. The small correction terms are summed on their own, from
/// the smallest up, before meeting the O(z ln z) main part.
fn ln_gamma_large(z: Interval) -> Interval {
    let zlo = Interval::point(z.lo());
    let rem = Interval::ratio(STIRLING_NEXT.0, STIRLING_NEXT.1).checked_div(zlo.powi(17).unwrap()).unwrap().hi();
    let z2 = z.sqr();
    let mut powers = Vec::with_capacity(STIRLING.len());
    let mut zpow = z;
    for _ in 0..STIRLING.len() {
        powers.push(zpow);
        zpow *= z2;
    }
    let mut series = Interval::raw(-rem, rem);
    for (&(num, den), &zp) in STIRLING.iter().zip(&powers).rev() {
        series += Interval::ratio(num, den).checked_div(zp).unwrap();
    }
    // (z − ½) ln z − z + ½ ln 2π  =  (z − ½)(ln z − 1) + (½ ln 2π − ½)
    let constant = (pi() * 2.0).ln().unwrap() * 0.5 - 0.5;
    (z - 0.5) * (z.ln().unwrap() - 1.0) + (constant + series)
}

/// Γ at a positive integer or half-integer point, from the factorial and
/// `Γ(k + ½) = (2k)!/(4^k k!) √π`.
fn gamma_closed_form(x: f64) -> Option<Interval> {
    let twice = 2.0 * x;
    if twice.fract() != 0.0 || !(1.0..=340.0).contains(&twice) {
        return None;
    }
    let twice = twice as u32;
    if twice.is_multiple_of(2) {
        let mut f = Interval::ONE;
        for i in 2..twice / 2 {
            f *= Interval::point(i as f64);
        }
        Some(f)
    } else {
        // Γ(k + ½) = √π · Π_{i=1..k} (2i − 1)/2
        let k = twice / 2;
        let mut f = pi().sqrt().unwrap();
        for i in 1..=k {
            f *= Interval::point((2 * i - 1) as f64) * 0.5;
        }
        Some(f)
    }
}

impl Interval {
    /// Encloses Γ(x) for every x in a positive interval.
    pub fn gamma(self) -> Result<Interval> {
        if self.lo() <= 0.0 {
            return domain(format!("gamma of nonpositive argument {self}"));
        }
        if !self.hi().is_finite() || self.hi() > 170.0 {
            return domain(format!("gamma argument {self} overflows"));
        }
        if self.is_point() {
            if let Some(g) = gamma_closed_form(self.lo()) {
                return Ok(g);
            }
        }
        let n = (SHIFT_TARGET - self.lo()).ceil().max(0.0) as u32;
        let mut denom = Interval::ONE;
        for i in 0..n {
            denom *= self + i as f64;
        }
        let z = self + n as f64;
        ln_gamma_large(z).exp().checked_div(denom)
    }
}

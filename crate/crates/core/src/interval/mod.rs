//! Outward-rounded interval arithmetic over binary64.
//!
//! An [`Interval`] `[lo, hi]` always contains the real quantity it stands
//! for. Endpoints become infinite only when a computation overflowed; such
//! intervals are still valid enclosures but are flagged by
//! [`Interval::is_certifying`] and must not be used as certified bounds.

mod elementary;
mod gamma;
pub(crate) mod round;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::error::{domain, Error, Result};

pub use elementary::{elementary, ln2, pi, Elementary};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    /// Negation of the first operand; the second is ignored.
    Neg,
}

/// Applies a binary operation with outward rounding.
pub fn arith(op: ArithOp, x: Interval, y: Interval) -> Result<Interval> {
    Ok(match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
        ArithOp::Div => x.checked_div(y)?,
        ArithOp::Neg => -x,
    })
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };
    pub const ENTIRE: Interval = Interval { lo: f64::NEG_INFINITY, hi: f64::INFINITY };

    pub fn new(lo: f64, hi: f64) -> Result<Interval> {
        if lo.is_nan() || hi.is_nan() {
            return domain("interval endpoint is NaN");
        }
        if lo > hi {
            return domain(format!("empty interval [{lo}, {hi}]"));
        }
        if lo == f64::INFINITY || hi == f64::NEG_INFINITY {
            return domain("interval lies entirely at infinity");
        }
        Ok(Interval { lo, hi })
    }

    /// The degenerate interval `[x, x]`.
    ///
    /// # Panics
    /// If `x` is NaN or infinite.
    pub fn point(x: f64) -> Interval {
        assert!(x.is_finite(), "point interval from non-finite value {x}");
        Interval { lo: x, hi: x }
    }

    /// Encloses the rational `num / den`.
    pub fn ratio(num: i64, den: i64) -> Interval {
        assert!(den != 0, "zero denominator");
        let exact = |v: i64| {
            assert!(v.unsigned_abs() <= 1 << 53, "integer {v} not exact in binary64");
            v as f64
        };
        let (lo, hi) = round::div(exact(num), exact(den));
        Interval { lo, hi }
    }

    pub(crate) const fn raw_const(lo: f64, hi: f64) -> Interval {
        Interval { lo, hi }
    }

    #[inline]
    pub(crate) fn raw(lo: f64, hi: f64) -> Interval {
        debug_assert!(lo <= hi, "raw interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    /// A float inside the interval, close to its centre.
    pub fn mid(self) -> f64 {
        match (self.lo.is_finite(), self.hi.is_finite()) {
            (true, true) => {
                let m = 0.5 * self.lo + 0.5 * self.hi;
                m.clamp(self.lo, self.hi)
            }
            (false, true) => self.hi.min(0.0),
            (true, false) => self.lo.max(0.0),
            (false, false) => 0.0,
        }
    }

    /// An upper bound of `hi − lo`.
    pub fn width(self) -> f64 {
        round::sub(self.hi, self.lo).1
    }

    /// Radius about [`Interval::mid`], rounded up.
    pub fn rad(self) -> f64 {
        let m = self.mid();
        round::sub(self.hi, m).1.max(round::sub(m, self.lo).1)
    }

    /// Largest absolute value in the interval.
    pub fn mag(self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value in the interval.
    pub fn mig(self) -> f64 {
        if self.contains_zero() {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn abs(self) -> Interval {
        Interval::raw(self.mig(), self.mag())
    }

    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(self) -> bool {
        self.contains(0.0)
    }

    pub fn subset_of(self, other: Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn hull(self, other: Interval) -> Interval {
        Interval::raw(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    pub fn intersect(self, other: Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval::raw(lo, hi))
    }

    /// Both endpoints finite: usable as a certified bound.
    pub fn is_certifying(self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn is_point(self) -> bool {
        self.lo == self.hi
    }

    pub fn is_positive(self) -> bool {
        self.lo > 0.0
    }

    pub fn is_negative(self) -> bool {
        self.hi < 0.0
    }

    /// Elementwise maximum `{max(x, y)}`.
    pub fn max(self, other: Interval) -> Interval {
        Interval::raw(self.lo.max(other.lo), self.hi.max(other.hi))
    }

    pub fn min(self, other: Interval) -> Interval {
        Interval::raw(self.lo.min(other.lo), self.hi.min(other.hi))
    }

    /// Square with the dependency on the single variable respected.
    pub fn sqr(self) -> Interval {
        let lo = if self.contains_zero() { 0.0 } else { round::mul(self.mig(), self.mig()).0 };
        Interval::raw(lo, round::mul(self.mag(), self.mag()).1)
    }

    pub fn checked_div(self, rhs: Interval) -> Result<Interval> {
        if rhs.contains_zero() {
            return Err(Error::Domain(format!("division by {rhs}, which contains zero")));
        }
        let cands = [
            round::div(self.lo, rhs.lo),
            round::div(self.lo, rhs.hi),
            round::div(self.hi, rhs.lo),
            round::div(self.hi, rhs.hi),
        ];
        Ok(from_candidates(&cands))
    }

    pub fn recip(self) -> Result<Interval> {
        Interval::ONE.checked_div(self)
    }

    /// Multiplication by `2^k`, exact unless it overflows or underflows.
    pub fn scale2(self, k: i32) -> Interval {
        let half = k / 2;
        let f1 = Interval::point(2f64.powi(half));
        let f2 = Interval::point(2f64.powi(k - half));
        self * f1 * f2
    }
}

fn from_candidates(c: &[(f64, f64)]) -> Interval {
    let lo = c.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let hi = c.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    Interval::raw(lo, hi)
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval::raw(round::add(self.lo, rhs.lo).0, round::add(self.hi, rhs.hi).1)
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        Interval::raw(round::sub(self.lo, rhs.hi).0, round::sub(self.hi, rhs.lo).1)
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        if self.lo >= 0.0 && rhs.lo >= 0.0 {
            return Interval::raw(round::mul(self.lo, rhs.lo).0, round::mul(self.hi, rhs.hi).1);
        }
        let cands = [
            round::mul(self.lo, rhs.lo),
            round::mul(self.lo, rhs.hi),
            round::mul(self.hi, rhs.lo),
            round::mul(self.hi, rhs.hi),
        ];
        from_candidates(&cands)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::raw(-self.hi, -self.lo)
    }
}

impl Add<f64> for Interval {
    type Output = Interval;
    fn add(self, rhs: f64) -> Interval {
        self + Interval::point(rhs)
    }
}

impl Sub<f64> for Interval {
    type Output = Interval;
    fn sub(self, rhs: f64) -> Interval {
        self - Interval::point(rhs)
    }
}

impl Mul<f64> for Interval {
    type Output = Interval;
    fn mul(self, rhs: f64) -> Interval {
        self * Interval::point(rhs)
    }
}

impl AddAssign for Interval {
    fn add_assign(&mut self, rhs: Interval) {
        *self = *self + rhs;
    }
}

impl SubAssign for Interval {
    fn sub_assign(&mut self, rhs: Interval) {
        *self = *self - rhs;
    }
}

impl MulAssign for Interval {
    fn mul_assign(&mut self, rhs: Interval) {
        *self = *self * rhs;
    }
}

impl std::iter::Sum for Interval {
    fn sum<I: Iterator<Item = Interval>>(iter: I) -> Interval {
        iter.fold(Interval::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

//! Rigorous elementary functions.
//!
//! Point evaluations reduce the argument against certified splits of ln 2 and
//! π/2 and then sum a Taylor (or atanh) series in interval arithmetic with an
//! explicit bound on the truncated tail. Interval arguments are handled by
//! monotonicity or, for sin/cos, by locating the extrema.

use super::{round, Interval};
use crate::error::{domain, Result};

// ln 2 = LN2_HI + LN2_LO; LN2_HI has 32 significant bits so k·LN2_HI is exact
// for |k| < 2^21.
const LN2_HI: f64 = f64::from_bits(0x3FE6_2E42_FEE0_0000);
const LN2_LO_DN: f64 = f64::from_bits(0x3DEA_39EF_3579_3C76);
const LN2_LO_UP: f64 = f64::from_bits(0x3DEA_39EF_3579_3C77);

// π/2 = P1 + P2 + P3 + tail, each Pi with at most 33 significant bits.
const PIO2_1: f64 = f64::from_bits(0x3FF9_21FB_5440_0000);
const PIO2_2: f64 = f64::from_bits(0x3DD0_B461_1A60_0000);
const PIO2_3: f64 = f64::from_bits(0x3BA3_198A_2E00_0000);
const PIO2_T_DN: f64 = f64::from_bits(0x397B_839A_2520_49C1);
const PIO2_T_UP: f64 = f64::from_bits(0x397B_839A_2520_49C2);

/// Largest |x| accepted by sin and cos.
pub const TRIG_LIMIT: f64 = 1.0e4;

/// Encloses π.
pub fn pi() -> Interval {
    Interval::raw(std::f64::consts::PI, std::f64::consts::PI.next_up())
}

/// Encloses ln 2.
pub fn ln2() -> Interval {
    Interval::point(LN2_HI) + Interval::raw(LN2_LO_DN, LN2_LO_UP)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Elementary {
    Sqrt,
    Exp,
    Ln,
    Sin,
    Cos,
    PowInt(i32),
    PowReal(Interval),
    Root(u32),
}

/// Dispatches to the corresponding [`Interval`] method.
pub fn elementary(f: Elementary, x: Interval) -> Result<Interval> {
    match f {
        Elementary::Sqrt => x.sqrt(),
        Elementary::Exp => Ok(x.exp()),
        Elementary::Ln => x.ln(),
        Elementary::Sin => x.sin(),
        Elementary::Cos => x.cos(),
        Elementary::PowInt(n) => x.powi(n),
        Elementary::PowReal(e) => x.pow(e),
        Elementary::Root(n) => x.root(n),
    }
}

fn exp_point(x: f64) -> Interval {
    if x == f64::NEG_INFINITY || x < -746.0 {
        return Interval::raw(0.0, f64::from_bits(1));
    }
    if x == f64::INFINITY || x > 710.0 {
        return Interval::raw(f64::MAX, f64::INFINITY);
    }
    let k = (x * std::f64::consts::LOG2_E).round();
    let r = Interval::point(x) - Interval::point(k * LN2_HI) - Interval::raw(LN2_LO_DN, LN2_LO_UP) * k;
    // |r| ≤ 0.35: Σ_{j<N} r^j/j! with tail ≤ 2|r|^N/N!.
    const N: i64 = 20;
    let mut s = Interval::ONE;
    for j in (1..N).rev() {
        s = Interval::ONE + (r * s).checked_div(Interval::point(j as f64)).unwrap();
    }
    let tail = tail_bound(r.mag(), N as u32, 2.0);
    (s + Interval::raw(-tail, tail)).scale2(k as i32)
}

/// Upper bound of `scale·m^n/n!`.
fn tail_bound(m: f64, n: u32, scale: f64) -> f64 {
    let mut t = Interval::point(scale);
    let mi = Interval::point(m);
    for j in 1..=n {
        t = (t * mi).checked_div(Interval::point(j as f64)).unwrap();
    }
    t.hi()
}

fn ln_point(x: f64) -> Interval {
    debug_assert!(x > 0.0);
    if x == f64::INFINITY {
        return Interval::raw(f64::MAX, f64::INFINITY);
    }
    let (mut m, mut e) = frexp(x);
    if m > std::f64::consts::SQRT_2 {
        m *= 0.5;
        e += 1;
    }
    // ln m = 2 atanh(z), z = (m−1)/(m+1), |z| ≤ 0.1716.
    let mi = Interval::point(m);
    let z = (mi - 1.0).checked_div(mi + 1.0).unwrap();
    let w = z.sqr();
    const K: i64 = 14;
    let mut s = Interval::ratio(1, 2 * K - 1);
    for k in (0..K - 1).rev() {
        s = Interval::ratio(1, 2 * k + 1) + w * s;
    }
    let zm = z.mag();
    let zm2 = round::mul(zm, zm).1;
    let tail = Interval::point(tail_pow(zm, 2 * K as u32 + 1))
        .checked_div(Interval::point((2 * K + 1) as f64) * (Interval::ONE - Interval::point(zm2)))
        .unwrap()
        .hi();
    let atanh = z * s + Interval::raw(-tail, tail);
    let ef = e as f64;
    atanh * 2.0 + Interval::point(ef * LN2_HI) + Interval::raw(LN2_LO_DN, LN2_LO_UP) * ef
}

/// Upper bound of `m^n` for `m ≥ 0`.
fn tail_pow(m: f64, n: u32) -> f64 {
    pow_point(m, n).hi()
}

/// `x = m·2^e` with `m ∈ [1, 2)`, for finite positive `x`.
fn frexp(x: f64) -> (f64, i32) {
    let (x, adj) = if x < f64::MIN_POSITIVE { (x * 2f64.powi(54), -54) } else { (x, 0) };
    let bits = x.to_bits();
    let e = ((bits >> 52) & 0x7ff) as i32 - 1023;
    let m = f64::from_bits((bits & 0x000F_FFFF_FFFF_FFFF) | (1023u64 << 52));
    (m, e + adj)
}

/// Reduces `x` to `r ∈ ≈[−π/4, π/4]` with `x = r + kπ/2`, returning `(r, k mod 4)`.
fn reduce_pio2(x: f64) -> (Interval, u8) {
    let k = (x * std::f64::consts::FRAC_2_PI).round();
    let r = Interval::point(x)
        - Interval::point(k * PIO2_1)
        - Interval::point(k * PIO2_2)
        - Interval::point(k * PIO2_3)
        - Interval::raw(PIO2_T_DN, PIO2_T_UP) * k;
    (r, (k as i64).rem_euclid(4) as u8)
}

const TRIG_TERMS: i64 = 12;

/// sin on a reduced argument with |r| < 1.
fn sin_reduced(r: Interval) -> Interval {
    let w = r.sqr();
    // c_j = (−1)^j / (2j+1)!
    let mut coef = Vec::with_capacity(TRIG_TERMS as usize);
    let mut c = Interval::ONE;
    coef.push(c);
    for j in 1..TRIG_TERMS {
        c = -c.checked_div(Interval::point(((2 * j) * (2 * j + 1)) as f64)).unwrap();
        coef.push(c);
    }
    let mut s = coef[TRIG_TERMS as usize - 1];
    for j in (0..TRIG_TERMS as usize - 1).rev() {
        s = coef[j] + w * s;
    }
    let tail = tail_bound(r.mag(), 2 * TRIG_TERMS as u32 + 1, 1.0);
    r * s + Interval::raw(-tail, tail)
}

fn cos_reduced(r: Interval) -> Interval {
    let w = r.sqr();
    let mut coef = Vec::with_capacity(TRIG_TERMS as usize);
    let mut c = Interval::ONE;
    coef.push(c);
    for j in 1..TRIG_TERMS {
        c = -c.checked_div(Interval::point(((2 * j - 1) * (2 * j)) as f64)).unwrap();
        coef.push(c);
    }
    let mut s = coef[TRIG_TERMS as usize - 1];
    for j in (0..TRIG_TERMS as usize - 1).rev() {
        s = coef[j] + w * s;
    }
    let tail = tail_bound(r.mag(), 2 * TRIG_TERMS as u32, 1.0);
    s + Interval::raw(-tail, tail)
}

const UNIT: Interval = Interval { lo: -1.0, hi: 1.0 };

fn sin_point(x: f64) -> Interval {
    let (r, q) = reduce_pio2(x);
    let v = match q {
        0 => sin_reduced(r),
        1 => cos_reduced(r),
        2 => -sin_reduced(r),
        _ => -cos_reduced(r),
    };
    v.intersect(UNIT).unwrap_or(v)
}

fn cos_point(x: f64) -> Interval {
    let (r, q) = reduce_pio2(x);
    let v = match q {
        0 => cos_reduced(r),
        1 => -sin_reduced(r),
        2 => -cos_reduced(r),
        _ => sin_reduced(r),
    };
    v.intersect(UNIT).unwrap_or(v)
}

/// Whether `x` may contain a point `2π(j + frac)` for some integer `j`.
fn may_contain_phase(x: Interval, frac: f64) -> bool {
    let two_pi = pi() * 2.0;
    let j0 = (x.lo() / std::f64::consts::TAU - frac).floor() - 1.0;
    let j1 = (x.hi() / std::f64::consts::TAU - frac).ceil() + 1.0;
    let mut j = j0;
    while j <= j1 {
        let c = two_pi * (j + frac);
        if c.hi() >= x.lo() && c.lo() <= x.hi() {
            return true;
        }
        j += 1.0;
    }
    false
}

fn check_trig_domain(x: Interval) -> Result<()> {
    if !(x.mag() <= TRIG_LIMIT) {
        return domain(format!("sin/cos argument {x} exceeds |x| ≤ {TRIG_LIMIT}"));
    }
    Ok(())
}

impl Interval {
    pub fn sqrt(self) -> Result<Interval> {
        if self.lo() < 0.0 {
            return domain(format!("sqrt of {self}"));
        }
        Ok(Interval::raw(round::sqrt(self.lo()).0, round::sqrt(self.hi()).1))
    }

    pub fn exp(self) -> Interval {
        if self.is_point() {
            return exp_point(self.lo());
        }
        Interval::raw(exp_point(self.lo()).lo(), exp_point(self.hi()).hi())
    }

    pub fn ln(self) -> Result<Interval> {
        if self.lo() <= 0.0 {
            return domain(format!("ln of {self}"));
        }
        if self.is_point() {
            return Ok(ln_point(self.lo()));
        }
        Ok(Interval::raw(ln_point(self.lo()).lo(), ln_point(self.hi()).hi()))
    }

    pub fn sin(self) -> Result<Interval> {
        check_trig_domain(self)?;
        if self.is_point() {
            return Ok(sin_point(self.lo()));
        }
        if self.hi() - self.lo() >= 6.3 {
            return Ok(UNIT);
        }
        let mut v = sin_point(self.lo()).hull(sin_point(self.hi()));
        if may_contain_phase(self, 0.25) {
            v = Interval::raw(v.lo(), 1.0);
        }
        if may_contain_phase(self, 0.75) {
            v = Interval::raw(-1.0, v.hi());
        }
        Ok(v)
    }

    pub fn cos(self) -> Result<Interval> {
        check_trig_domain(self)?;
        if self.is_point() {
            return Ok(cos_point(self.lo()));
        }
        if self.hi() - self.lo() >= 6.3 {
            return Ok(UNIT);
        }
        let mut v = cos_point(self.lo()).hull(cos_point(self.hi()));
        if may_contain_phase(self, 0.0) {
            v = Interval::raw(v.lo(), 1.0);
        }
        if may_contain_phase(self, 0.5) {
            v = Interval::raw(-1.0, v.hi());
        }
        Ok(v)
    }

    /// Integer power by repeated squaring.
    pub fn powi(self, n: i32) -> Result<Interval> {
        if n < 0 {
            let p = self.powi_unsigned(n.unsigned_abs());
            return p.recip();
        }
        Ok(self.powi_unsigned(n as u32))
    }

    fn powi_unsigned(self, n: u32) -> Interval {
        if n == 0 {
            return Interval::ONE;
        }
        if n.is_multiple_of(2) {
            let lo = if self.contains_zero() { 0.0 } else { pow_point(self.mig(), n).lo() };
            return Interval::raw(lo, pow_point(self.mag(), n).hi());
        }
        Interval::raw(pow_point(self.lo(), n).lo(), pow_point(self.hi(), n).hi())
    }

    /// `X^E = exp(E·ln X)` for a positive base; integral point exponents go
    /// through [`Interval::powi`].
    pub fn pow(self, e: Interval) -> Result<Interval> {
        if e.is_point() && e.lo().fract() == 0.0 && e.lo().abs() <= 1.0e9 {
            return self.powi(e.lo() as i32);
        }
        if self.lo() < 0.0 {
            return domain(format!("real power of {self}"));
        }
        if self.lo() == 0.0 {
            if e.lo() <= 0.0 {
                return domain(format!("0 raised to exponent {e}"));
            }
            if self.hi() == 0.0 {
                return Ok(Interval::ZERO);
            }
            let top = Interval::point(self.hi()).pow(e)?;
            return Ok(Interval::raw(0.0, top.hi()));
        }
        Ok((e * self.ln()?).exp())
    }

    /// `X^(num/den)` for a nonnegative base.
    pub fn pow_rational(self, num: i32, den: u32) -> Result<Interval> {
        self.root(den)?.powi(num)
    }

    /// Real `n`-th root of a nonnegative interval.
    pub fn root(self, n: u32) -> Result<Interval> {
        if n == 0 {
            return domain("zeroth root");
        }
        if self.lo() < 0.0 {
            return domain(format!("root of {self}"));
        }
        match n {
            1 => Ok(self),
            2 => self.sqrt(),
            _ => Ok(Interval::raw(root_down(self.lo(), n), root_up(self.hi(), n))),
        }
    }
}

/// Encloses `x^n` by repeated squaring.
fn pow_point(x: f64, n: u32) -> Interval {
    if !x.is_finite() {
        let v = if x < 0.0 && n % 2 == 1 { f64::NEG_INFINITY } else { f64::INFINITY };
        return if v > 0.0 { Interval::raw(f64::MAX, v) } else { Interval::raw(v, f64::MIN) };
    }
    let mut base = Interval::point(x.abs());
    let mut acc = Interval::ONE;
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            acc *= base;
        }
        k >>= 1;
        if k > 0 {
            base = base * base;
        }
    }
    if x < 0.0 && n % 2 == 1 {
        -acc
    } else {
        acc
    }
}

fn root_down(x: f64, n: u32) -> f64 {
    if x == 0.0 || x == f64::INFINITY {
        return if x == 0.0 { 0.0 } else { f64::MAX };
    }
    let mut y = x.powf(1.0 / n as f64);
    while y > 0.0 && pow_point(y, n).hi() > x {
        y = y.next_down();
    }
    y.max(0.0)
}

fn root_up(x: f64, n: u32) -> f64 {
    if x == 0.0 || x == f64::INFINITY {
        return x;
    }
    let mut y = x.powf(1.0 / n as f64);
    while pow_point(y, n).lo() < x {
        y = y.next_up();
    }
    y
}

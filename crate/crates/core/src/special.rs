//! Bessel functions of the first kind and enclosures of their first zeros.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{domain, Error, Result};
use crate::interval::{pi, Interval};

/// Largest argument accepted by [`bessel_series`].
pub const SERIES_LIMIT: f64 = 30.0;
/// Scan window width for sign changes after `x = 1`.
pub const SCAN_STEP: f64 = 1.0 / 64.0;
pub const MAX_BISECTIONS: u32 = 200;
pub const MIN_TOL: f64 = 1e-11;
/// Bisection continues to `tol / TOL_GUARD` so that a width target of
/// `10^-d` also resolves the zero to `d` decimals away from digit boundaries.
pub const TOL_GUARD: f64 = 8.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BesselOrder {
    Integer(u32),
    /// `k + 1/2`.
    HalfInteger(u32),
}

impl BesselOrder {
    pub fn from_f64(v: f64) -> Result<BesselOrder> {
        let twice = 2.0 * v;
        if !(v >= 0.0) || twice.fract() != 0.0 || twice > 1e6 {
            return domain(format!("unsupported Bessel order {v}"));
        }
        let t = twice as u32;
        Ok(if t.is_multiple_of(2) { BesselOrder::Integer(t / 2) } else { BesselOrder::HalfInteger(t / 2) })
    }

    /// The order `N/2 − 1` of the Rayleigh–Faber–Krahn problem in dimension N.
    pub fn for_dimension(n: u32) -> Result<BesselOrder> {
        if n < 2 {
            return domain(format!("dimension {n} < 2"));
        }
        BesselOrder::from_f64(n as f64 / 2.0 - 1.0)
    }

    pub fn value(self) -> f64 {
        match self {
            BesselOrder::Integer(n) => n as f64,
            BesselOrder::HalfInteger(k) => k as f64 + 0.5,
        }
    }
}

impl fmt::Display for BesselOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// The function whose sign change brackets a zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignFunction {
    /// `J_n` by its power series.
    BesselSeries(u32),
    /// `sin x − x cos x`, which vanishes exactly where `J_{3/2}` does for x > 0.
    SinMinusXCos,
}

impl SignFunction {
    fn eval(self, x: Interval) -> Result<Interval> {
        match self {
            SignFunction::BesselSeries(n) => bessel_series(n, x),
            SignFunction::SinMinusXCos => Ok(x.sin()? - x * x.cos()?),
        }
    }

    fn derivative(self, x: Interval) -> Result<Interval> {
        match self {
            SignFunction::BesselSeries(n) => bessel_series_derivative(n, x),
            SignFunction::SinMinusXCos => Ok(x * x.sin()?),
        }
    }
}

impl fmt::Display for SignFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignFunction::BesselSeries(n) => write!(f, "J_{n} (power series)"),
            SignFunction::SinMinusXCos => write!(f, "sin x - x cos x"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ZeroCertificate {
    /// The zero is known in closed form.
    Analytic { statement: &'static str },
    SignChange {
        function: SignFunction,
        /// Enclosure of the function at `zero.lo()`, strictly positive.
        at_lo: Interval,
        /// Enclosure of the function at `zero.hi()`, strictly negative.
        at_hi: Interval,
        /// Derivative enclosure, strictly negative, over a range that holds
        /// the zero: the zero is unique there.
        derivative: Interval,
        /// Range on which the function is certified positive (for `J_1` the
        /// point 0 itself excepted), ruling out earlier zeros.
        positive_on: Interval,
        bisections: u32,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroEnclosure {
    pub order: BesselOrder,
    pub zero: Interval,
    pub certificate: ZeroCertificate,
}

impl ZeroEnclosure {
    /// Re-checks the stored sign certificate.
    pub fn is_consistent(&self) -> bool {
        match &self.certificate {
            ZeroCertificate::Analytic { .. } => true,
            ZeroCertificate::SignChange { at_lo, at_hi, derivative, .. } => {
                at_lo.is_positive() && at_hi.is_negative() && derivative.is_negative()
            }
        }
    }
}

fn factorial(n: u32) -> Interval {
    (2..=n).fold(Interval::ONE, |acc, k| acc * k as f64)
}

/// Encloses `J_n(x)` for all `x ∈ X ⊆ [0, 30]` by the ascending series
/// `Σ (−1)^k (x/2)^{2k+n} / (k!(k+n)!)`.
pub fn bessel_series(n: u32, x: Interval) -> Result<Interval> {
    if !(x.lo() >= 0.0 && x.hi() <= SERIES_LIMIT) {
        return domain(format!("Bessel series argument {x} outside [0, {SERIES_LIMIT}]"));
    }
    let h = x * 0.5;
    let h2 = h.sqr();
    let mut term = h.powi(n as i32)?.checked_div(factorial(n))?;
    let mut sum = Interval::ZERO;
    let mut k: u32 = 0;
    loop {
        let kk = (k + 1) as f64 * (k + 1 + n) as f64;
        let ratio = h2.hi() / kk;
        // Beyond k every ratio is below 1/2, so the tail is within 2|t_k|.
        if ratio < 0.5 && term.mag() < 1e-18 {
            let t = 2.0 * term.mag();
            return Ok(sum + Interval::raw(-t, t));
        }
        if k > 400 {
            return Err(Error::Precision(format!("Bessel series did not converge on {x}")));
        }
        sum += term;
        term = -(term * h2).checked_div(Interval::point(kk))?;
        k += 1;
    }
}

/// Encloses `J_n'(x)` via `J_0' = −J_1` and `J_n' = (J_{n−1} − J_{n+1})/2`.
pub fn bessel_series_derivative(n: u32, x: Interval) -> Result<Interval> {
    if n == 0 {
        return Ok(-bessel_series(1, x)?);
    }
    Ok((bessel_series(n - 1, x)? - bessel_series(n + 1, x)?) * 0.5)
}

fn cells(i: Interval, count: usize) -> impl Iterator<Item = Interval> {
    let count = count.max(1);
    let (lo, hi) = (i.lo(), i.hi());
    let at = move |k: usize| {
        if k == count {
            hi
        } else {
            (lo + (hi - lo) * (k as f64 / count as f64)).min(hi)
        }
    };
    (0..count).map(move |k| Interval::raw(at(k), at(k + 1)))
}

/// True only if `J_n` is certified strictly positive on every cell of `I`.
///
/// For `n ≥ 1` the cell touching 0 may instead carry a strictly positive
/// derivative enclosure: `J_n` then increases from `J_n(0) = 0`, so it is
/// positive on the cell except at 0 itself.
pub fn verify_positive_on(n: u32, i: Interval, subdivisions: usize) -> bool {
    if !(i.lo() >= 0.0 && i.hi() <= SERIES_LIMIT) {
        return false;
    }
    cells(i, subdivisions).all(|c| {
        if matches!(bessel_series(n, c), Ok(v) if v.is_positive()) {
            return true;
        }
        n >= 1 && c.lo() == 0.0 && matches!(bessel_series_derivative(n, c), Ok(d) if d.is_positive())
    })
}

/// True only if `J_n'` is certified strictly positive on every cell of `I`.
pub fn verify_increasing_on(n: u32, i: Interval, subdivisions: usize) -> bool {
    if !(i.lo() >= 0.0 && i.hi() <= SERIES_LIMIT) {
        return false;
    }
    cells(i, subdivisions).all(|c| matches!(bessel_series_derivative(n, c), Ok(d) if d.is_positive()))
}

/// Proves `pred` on all of `i` by adaptive bisection and returns the hull of
/// the enclosures of the accepted pieces.
fn adaptive_hull(
    i: Interval,
    depth: u32,
    eval: &dyn Fn(Interval) -> Result<Interval>,
    pred: fn(Interval) -> bool,
) -> Option<Interval> {
    if let Ok(v) = eval(i) {
        if pred(v) {
            return Some(v);
        }
    }
    let m = i.mid();
    if depth == 0 || m <= i.lo() || m >= i.hi() {
        return None;
    }
    let a = adaptive_hull(Interval::raw(i.lo(), m), depth - 1, eval, pred)?;
    let b = adaptive_hull(Interval::raw(m, i.hi()), depth - 1, eval, pred)?;
    Some(a.hull(b))
}

struct Bracket {
    lo: f64,
    hi: f64,
    at_lo: Interval,
    at_hi: Interval,
    bisections: u32,
}

/// Bisects a bracket with `f(lo) > 0 > f(hi)`.
///
/// With `tol = None` it refines as far as the enclosures allow and returns
/// the last certified bracket; otherwise an undecidable midpoint is an error.
fn bisect(f: SignFunction, mut b: Bracket, tol: Option<f64>) -> Result<Bracket> {
    loop {
        if let Some(t) = tol {
            if b.hi - b.lo <= t {
                return Ok(b);
            }
        }
        let m = 0.5 * b.lo + 0.5 * b.hi;
        let stalled = m <= b.lo || m >= b.hi || b.bisections >= MAX_BISECTIONS;
        let fm = if stalled { None } else { Some(f.eval(Interval::point(m))?) };
        match fm {
            Some(v) if v.is_positive() => {
                b.lo = m;
                b.at_lo = v;
            }
            Some(v) if v.is_negative() => {
                b.hi = m;
                b.at_hi = v;
            }
            _ => {
                if tol.is_none() {
                    return Ok(b);
                }
                return Err(Error::Precision(format!(
                    "bisection of {f} stagnated at [{:e}, {:e}] after {} steps",
                    b.lo, b.hi, b.bisections
                )));
            }
        }
        b.bisections += 1;
    }
}

const HALF_STATEMENT: &str = "J_{1/2}(x) = sqrt(2/(pi x)) sin x, whose first positive zero is pi";

struct Setup {
    f: SignFunction,
    bracket: Bracket,
    /// Where the function is certified positive before the bracket.
    positive_on: Interval,
    /// Where the derivative is certified negative; contains the bracket's zero.
    monotone_on: Interval,
}

/// Locates the initial bracket for orders 0, 1 and 3/2 and certifies that
/// the zero inside it is the first one.
fn initial_setup(order: BesselOrder) -> Result<Setup> {
    let positive =
        |f: SignFunction, range: Interval| adaptive_hull(range, 40, &|c| f.eval(c), Interval::is_positive).is_some();
    match order {
        BesselOrder::HalfInteger(1) => {
            let f = SignFunction::SinMinusXCos;
            let lo = std::f64::consts::PI;
            let hi = 1.5 * std::f64::consts::PI;
            let (at_lo, at_hi) = (f.eval(Interval::point(lo))?, f.eval(Interval::point(hi))?);
            if !(at_lo.is_positive() && at_hi.is_negative()) {
                return Err(Error::Precision("no certified sign change on [pi, 1.5 pi]".into()));
            }
            // g' = x sin x changes sign at π itself, so split the bracket.
            let split = 3.25;
            let positive_on = Interval::raw(lo, split);
            if !positive(f, positive_on) {
                return Err(Error::Precision(format!("positivity of {f} on {positive_on} not certified")));
            }
            Ok(Setup {
                f,
                bracket: Bracket { lo, hi, at_lo, at_hi, bisections: 0 },
                positive_on,
                monotone_on: Interval::raw(split, hi),
            })
        }
        BesselOrder::Integer(n @ (0 | 1)) => {
            let f = SignFunction::BesselSeries(n);
            if !verify_positive_on(n, Interval::raw(0.0, 1.0), 16) {
                return Err(Error::Precision(format!("positivity of J_{n} on [0,1] not certified")));
            }
            let mut i = 1u32;
            loop {
                let a = 1.0 + (i - 1) as f64 * SCAN_STEP / 2.0;
                let b = a + SCAN_STEP;
                if b > SERIES_LIMIT {
                    return Err(Error::Precision(format!("no sign change of J_{n} below {SERIES_LIMIT}")));
                }
                let (fa, fb) = (f.eval(Interval::point(a))?, f.eval(Interval::point(b))?);
                if fa.contains_zero() || fb.contains_zero() {
                    return Err(Error::Precision(format!("J_{n} enclosure at a scan point contains 0")));
                }
                if fa.is_positive() && fb.is_negative() {
                    if !positive(f, Interval::raw(1.0, a)) {
                        return Err(Error::Precision(format!("positivity of J_{n} on [1, {a}] not certified")));
                    }
                    return Ok(Setup {
                        f,
                        bracket: Bracket { lo: a, hi: b, at_lo: fa, at_hi: fb, bisections: 0 },
                        positive_on: Interval::raw(0.0, a),
                        monotone_on: Interval::raw(a, b),
                    });
                }
                i += 1;
            }
        }
        _ => domain(format!("zero finding is not supported for order {order}")),
    }
}

fn find_zero(order: BesselOrder, tol: Option<f64>) -> Result<ZeroEnclosure> {
    if order == BesselOrder::HalfInteger(0) {
        return Ok(ZeroEnclosure {
            order,
            zero: pi(),
            certificate: ZeroCertificate::Analytic { statement: HALF_STATEMENT },
        });
    }
    let setup = initial_setup(order)?;
    let f = setup.f;
    let derivative = adaptive_hull(setup.monotone_on, 12, &|c| f.derivative(c), Interval::is_negative)
        .ok_or_else(|| Error::Precision(format!("monotonicity of {f} on {} not certified", setup.monotone_on)))?;
    let b = bisect(f, setup.bracket, tol)?;
    Ok(ZeroEnclosure {
        order,
        zero: Interval::raw(b.lo, b.hi),
        certificate: ZeroCertificate::SignChange {
            function: f,
            at_lo: b.at_lo,
            at_hi: b.at_hi,
            derivative,
            positive_on: setup.positive_on,
            bisections: b.bisections,
        },
    })
}

/// Encloses the first positive zero `j_{ν,1}` to width `≤ tol`.
pub fn first_zero(order: BesselOrder, tol: f64) -> Result<ZeroEnclosure> {
    if !(tol >= MIN_TOL) {
        return domain(format!("tolerance {tol:e} below the floor {MIN_TOL:e}"));
    }
    find_zero(order, Some(tol / TOL_GUARD))
}

/// The narrowest certified enclosure of `j_{ν,1}` reachable with the series
/// enclosures, cached per order.
pub fn tightest_zero(order: BesselOrder) -> Result<ZeroEnclosure> {
    static CACHE: [OnceLock<std::result::Result<ZeroEnclosure, Error>>; 4] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let slot = match order {
        BesselOrder::Integer(0) => 0,
        BesselOrder::HalfInteger(0) => 1,
        BesselOrder::Integer(1) => 2,
        BesselOrder::HalfInteger(1) => 3,
        _ => return domain(format!("zero finding is not supported for order {order}")),
    };
    CACHE[slot].get_or_init(|| find_zero(order, None)).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_zero() {
        assert!(bessel_series(0, Interval::ZERO).unwrap().contains(1.0));
        assert!(bessel_series(1, Interval::ZERO).unwrap().contains(0.0));
        assert!(bessel_series(3, Interval::ZERO).unwrap().contains(0.0));
    }

    #[test]
    fn series_at_the_first_zero() {
        let v = bessel_series(0, Interval::point(2.404825557695773)).unwrap();
        assert!(v.contains_zero() || v.mag() < 1e-15);
        assert!(v.width() < 1e-10);
    }

    #[test]
    fn known_values() {
        assert!(bessel_series(0, Interval::ONE).unwrap().contains(0.7651976865579666));
        assert!(bessel_series(1, Interval::point(2.0)).unwrap().contains(0.5767248077568734));
        assert!(bessel_series(0, Interval::point(30.0)).unwrap().contains(-0.08636798358104464));
    }

    #[test]
    fn domain_is_enforced() {
        assert!(bessel_series(0, Interval::point(30.5)).is_err());
        assert!(bessel_series(0, Interval::point(-0.1)).is_err());
    }

    #[test]
    fn positivity() {
        assert!(verify_positive_on(0, Interval::raw(0.0, 1.0), 16));
        assert!(!verify_positive_on(0, Interval::raw(2.3, 2.5), 64));
        assert!(verify_positive_on(0, Interval::ZERO, 1));
        assert!(verify_positive_on(1, Interval::raw(0.0, 1.0), 16));
        assert!(verify_increasing_on(1, Interval::raw(0.0, 1.0), 16));
    }

    #[test]
    fn zeros_match_reference_digits() {
        let z0 = first_zero(BesselOrder::Integer(0), 1e-10).unwrap();
        assert!(z0.zero.lo() >= 2.4048255576 && z0.zero.hi() <= 2.4048255577);
        assert!(z0.is_consistent());
        let z1 = first_zero(BesselOrder::Integer(1), 1e-10).unwrap();
        assert!(z1.zero.lo() >= 3.8317059702 && z1.zero.hi() <= 3.8317059703);
        let zh = first_zero(BesselOrder::HalfInteger(0), 1e-3).unwrap();
        assert_eq!(zh.zero, pi());
        let z3 = first_zero(BesselOrder::HalfInteger(1), 1e-10).unwrap();
        assert!(z3.zero.lo() >= 4.4934094579 && z3.zero.hi() <= 4.4934094580);
        assert!(z0.zero.hi() < z1.zero.lo());
    }

    #[test]
    fn tol_floor_and_unsupported_orders() {
        assert!(first_zero(BesselOrder::Integer(0), 1e-12).is_err());
        assert!(first_zero(BesselOrder::Integer(2), 1e-10).is_err());
        assert!(BesselOrder::from_f64(0.25).is_err());
    }

    #[test]
    fn tightest_is_narrow() {
        for order in [BesselOrder::Integer(0), BesselOrder::Integer(1), BesselOrder::HalfInteger(1)] {
            let z = tightest_zero(order).unwrap();
            assert!(z.zero.width() < 1e-13, "{order}: {}", z.zero);
            assert!(z.is_consistent());
        }
    }
}

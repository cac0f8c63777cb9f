//! Directed rounding of single binary64 operations.
//!
//! Every function returns `(down, up)` with `down ≤ exact ≤ up`. Exactness is
//! detected with error-free transformations, so an endpoint only moves when
//! the floating-point result was actually inexact, and only in the direction
//! of the error. Close to the subnormal range, where the residuals themselves
//! may be rounded, both directions are widened unconditionally.

/// Below this magnitude FMA residuals are not guaranteed exact.
const RESIDUAL_FLOOR: f64 = 1.0e-270;

#[inline]
fn both_ways(x: f64) -> (f64, f64) {
    (x.next_down(), x.next_up())
}

#[inline]
fn overflow(sign_positive: bool) -> (f64, f64) {
    if sign_positive {
        (f64::MAX, f64::INFINITY)
    } else {
        (f64::NEG_INFINITY, f64::MIN)
    }
}

#[inline]
fn by_error(x: f64, err: f64) -> (f64, f64) {
    if err > 0.0 {
        (x, x.next_up())
    } else if err < 0.0 {
        (x.next_down(), x)
    } else {
        (x, x)
    }
}

pub fn add(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    if !s.is_finite() {
        if a.is_finite() && b.is_finite() {
            return overflow(s > 0.0);
        }
        return (s, s);
    }
    // TwoSum (Knuth): s + err == a + b exactly.
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    by_error(s, err)
}

pub fn sub(a: f64, b: f64) -> (f64, f64) {
    add(a, -b)
}

pub fn mul(a: f64, b: f64) -> (f64, f64) {
    // 0·∞ occurs only at unbounded endpoints, where the limit is 0.
    if a == 0.0 || b == 0.0 {
        return (0.0, 0.0);
    }
    let p = a * b;
    if !p.is_finite() {
        if a.is_finite() && b.is_finite() {
            return overflow(p > 0.0);
        }
        return (p, p);
    }
    if p.abs() < RESIDUAL_FLOOR {
        return both_ways(p);
    }
    by_error(p, a.mul_add(b, -p))
}

pub fn div(a: f64, b: f64) -> (f64, f64) {
    debug_assert!(b != 0.0);
    if a == 0.0 {
        return (0.0, 0.0);
    }
    let q = a / b;
    if !a.is_finite() || !b.is_finite() {
        return (q, q);
    }
    if !q.is_finite() {
        return overflow(q > 0.0);
    }
    if q.abs() < RESIDUAL_FLOOR || a.abs() < RESIDUAL_FLOOR || b.abs() < RESIDUAL_FLOOR {
        return both_ways(q);
    }
    // a - q·b is exact; a/b - q has the sign of r/b.
    let r = (-q).mul_add(b, a);
    let err = if b > 0.0 { r } else { -r };
    by_error(q, err)
}

pub fn sqrt(x: f64) -> (f64, f64) {
    debug_assert!(x >= 0.0);
    if x == 0.0 || x == f64::INFINITY {
        return (x, x);
    }
    let s = x.sqrt();
    if x < RESIDUAL_FLOOR {
        return (s.next_down().max(0.0), s.next_up());
    }
    by_error(s, (-s).mul_add(s, x))
}

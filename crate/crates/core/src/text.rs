//! Exact conversions between binary64 and text: hexadecimal float literals,
//! decimal strings parsed to their tightest enclosing interval, and
//! directed (outward) decimal rendering.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::Interval;

/// Significant digits used for decimal renderings in reports.
pub const DECIMAL_DIGITS: usize = 17;

fn parse_err<T>(s: &str, what: &str) -> Result<T> {
    Err(Error::Parse(format!("{s:?} is not {what}")))
}

/// `x = sign · mant · 2^exp` with integer `mant`.
fn decompose(x: f64) -> (bool, u64, i32) {
    let bits = x.to_bits();
    let neg = bits >> 63 == 1;
    let biased = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    if biased == 0 {
        (neg, frac, -1074)
    } else {
        (neg, frac | (1u64 << 52), biased - 1075)
    }
}

fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), k as usize)
}

/// Compares finite `x` with `m · 10^e` exactly.
fn cmp_exact(x: f64, m: &BigInt, e: i32) -> Ordering {
    let (neg, mant, e2) = decompose(x);
    let mut lhs = BigInt::from(mant);
    if neg {
        lhs = -lhs;
    }
    let mut rhs = m.clone();
    if e2 >= 0 {
        lhs <<= e2 as u32;
    } else {
        rhs <<= (-e2) as u32;
    }
    if e >= 0 {
        rhs *= pow10(e as u32);
    } else {
        lhs *= pow10((-e) as u32);
    }
    lhs.cmp(&rhs)
}

/// Formats a double as an exact hexadecimal literal, e.g. `0x1.8p+1`.
/// Infinities are written `inf` / `-inf`.
pub fn to_hex(x: f64) -> String {
    assert!(!x.is_nan(), "NaN has no hexadecimal form");
    let sign = if x.is_sign_negative() { "-" } else { "" };
    if x.is_infinite() {
        return format!("{sign}inf");
    }
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    if biased == 0 && frac == 0 {
        return format!("{sign}0x0p+0");
    }
    let (lead, exp) = if biased == 0 { (0, -1022) } else { (1, biased - 1023) };
    let digits = format!("{frac:013x}");
    let digits = digits.trim_end_matches('0');
    let dot = if digits.is_empty() { "" } else { "." };
    format!("{sign}0x{lead}{dot}{digits}p{exp:+}")
}

/// Parses a hexadecimal float literal; the value must be exactly
/// representable.
pub fn parse_hex(s: &str) -> Result<f64> {
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    if body == "inf" {
        return Ok(if neg { f64::NEG_INFINITY } else { f64::INFINITY });
    }
    let Some(body) = body.strip_prefix("0x").or_else(|| body.strip_prefix("0X")) else {
        return parse_err(s, "a hexadecimal float");
    };
    let Some((mantissa, exp)) = body.split_once(['p', 'P']) else {
        return parse_err(s, "a hexadecimal float (missing exponent)");
    };
    let Ok(exp) = exp.parse::<i32>() else {
        return parse_err(s, "a hexadecimal float (bad exponent)");
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return parse_err(s, "a hexadecimal float (empty mantissa)");
    }
    let digits = format!("{int_part}{frac_part}");
    let Some(m) = BigInt::parse_bytes(digits.as_bytes(), 16) else {
        return parse_err(s, "a hexadecimal float (bad digits)");
    };
    let e2 = exp as i64 - 4 * frac_part.len() as i64;
    let value = exact_from_binary(&m, e2).ok_or_else(|| Error::Parse(format!("{s:?} is not exactly representable")))?;
    Ok(if neg { -value } else { value })
}

/// `m · 2^e2` as a double if exact.
fn exact_from_binary(m: &BigInt, e2: i64) -> Option<f64> {
    if m.is_zero() {
        return Some(0.0);
    }
    let tz = m.trailing_zeros().unwrap_or(0);
    let m = m >> tz;
    let e2 = e2 + tz as i64;
    if m.bits() > 53 || !(-1200..=1100).contains(&e2) {
        return None;
    }
    let mant: u64 = (&m).try_into().ok()?;
    let mut f = mant as f64;
    let mut k = e2;
    while k != 0 {
        let step = k.clamp(-1000, 1000);
        f *= 2f64.powi(step as i32);
        k -= step;
    }
    let (_, dm, de) = decompose(f);
    let back = exact_from_parts(dm, de);
    (f.is_finite() && back == (m, e2)).then_some(f)
}

fn exact_from_parts(mant: u64, exp: i32) -> (BigInt, i64) {
    let m = BigInt::from(mant);
    if m.is_zero() {
        return (m, 0);
    }
    let tz = m.trailing_zeros().unwrap_or(0);
    (m >> tz, exp as i64 + tz as i64)
}

/// A decimal literal as `m · 10^e`.
fn parse_decimal_parts(s: &str) -> Option<(BigInt, i32)> {
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (mantissa, exp) = match body.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (body, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut m = BigInt::parse_bytes(format!("0{int_part}{frac_part}").as_bytes(), 10)?;
    if neg {
        m = -m;
    }
    let e = exp.checked_sub(i32::try_from(frac_part.len()).ok()?)?;
    // Keeps exact comparisons cheap; such literals are far outside binary64.
    if e.unsigned_abs() > 2000 || int_part.len() + frac_part.len() > 2000 {
        return None;
    }
    Some((m, e))
}

/// Tightest interval containing the exact value of a decimal literal
/// (a point when the decimal is a double). Hexadecimal literals are
/// accepted and must be exact.
pub fn parse_decimal(s: &str) -> Result<Interval> {
    let t = s.trim();
    if t.trim_start_matches(['-', '+']).starts_with("0x") {
        return Ok(Interval::point(parse_hex(t)?));
    }
    let Some((m, e)) = parse_decimal_parts(t) else {
        return parse_err(s, "a decimal number");
    };
    let Ok(nearest) = t.parse::<f64>() else {
        return parse_err(s, "a decimal number");
    };
    if nearest.is_infinite() {
        return Err(Error::Parse(format!("{s:?} overflows binary64")));
    }
    // The nearest double is within one ulp, so the enclosure is either a
    // point or the pair of neighbours around the exact value.
    let iv = match cmp_exact(nearest, &m, e) {
        Ordering::Equal => Interval::point(nearest),
        Ordering::Less => Interval::new(nearest, nearest.next_up())?,
        Ordering::Greater => Interval::new(nearest.next_down(), nearest)?,
    };
    Ok(iv)
}

/// Writes `m · 10^e` in scientific notation.
fn render(m: &BigInt, e: i32) -> String {
    if m.is_zero() {
        return "0".into();
    }
    let digits = m.abs().to_string();
    let sign = if m.sign() == Sign::Minus { "-" } else { "" };
    let exp = e + digits.len() as i32 - 1;
    let (head, tail) = digits.split_at(1);
    let tail = tail.trim_end_matches('0');
    if tail.is_empty() {
        format!("{sign}{head}e{exp}")
    } else {
        format!("{sign}{head}.{tail}e{exp}")
    }
}

fn directed(x: f64, sig: usize, up: bool) -> String {
    assert!(sig >= 1, "at least one significant digit");
    if x.is_infinite() {
        return to_hex(x);
    }
    if x == 0.0 {
        return "0".into();
    }
    let nearest = format!("{:.*e}", sig - 1, x);
    let (mut m, e) = parse_decimal_parts(&nearest).expect("std formats valid decimals");
    match (cmp_exact(x, &m, e), up) {
        (Ordering::Greater, true) => m += 1,
        (Ordering::Less, false) => m -= 1,
        _ => {}
    }
    render(&m, e)
}

/// Decimal with `sig` significant digits whose value is `≤ x`.
pub fn decimal_down(x: f64, sig: usize) -> String {
    directed(x, sig, false)
}

/// Decimal with `sig` significant digits whose value is `≥ x`.
pub fn decimal_up(x: f64, sig: usize) -> String {
    directed(x, sig, true)
}

/// Outward decimal rendering `[lo↓, hi↑]`.
pub fn render_interval(x: Interval, sig: usize) -> [String; 2] {
    [decimal_down(x.lo(), sig), decimal_up(x.hi(), sig)]
}

/// Exact hexadecimal endpoints.
pub fn hex_interval(x: Interval) -> [String; 2] {
    [to_hex(x.lo()), to_hex(x.hi())]
}

pub fn parse_hex_interval(pair: &[String; 2]) -> Result<Interval> {
    Interval::new(parse_hex(&pair[0])?, parse_hex(&pair[1])?)
}

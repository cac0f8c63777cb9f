//! Reproduction tables for the Rayleigh–Faber–Krahn constants and the
//! embedding constants, as values and as aligned text.

use std::fmt::Write;

use crate::constants::{embedding_or_poincare, rfk_constant, talenti, talenti_admissible, unit_ball_volume};
use crate::constants::{DomainSpec, Lambda1Source};
use crate::error::Result;
use crate::interval::Interval;
use crate::special::{tightest_zero, BesselOrder};
use crate::text::{decimal_down, decimal_up};

pub const DEFAULT_DIMENSIONS: [u32; 4] = [2, 3, 4, 5];

#[derive(Clone, Debug, PartialEq)]
pub struct RfkRow {
    pub dimension: u32,
    pub ball_volume: Interval,
    pub order: BesselOrder,
    pub bessel_zero: Interval,
    pub rfk: Interval,
}

/// One embedding-constant request: exponent, dimension and |Ω|.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmbeddingSpec {
    pub p: f64,
    pub dimension: u32,
    pub volume: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingRow {
    pub spec: EmbeddingSpec,
    /// `T_{p,N}`, absent outside Talenti's range.
    pub talenti: Option<Interval>,
    /// Upper bound of `C_p(Ω)` in `hi`.
    pub constant: Interval,
}

/// The standard grid: N ∈ {2, 3}, |Ω| ∈ {1, 2}, p = 3..6 (and p = 2 for |Ω| = 2).
pub fn default_embedding_grid() -> Vec<EmbeddingSpec> {
    let mut grid = Vec::new();
    for dimension in [2, 3] {
        for volume in [1.0, 2.0] {
            let first = if volume == 1.0 { 3 } else { 2 };
            for p in first..=6 {
                grid.push(EmbeddingSpec { p: p as f64, dimension, volume });
            }
        }
    }
    grid
}

pub fn rfk_rows(dims: &[u32]) -> Result<Vec<RfkRow>> {
    dims.iter()
        .map(|&n| {
            let order = BesselOrder::for_dimension(n)?;
            Ok(RfkRow {
                dimension: n,
                ball_volume: unit_ball_volume(n)?,
                order,
                bessel_zero: tightest_zero(order)?.zero,
                rfk: rfk_constant(n)?,
            })
        })
        .collect()
}

/// `C_p(Ω)` for Ω with the given volume; p = 2 uses the Poincaré constant
/// from the Rayleigh–Faber–Krahn bound.
pub fn embedding_row(spec: EmbeddingSpec) -> Result<EmbeddingRow> {
    let dom = DomainSpec::new(spec.dimension, Interval::point(spec.volume), Some(Lambda1Source::RayleighFaberKrahn))?;
    let p = Interval::point(spec.p);
    let talenti = if talenti_admissible(p, spec.dimension) { Some(talenti(p, spec.dimension)?) } else { None };
    Ok(EmbeddingRow { spec, talenti, constant: embedding_or_poincare(spec.p, &dom)? })
}

pub fn embedding_rows(specs: &[EmbeddingSpec]) -> Result<Vec<EmbeddingRow>> {
    specs.iter().map(|&s| embedding_row(s)).collect()
}

/// Directed rendering with `decimals` digits after the point.
fn positional(v: f64, decimals: usize, up: bool) -> String {
    let mag = if v == 0.0 { 0 } else { v.abs().log10().floor() as i32 };
    let sig = (decimals as i32 + 1 + mag).max(1) as usize;
    let s = plain(&if up { decimal_up(v, sig) } else { decimal_down(v, sig) });
    let have = s.split_once('.').map_or(0, |(_, f)| f.len());
    let dot = if have == 0 && decimals > 0 { "." } else { "" };
    format!("{s}{dot}{}", "0".repeat(decimals.saturating_sub(have)))
}

/// `[lo↓, hi↑]` with `decimals` digits after the point.
fn fixed(x: Interval, decimals: usize) -> String {
    format!("[{}, {}]", positional(x.lo(), decimals, false), positional(x.hi(), decimals, true))
}

/// Rewrites `d.ddde±k` in positional notation.
fn plain(sci: &str) -> String {
    let Some((mant, exp)) = sci.split_once('e') else { return sci.to_string() };
    let exp: i32 = exp.parse().expect("rendered exponent");
    let (sign, mant) = mant.strip_prefix('-').map_or(("", mant), |m| ("-", m));
    let digits: String = mant.chars().filter(|c| *c != '.').collect();
    let point = 1 + exp;
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else if point as usize >= digits.len() {
        format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
    } else {
        let (a, b) = digits.split_at(point as usize);
        format!("{a}.{b}")
    };
    format!("{sign}{body}")
}

pub fn format_rfk_table(rows: &[RfkRow]) -> String {
    let mut out = String::new();
    writeln!(out, "{:>2}  {:<30}  {:<30}  A_{{1,N}}", "N", "B_N", "j_{N/2-1,1}").unwrap();
    for r in rows {
        writeln!(
            out,
            "{:>2}  {:<30}  {:<30}  {}",
            r.dimension,
            fixed(r.ball_volume, 10),
            fixed(r.bessel_zero, 10),
            fixed(r.rfk, 10)
        )
        .unwrap();
    }
    out
}

pub fn format_embedding_table(rows: &[EmbeddingRow]) -> String {
    let mut out = String::new();
    writeln!(out, "{:>2}  {:>5}  {:>3}  {:>12}  {:>12}", "N", "|Ω|", "p", "T_{p,N} ≤", "C_p(Ω) ≤").unwrap();
    for r in rows {
        let t = r.talenti.map_or_else(|| "-".to_string(), |t| positional(t.hi(), 8, true));
        writeln!(
            out,
            "{:>2}  {:>5}  {:>3}  {:>12}  {:>12}",
            r.spec.dimension,
            r.spec.volume,
            r.spec.p,
            t,
            positional(r.constant.hi(), 8, true)
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positional_rendering() {
        assert_eq!(plain("3.14e0"), "3.14");
        assert_eq!(plain("1.5e-3"), "0.0015");
        assert_eq!(plain("2.5e2"), "250");
        assert_eq!(plain("-1e1"), "-10");
        assert_eq!(plain("0"), "0");
    }

    #[test]
    fn rfk_table_digits() {
        let rows = rfk_rows(&[2]).unwrap();
        let text = format_rfk_table(&rows);
        assert!(text.contains("[3.1415926535, 3.1415926536]"), "{text}");
        assert!(text.contains("[2.4048255576, 2.4048255577]"), "{text}");
        assert!(text.contains("[18.1684145355, 18.1684145356]"), "{text}");
    }

    #[test]
    fn embedding_grid() {
        let grid = default_embedding_grid();
        assert_eq!(grid.len(), 18);
        let row = embedding_row(EmbeddingSpec { p: 6.0, dimension: 2, volume: 2.0 }).unwrap();
        assert!(row.constant.hi() <= 0.44433111);
        let p2 = embedding_row(EmbeddingSpec { p: 2.0, dimension: 2, volume: 2.0 }).unwrap();
        assert!(p2.talenti.is_none());
        assert!(format_embedding_table(&[row]).contains("0.44433110"));
    }

    #[test]
    fn empty_tables() {
        assert!(rfk_rows(&[]).unwrap().is_empty());
        assert_eq!(format_embedding_table(&[]).lines().count(), 1);
    }
}

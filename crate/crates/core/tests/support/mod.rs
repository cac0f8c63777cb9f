//! Independent oracles shared by the integration tests: arbitrary-precision
//! evaluation with astro-float, synthetic meshes and problem builders.

#![allow(dead_code)]

use std::path::PathBuf;

use astro_float::{BigFloat, Consts, RoundingMode};
use posicert::field::{Cell, CellMesh};
use posicert::Interval;
use rand::Rng;

/// Working precision of the oracle; sums and products of the sampled
/// doubles are exact at this width.
pub const PREC: usize = 192;
const RM: RoundingMode = RoundingMode::ToEven;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn big(x: f64) -> BigFloat {
    BigFloat::from_f64(x, PREC)
}

pub fn encloses(x: Interval, v: &BigFloat) -> bool {
    big(x.lo()) <= *v && *v <= big(x.hi())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Sqrt,
    Exp,
    Ln,
    Sin,
    Cos,
}

pub const OPS: [Op; 9] = [Op::Add, Op::Sub, Op::Mul, Op::Div, Op::Sqrt, Op::Exp, Op::Ln, Op::Sin, Op::Cos];

pub struct Oracle {
    cc: Consts,
}

impl Oracle {
    pub fn new() -> Oracle {
        Oracle { cc: Consts::new().expect("astro-float constants") }
    }

    /// `op(a, b)` to `PREC` bits (`b` ignored for unary operations).
    pub fn eval(&mut self, op: Op, a: f64, b: f64) -> BigFloat {
        let (x, y) = (big(a), big(b));
        match op {
            Op::Add => x.add(&y, PREC, RM),
            Op::Sub => x.sub(&y, PREC, RM),
            Op::Mul => x.mul(&y, PREC, RM),
            Op::Div => x.div(&y, PREC, RM),
            Op::Sqrt => x.sqrt(PREC, RM),
            Op::Exp => x.exp(PREC, RM, &mut self.cc),
            Op::Ln => x.ln(PREC, RM, &mut self.cc),
            Op::Sin => x.sin(PREC, RM, &mut self.cc),
            Op::Cos => x.cos(PREC, RM, &mut self.cc),
        }
    }

    /// Legendre–Sobolev basis `φ_1..=φ_m` at `x`, with
    /// `φ_n(x) = (P_{n−1}(t) − P_{n+1}(t))/(2(2n+1))`, `t = 2x − 1`.
    pub fn phi(&mut self, x: f64, m: usize) -> Vec<BigFloat> {
        let t = big(x).mul(&big(2.0), PREC, RM).sub(&big(1.0), PREC, RM);
        let mut p = vec![big(1.0), t.clone()];
        for n in 1..=m {
            let nf = n as f64;
            let a = t.mul(&p[n], PREC, RM).mul(&big(2.0 * nf + 1.0), PREC, RM);
            let b = p[n - 1].mul(&big(nf), PREC, RM);
            p.push(a.sub(&b, PREC, RM).div(&big(nf + 1.0), PREC, RM));
        }
        (1..=m).map(|n| p[n - 1].sub(&p[n + 1], PREC, RM).div(&big(2.0 * (2 * n + 1) as f64), PREC, RM)).collect()
    }

    /// `Σ u_{i,j} φ_i(x) φ_j(y)` with `u_{i,j}` at `(i−1)m + (j−1)`.
    pub fn legendre(&mut self, coeffs: &[f64], m: usize, x: f64, y: f64) -> BigFloat {
        let (px, py) = (self.phi(x, m), self.phi(y, m));
        let mut sum = big(0.0);
        for i in 0..m {
            for j in 0..m {
                let term = big(coeffs[i * m + j]).mul(&px[i], PREC, RM).mul(&py[j], PREC, RM);
                sum = sum.add(&term, PREC, RM);
            }
        }
        sum
    }
}

/// Interval extension of `op` on `x`, `y`.
pub fn enclosure(op: Op, x: Interval, y: Interval) -> posicert::Result<Interval> {
    match op {
        Op::Add => Ok(x + y),
        Op::Sub => Ok(x - y),
        Op::Mul => Ok(x * y),
        Op::Div => x.checked_div(y),
        Op::Sqrt => x.sqrt(),
        Op::Exp => Ok(x.exp()),
        Op::Ln => x.ln(),
        Op::Sin => x.sin(),
        Op::Cos => x.cos(),
    }
}

/// A double `± [1, 2)·2^e` with `e` uniform in `[lo, hi]`.
pub fn wide_double(rng: &mut impl Rng, lo: i32, hi: i32) -> f64 {
    let m: f64 = rng.gen_range(1.0..2.0);
    let s = if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
    s * m * 2f64.powi(rng.gen_range(lo..=hi))
}

/// An argument in the natural domain of `op`.
pub fn sample_arg(rng: &mut impl Rng, op: Op) -> f64 {
    match op {
        Op::Sqrt | Op::Ln => wide_double(rng, -40, 40).abs(),
        Op::Exp => rng.gen_range(-700.0..700.0),
        Op::Sin | Op::Cos => {
            if rng.gen_bool(0.5) {
                rng.gen_range(-8.0..8.0)
            } else {
                rng.gen_range(-1.0e4..1.0e4)
            }
        }
        _ => wide_double(rng, -40, 40),
    }
}

/// A random mesh of `n` cells in dimension 2 with total volume ≤ 1 and
/// mostly positive bounds.
pub fn synthetic_mesh(rng: &mut impl Rng, n: usize) -> CellMesh {
    let cells = (0..n)
        .map(|id| {
            let vol = Interval::ratio(1, n as i64) * rng.gen_range(0.2..1.0);
            let lower = if rng.gen_bool(0.15) { -rng.gen_range(0.0..0.05) } else { rng.gen_range(0.0..1.0) };
            let upper = lower + rng.gen_range(0.0..0.3);
            Cell::new(id, vol, lower, upper).expect("valid cell")
        })
        .collect();
    CellMesh::new(2, cells).expect("valid mesh")
}

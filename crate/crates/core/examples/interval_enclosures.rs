//! Outward-rounded interval arithmetic and elementary functions.
//!
//! `cargo run --example interval_enclosures`

use posicert::interval::{arith, elementary, pi, ArithOp, Elementary};
use posicert::text::{parse_decimal, to_hex};
use posicert::{Interval, Result};

fn main() -> Result<()> {
    // 0.1 is not a double: the parser returns the two neighbours around it.
    let tenth = parse_decimal("0.1")?;
    println!("0.1            -> [{}, {}]", to_hex(tenth.lo()), to_hex(tenth.hi()));

    let sum = (0..10).fold(Interval::ZERO, |acc, _| acc + tenth);
    println!("ten times 0.1  -> {sum}  (contains 1: {})", sum.contains(1.0));

    let x = Interval::new(1.0, 2.0)?;
    let y = Interval::new(-1.0, 3.0)?;
    println!("[1,2]·[-1,3]   -> {}", arith(ArithOp::Mul, x, y)?);
    println!("[1,2]/[-1,3]   -> {}", arith(ArithOp::Div, x, y).unwrap_err());

    println!("pi             -> {}", pi());
    println!("exp([0,1])     -> {}", elementary(Elementary::Exp, Interval::new(0.0, 1.0)?)?);
    println!("ln(2)          -> {}", Interval::point(2.0).ln()?);
    println!("sin([3,3.3])   -> {}", elementary(Elementary::Sin, Interval::new(3.0, 3.3)?)?);
    println!("2^(1/3)        -> {}", elementary(Elementary::Root(3), Interval::point(2.0))?);
    let g = Interval::point(0.5).gamma()?.sqr();
    println!("gamma(1/2)^2   -> {g}  (meets pi: {})", g.intersect(pi()).is_some());
    Ok(())
}

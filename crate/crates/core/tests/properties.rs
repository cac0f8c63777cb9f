//! Invariants checked with proptest: enclosure soundness and inclusion
//! isotonicity, monotonicity of the certificate ingredients, scaling laws
//! of the constants and lossless text round trips.

mod support;

use posicert::certify::{certify_positivity, eigen_lower_bound, EigenLower, NonlinearityBound, Verdict};
use posicert::constants::{embedding_const, liyau_lower, rfk_constant, volume_exponent, DomainSpec, Lambda1Source};
use posicert::field::levelset::{fractional_max_levelset, greedy_max_levelset, oracle_max_levelset};
use posicert::field::{Cell, CellMesh};
use posicert::nk::radius_from;
use posicert::special::bessel_series;
use posicert::text::{decimal_down, decimal_up, parse_decimal, parse_hex, to_hex};
use posicert::Interval;
use proptest::prelude::*;
use support::{encloses, enclosure, Op, Oracle};

fn op() -> impl Strategy<Value = Op> {
    prop_oneof![
        Just(Op::Add),
        Just(Op::Sub),
        Just(Op::Mul),
        Just(Op::Div),
        Just(Op::Sqrt),
        Just(Op::Exp),
        Just(Op::Ln),
        Just(Op::Sin),
        Just(Op::Cos),
    ]
}

/// An interval inside `[-50, 50]` (positive when `op` needs it).
fn arg(positive: bool) -> impl Strategy<Value = Interval> {
    (0.0..50.0f64, 0.0..5.0f64, any::<bool>()).prop_map(move |(a, w, neg)| {
        let a = if neg && !positive { -a } else { a.max(1e-3) };
        Interval::new(a, a + w).unwrap()
    })
}

fn cells(max: usize) -> impl Strategy<Value = Vec<(f64, f64, f64)>> {
    prop::collection::vec((0.05..1.0f64, -0.2..1.0f64, 0.0..0.5f64), 1..max)
}

fn mesh_of(raw: &[(f64, f64, f64)]) -> CellMesh {
    let n = raw.len() as f64;
    let cells = raw
        .iter()
        .enumerate()
        .map(|(i, &(v, lo, w))| Cell::new(i, Interval::point(v / n), lo, lo + w).unwrap())
        .collect();
    CellMesh::new(2, cells).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn enclosures_contain_sampled_values(op in op(), x in arg(true), y in arg(false), t in 0.0..=1.0f64, s in 0.0..=1.0f64) {
        let y = if op == Op::Div && y.contains_zero() { y + 60.0 } else { y };
        let Ok(f) = enclosure(op, x, y) else { return Ok(()) };
        let pick = |i: Interval, u: f64| (i.lo() + u * (i.hi() - i.lo())).clamp(i.lo(), i.hi());
        let mut oracle = Oracle::new();
        prop_assert!(encloses(f, &oracle.eval(op, pick(x, t), pick(y, s))), "{op:?} {x} {y} -> {f}");
    }

    #[test]
    fn inclusion_isotonic(op in op(), x in arg(true), y in arg(false), shrink in 0.0..1.0f64) {
        let y = if op == Op::Div && y.contains_zero() { y + 60.0 } else { y };
        let inner = |i: Interval| Interval::new(i.lo() + shrink * i.width() / 2.0, i.hi() - shrink * i.width() / 2.0).unwrap_or(i);
        let (Ok(big), Ok(small)) = (enclosure(op, x, y), enclosure(op, inner(x), inner(y))) else { return Ok(()) };
        prop_assert!(small.subset_of(big), "{op:?}: {small} ⊄ {big}");
    }

    #[test]
    fn hex_round_trip(bits in any::<u64>()) {
        let x = f64::from_bits(bits);
        prop_assume!(x.is_finite());
        prop_assert_eq!(parse_hex(&to_hex(x)).unwrap().to_bits(), x.to_bits());
    }

    #[test]
    fn decimal_rendering_brackets(bits in any::<u64>(), sig in 1usize..=17) {
        let x = f64::from_bits(bits);
        prop_assume!(x.is_finite());
        let (down, up) = (parse_decimal(&decimal_down(x, sig)).unwrap(), parse_decimal(&decimal_up(x, sig)).unwrap());
        prop_assert!(down.lo() <= x && x <= up.hi());
        if sig == 17 {
            // Seventeen digits identify the double, and the directed strings
            // never undershoot it.
            prop_assert!(down.hi() >= x || down.lo() == x);
        }
    }

    #[test]
    fn decimal_parse_is_tight(x in -1e300..1e300f64) {
        let s = format!("{x:e}");
        let i = parse_decimal(&s).unwrap();
        prop_assert!(i.contains(x));
        prop_assert!(i.is_point() || i.hi() == i.lo().next_up());
    }

    #[test]
    fn dm_volume_and_plus_norm_grow_with_m(raw in cells(20), m1 in 0.0..1.0f64, dm in 0.0..0.5f64) {
        let mesh = mesh_of(&raw);
        let m2 = m1 + dm;
        prop_assert!(mesh.dm_vol_upper(m1).hi() <= mesh.dm_vol_upper(m2).hi());
        prop_assert!(mesh.plus_norm_lower(2.0, m1).unwrap().lo() <= mesh.plus_norm_lower(2.0, m2).unwrap().lo());
    }

    #[test]
    fn eigen_bound_shrinks_with_support(d1 in 1e-6..1.0f64, k in 1.0..10.0f64, n in 2u32..=5) {
        let small = eigen_lower_bound(Interval::point(d1), n).unwrap();
        let large = eigen_lower_bound(Interval::point(d1 * k), n).unwrap();
        prop_assert!(small.lo() >= large.lo());
        prop_assert_eq!(eigen_lower_bound(Interval::ZERO, n).unwrap(), EigenLower::Unbounded);
    }

    #[test]
    fn verdict_monotone_in_rho(raw in cells(16), lambda in 0.0..30.0f64, r1 in 1e-6..1e-1f64, k in 1.0..1e3f64) {
        let mesh = mesh_of(&raw);
        let dom = DomainSpec::unit_square();
        let nl = NonlinearityBound::allen_cahn(Interval::point(lambda)).unwrap();
        let ms = [0.5, 0.25, 0.125];
        let small = certify_positivity(&mesh, &dom, &nl, r1, 2.0, &ms, vec![]).unwrap();
        let large = certify_positivity(&mesh, &dom, &nl, r1 * k, 2.0, &ms, vec![]).unwrap();
        if large.verdict == Verdict::VerifiedNonnegative {
            prop_assert_eq!(small.verdict, Verdict::VerifiedNonnegative);
        }
        for (a, b) in small.levels.iter().zip(&large.levels) {
            prop_assert!(a.support_margin.lo() >= b.support_margin.lo());
        }
        prop_assert!(small.recheck() && large.recheck());
    }

    #[test]
    fn nk_radius_monotone(a in 1e-9..0.2f64, b in 1e-3..2.0f64, ka in 1.0..1.5f64, kb in 1.0..1.5f64) {
        let base = radius_from(Interval::point(a), Interval::point(b));
        let worse = radius_from(Interval::point(a * ka), Interval::point(b * kb));
        if let (Some(r0), Some(r1)) = (base.rho_min, worse.rho_min) {
            prop_assert!(r0.lo() <= r1.hi());
            prop_assert!(r0.hi() <= base.rho_max.hi());
        }
        prop_assert!(!worse.feasible || base.feasible);
    }

    #[test]
    fn embedding_scales_with_volume(p in 2.1..8.0f64, t in 0.1..10.0f64) {
        let dom = |v: f64| DomainSpec::new(2, Interval::point(v), Some(Lambda1Source::RayleighFaberKrahn)).unwrap();
        let p = Interval::point(p);
        let c1 = embedding_const(p, &dom(1.0)).unwrap();
        let ct = embedding_const(p, &dom(t)).unwrap();
        let factor = Interval::point(t).pow(volume_exponent(p, 2).unwrap()).unwrap();
        let scaled = c1 * factor;
        prop_assert!(ct.intersect(scaled).is_some(), "{ct} vs {scaled}");
    }

    #[test]
    fn greedy_matches_brute_force_on_equal_volumes(values in prop::collection::vec(0.0..1.0f64, 1..=12), vol in 0.01..1.0f64, c in 0.0..2.0f64) {
        let volumes = vec![vol; values.len()];
        prop_assert_eq!(oracle_max_levelset(&values, &volumes, 2.0, c), greedy_max_levelset(&values, &volumes, 2.0, c));
    }

    #[test]
    fn fractional_bound_dominates(items in prop::collection::vec((0.0..1.0f64, 0.01..1.0f64), 1..=10), c in 0.0..2.0f64) {
        let (values, volumes): (Vec<f64>, Vec<f64>) = items.into_iter().unzip();
        let brute = oracle_max_levelset(&values, &volumes, 2.0, c);
        prop_assert!(fractional_max_levelset(&values, &volumes, 2.0, c) >= brute * (1.0 - 1e-12));
        prop_assert!(greedy_max_levelset(&values, &volumes, 2.0, c) <= brute * (1.0 + 1e-12));
    }
}

#[test]
fn rfk_beats_liyau() {
    for n in 2..=5 {
        let rfk = rfk_constant(n).unwrap();
        let ly = liyau_lower(1, n, Interval::ONE).unwrap();
        assert!(rfk.lo() > ly.hi(), "N = {n}: {rfk} vs {ly}");
    }
}

/// `J_n(x) = (1/π)∫₀^π cos(nτ − x sin τ) dτ` by the trapezoidal rule, which
/// converges geometrically for this periodic integrand.
fn bessel_quadrature(n: u32, x: f64) -> f64 {
    const STEPS: usize = 400;
    let h = std::f64::consts::PI / STEPS as f64;
    let f = |t: f64| (n as f64 * t - x * t.sin()).cos();
    let inner: f64 = (1..STEPS).map(|k| f(k as f64 * h)).sum();
    (inner + 0.5 * (f(0.0) + f(std::f64::consts::PI))) * h / std::f64::consts::PI
}

#[test]
fn bessel_series_matches_integral_representation() {
    for n in 0..=3 {
        for i in 0..=120 {
            let x = i as f64 * 0.25;
            let j = bessel_series(n, Interval::point(x)).unwrap();
            let q = bessel_quadrature(n, x);
            assert!((j.mid() - q).abs() <= 1e-12 + j.width(), "J_{n}({x}): {j} vs {q}");
            // Cancellation in the ascending series costs a few ulp·I_n(x).
            let budget = if x <= 8.0 { 1e-12 } else { 1e-15 * x.exp() };
            assert!(j.width() <= budget, "J_{n}({x}) too wide: {j}");
        }
    }
}

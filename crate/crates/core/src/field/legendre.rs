//! Tensor-product Legendre series on the unit square.
//!
//! `û(x,y) = Σ_{i,j=1}^{M} u_{i,j} φ_i(x) φ_j(y)` with
//! `φ_n(x) = x(1−x) Q_n'(x) / (n(n+1))` and `Q_n(x) = P_n(2x−1)`.
//! Two identities keep the enclosures tight: `φ_n = (P_{n−1} − P_{n+1})/(2(2n+1))`
//! evaluated at `t = 2x−1`, and `φ_n' = −Q_n`, so `|φ_n'| ≤ 1`.

use super::{Cell, CellMesh};
use crate::error::{domain, Result};
use crate::interval::Interval;

pub const MAX_DEGREE: usize = 80;
pub const DEFAULT_SUBDIVISION_DEPTH: u32 = 3;
const MAX_SUBDIVISION_DEPTH: u32 = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct LegendreField {
    degree: usize,
    /// `u_{i,j}` at `(i−1)·M + (j−1)`.
    coefficients: Vec<f64>,
    grid: [usize; 2],
    subdivision_depth: u32,
}

/// `φ_n` and `Q_n` for `n = 0..=M` over one argument (index 0 unused for φ).
struct Basis {
    phi: Vec<Interval>,
    q: Vec<Interval>,
}

const UNIT: Interval = Interval::raw_const(-1.0, 1.0);

/// `P_0..=P_{m+1}` at `t` by the three-term recurrence, clamped to [−1, 1].
fn legendre_p(t: Interval, m: usize) -> Vec<Interval> {
    let mut p = Vec::with_capacity(m + 2);
    p.push(Interval::ONE);
    p.push(t.intersect(UNIT).unwrap_or(t));
    for n in 1..=m {
        let nf = n as f64;
        let next = ((t * p[n]) * (2.0 * nf + 1.0) - p[n - 1] * nf)
            .checked_div(Interval::point(nf + 1.0))
            .expect("nonzero divisor");
        p.push(next.intersect(UNIT).unwrap_or(next));
    }
    p
}

fn phi_from_p(p: &[Interval], n: usize) -> Interval {
    (p[n - 1] - p[n + 1]).checked_div(Interval::point(2.0 * (2 * n + 1) as f64)).expect("nonzero divisor")
}

fn phi_bound(n: usize) -> Interval {
    let b = Interval::ratio(1, (2 * n + 1) as i64).hi();
    Interval::raw(-b, b)
}

fn basis_point(x: f64, m: usize) -> Basis {
    let p = legendre_p(Interval::point(x) * 2.0 - 1.0, m);
    let mut phi = vec![Interval::ZERO; m + 1];
    for n in 1..=m {
        let v = phi_from_p(&p, n);
        phi[n] = v.intersect(phi_bound(n)).unwrap_or(v);
    }
    let q = p[..=m].to_vec();
    Basis { phi, q }
}

/// Basis enclosures over `x ∈ X`: naive recurrence intersected with the
/// mean-value forms `Q_n(c) ± n(n+1)r` and `φ_n(c) ± r`.
fn basis_box(x: Interval, m: usize) -> Basis {
    let c = x.mid();
    let r = x.rad();
    let naive = legendre_p(x * 2.0 - 1.0, m);
    let centre = legendre_p(Interval::point(c) * 2.0 - 1.0, m);
    let mut q = Vec::with_capacity(m + 1);
    let mut phi = vec![Interval::ZERO; m + 1];
    for n in 0..=m {
        let slope = Interval::point((n * (n + 1)) as f64) * r;
        let mv = centre[n] + Interval::raw(-slope.hi(), slope.hi());
        q.push(naive[n].intersect(mv).unwrap_or(naive[n]));
    }
    for n in 1..=m {
        let mv = phi_from_p(&centre, n) + Interval::raw(-r, r);
        let v = phi_from_p(&naive, n);
        let v = v.intersect(mv).unwrap_or(v);
        phi[n] = v.intersect(phi_bound(n)).unwrap_or(v);
    }
    Basis { phi, q }
}

impl LegendreField {
    pub fn new(
        degree: usize,
        coefficients: Vec<f64>,
        grid: [usize; 2],
        subdivision_depth: u32,
    ) -> Result<LegendreField> {
        if degree == 0 || degree > MAX_DEGREE {
            return domain(format!("Legendre degree {degree} outside 1..={MAX_DEGREE}"));
        }
        if coefficients.len() != degree * degree {
            return domain(format!(
                "expected {} coefficients for degree {degree}, found {}",
                degree * degree,
                coefficients.len()
            ));
        }
        if coefficients.iter().any(|c| !c.is_finite()) {
            return domain("Legendre coefficients must be finite");
        }
        if grid[0] == 0 || grid[1] == 0 {
            return domain(format!("grid {grid:?} needs at least one cell per axis"));
        }
        if subdivision_depth > MAX_SUBDIVISION_DEPTH {
            return domain(format!("subdivision depth {subdivision_depth} exceeds {MAX_SUBDIVISION_DEPTH}"));
        }
        Ok(LegendreField { degree, coefficients, grid, subdivision_depth })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn grid(&self) -> [usize; 2] {
        self.grid
    }

    pub fn subdivision_depth(&self) -> u32 {
        self.subdivision_depth
    }

    pub fn with_subdivision_depth(mut self, depth: u32) -> Result<LegendreField> {
        if depth > MAX_SUBDIVISION_DEPTH {
            return domain(format!("subdivision depth {depth} exceeds {MAX_SUBDIVISION_DEPTH}"));
        }
        self.subdivision_depth = depth;
        Ok(self)
    }

    fn u(&self, i: usize, j: usize) -> f64 {
        self.coefficients[(i - 1) * self.degree + (j - 1)]
    }

    /// `Σ_{i,j} u_{ij} a_i b_j`.
    fn contract(&self, a: &[Interval], b: &[Interval]) -> Interval {
        let mut total = Interval::ZERO;
        for i in 1..=self.degree {
            let mut row = Interval::ZERO;
            for j in 1..=self.degree {
                let u = self.u(i, j);
                if u != 0.0 {
                    row += b[j] * u;
                }
            }
            total += a[i] * row;
        }
        total
    }

    /// Encloses û at a point of the unit square.
    pub fn eval_point(&self, x: f64, y: f64) -> Interval {
        let bx = basis_point(x, self.degree);
        let by = basis_point(y, self.degree);
        self.contract(&bx.phi, &by.phi)
    }

    /// Encloses û over a box by the naive tensor evaluation intersected with
    /// the mean-value form about the box centre.
    pub fn eval_box(&self, x: Interval, y: Interval) -> Interval {
        let m = self.degree;
        let (bx, by) = (basis_box(x, m), basis_box(y, m));
        let naive = self.contract(&bx.phi, &by.phi);
        let (cx, cy) = (basis_point(x.mid(), m), basis_point(y.mid(), m));
        let centre = self.contract(&cx.phi, &cy.phi);
        let neg_q = |b: &Basis| b.q.iter().map(|v| -*v).collect::<Vec<_>>();
        let dx = self.contract(&neg_q(&bx), &by.phi);
        let dy = self.contract(&bx.phi, &neg_q(&by));
        let (rx, ry) = (x.rad(), y.rad());
        let mv = centre + dx * Interval::raw(-rx, rx) + dy * Interval::raw(-ry, ry);
        naive.intersect(mv).unwrap_or(naive)
    }

    /// Box enclosure refined `depth` times: each level intersects the box's
    /// own enclosure with the hull of its four children, so deeper bounds are
    /// always nested in shallower ones.
    pub fn refined_bound(&self, x: Interval, y: Interval, depth: u32) -> Interval {
        let own = self.eval_box(x, y);
        if depth == 0 {
            return own;
        }
        let (xm, ym) = (x.mid(), y.mid());
        let xs = [Interval::raw(x.lo(), xm), Interval::raw(xm, x.hi())];
        let ys = [Interval::raw(y.lo(), ym), Interval::raw(ym, y.hi())];
        let mut hull: Option<Interval> = None;
        for cx in xs {
            for cy in ys {
                let b = self.refined_bound(cx, cy, depth - 1);
                hull = Some(hull.map_or(b, |h| h.hull(b)));
            }
        }
        own.intersect(hull.unwrap()).unwrap_or(own)
    }

    /// The closed box of grid cell `(ix, iy)`, rounded outward.
    pub fn cell_box(&self, ix: usize, iy: usize) -> (Interval, Interval) {
        let edge = |i: usize, n: usize| {
            Interval::raw(Interval::ratio(i as i64, n as i64).lo(), Interval::ratio(i as i64 + 1, n as i64).hi())
        };
        (edge(ix, self.grid[0]), edge(iy, self.grid[1]))
    }
}

/// Cell bounds of the series on the `nx × ny` grid of the unit square.
/// Cells are numbered `ix·ny + iy`.
pub fn legendre_to_mesh(fld: &LegendreField) -> Result<CellMesh> {
    let [nx, ny] = fld.grid;
    let volume = Interval::ratio(1, nx as i64) * Interval::ratio(1, ny as i64);
    let mut cells = Vec::with_capacity(nx * ny);
    for ix in 0..nx {
        for iy in 0..ny {
            let (bx, by) = fld.cell_box(ix, iy);
            let b = fld.refined_bound(bx, by, fld.subdivision_depth);
            if !b.is_certifying() {
                return domain(format!("cell ({ix}, {iy}): bound {b} overflowed"));
            }
            cells.push(Cell::new(ix * ny + iy, volume, b.lo(), b.hi())?);
        }
    }
    CellMesh::new(2, cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(i: usize, j: usize, m: usize) -> Vec<f64> {
        let mut c = vec![0.0; m * m];
        c[(i - 1) * m + (j - 1)] = 1.0;
        c
    }

    #[test]
    fn phi_one_is_x_one_minus_x() {
        let f = LegendreField::new(1, vec![1.0], [1, 1], 0).unwrap();
        for &(x, y) in &[(0.5, 0.5), (0.25, 0.75), (0.1, 0.9)] {
            assert!(f.eval_point(x, y).contains(x * (1.0 - x) * y * (1.0 - y)));
        }
    }

    #[test]
    fn higher_basis_functions() {
        // φ_2(x) = x(1−x)(2x−1), φ_3(x) = x(1−x)(5(2x−1)² − 1)/4.
        let f2 = LegendreField::new(3, single(2, 1, 3), [1, 1], 0).unwrap();
        let f3 = LegendreField::new(3, single(3, 3, 3), [1, 1], 0).unwrap();
        let phi3 = |x: f64| x * (1.0 - x) * (5.0 * (2.0 * x - 1.0).powi(2) - 1.0) / 4.0;
        for &(x, y) in &[(0.3, 0.6), (0.8, 0.15)] {
            let v2 = f2.eval_point(x, y);
            let e2 = x * (1.0 - x) * (2.0 * x - 1.0) * y * (1.0 - y);
            assert!((v2.mid() - e2).abs() < 1e-15, "{v2} vs {e2}");
            let v3 = f3.eval_point(x, y);
            assert!((v3.mid() - phi3(x) * phi3(y)).abs() < 1e-15);
        }
    }

    #[test]
    fn single_mode_bounds() {
        let f = LegendreField::new(1, vec![1.0], [1, 1], DEFAULT_SUBDIVISION_DEPTH).unwrap();
        let mesh = legendre_to_mesh(&f).unwrap();
        let c = mesh.cells()[0];
        assert!(c.lower >= 0.0);
        assert!(c.upper >= 0.0625 && c.upper <= 0.0625 + 1e-12, "upper {}", c.upper);
    }

    #[test]
    fn zero_field() {
        let f = LegendreField::new(4, vec![0.0; 16], [3, 2], 2).unwrap();
        for c in legendre_to_mesh(&f).unwrap().cells() {
            assert_eq!((c.lower, c.upper), (0.0, 0.0));
        }
    }

    #[test]
    fn refinement_nests() {
        let coeffs: Vec<f64> = (0..36).map(|k| ((k * 7 % 11) as f64 - 5.0) / (1.0 + k as f64)).collect();
        let f = LegendreField::new(6, coeffs, [2, 3], 0).unwrap();
        let (bx, by) = f.cell_box(1, 2);
        let mut prev = f.refined_bound(bx, by, 0);
        for d in 1..=4 {
            let b = f.refined_bound(bx, by, d);
            assert!(b.subset_of(prev), "depth {d}: {b} not in {prev}");
            prev = b;
        }
    }

    #[test]
    fn degree_is_checked() {
        assert!(LegendreField::new(81, vec![0.0; 81 * 81], [1, 1], 0).is_err());
        assert!(LegendreField::new(2, vec![0.0; 3], [1, 1], 0).is_err());
        assert!(LegendreField::new(2, vec![0.0; 4], [0, 1], 0).is_err());
    }
}

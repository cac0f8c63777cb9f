//! Cellwise bounds of an approximate solution û and the norms and volumes
//! derived from them.

mod legendre;
pub mod levelset;

use std::io::Write;

use crate::error::{domain, Result};
use crate::interval::Interval;

pub use legendre::{legendre_to_mesh, LegendreField, DEFAULT_SUBDIVISION_DEPTH, MAX_DEGREE};

/// One mesh cell `K` with `lower ≤ û ≤ upper` on its closure.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cell {
    pub id: usize,
    /// Encloses |K|.
    pub volume: Interval,
    pub lower: f64,
    pub upper: f64,
}

impl Cell {
    pub fn new(id: usize, volume: Interval, lower: f64, upper: f64) -> Result<Cell> {
        if !(lower.is_finite() && upper.is_finite()) || lower > upper {
            return domain(format!("cell {id}: bounds [{lower}, {upper}] are not an interval"));
        }
        if !(volume.is_positive() && volume.is_certifying()) {
            return domain(format!("cell {id}: volume {volume} must be positive and finite"));
        }
        Ok(Cell { id, volume, lower, upper })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CellMesh {
    dimension: u32,
    cells: Vec<Cell>,
    total_volume: Interval,
}

fn check_exponent(p: f64) -> Result<Interval> {
    if !(p >= 1.0 && p.is_finite()) {
        return domain(format!("norm exponent {p} must be finite and ≥ 1"));
    }
    Interval::ONE.checked_div(Interval::point(p))
}

/// `(Σ vol·v^p)^{1/p}` over the given (volume, value ≥ 0) pairs.
fn weighted_norm(items: impl Iterator<Item = (Interval, f64)>, p: f64) -> Result<Interval> {
    let inv = check_exponent(p)?;
    let exponent = Interval::point(p);
    let mut sum = Interval::ZERO;
    for (vol, v) in items {
        debug_assert!(v >= 0.0);
        if v > 0.0 {
            sum += vol * Interval::point(v).pow(exponent)?;
        }
    }
    if sum.hi() == 0.0 {
        return Ok(Interval::ZERO);
    }
    Interval::raw(sum.lo().max(0.0), sum.hi()).pow(inv)
}

impl CellMesh {
    pub fn new(dimension: u32, cells: Vec<Cell>) -> Result<CellMesh> {
        if dimension < 2 {
            return domain(format!("mesh dimension {dimension} < 2"));
        }
        if cells.is_empty() {
            return domain("mesh has no cells");
        }
        let total_volume = cells.iter().map(|c| c.volume).sum();
        Ok(CellMesh { dimension, cells, total_volume })
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn total_volume(&self) -> Interval {
        self.total_volume
    }

    /// `sup û₋ ≤ |minᵢ min{0, mᵢ}|`.
    pub fn minus_sup_upper(&self) -> Interval {
        let worst = self.cells.iter().map(|c| (-c.lower).max(0.0)).fold(0.0, f64::max);
        Interval::point(worst)
    }

    /// `|supp û₋| ≤ Σ_{mᵢ<0} |Kᵢ|`.
    pub fn minus_support_vol_upper(&self) -> Interval {
        self.cells.iter().filter(|c| c.lower < 0.0).map(|c| c.volume).sum()
    }

    /// `‖û₋‖_{L^p} ≤ (sup û₋)·|supp û₋|^{1/p}`.
    pub fn minus_norm_upper(&self, p: f64) -> Result<Interval> {
        let inv = check_exponent(p)?;
        let sup = self.minus_sup_upper();
        if sup.hi() == 0.0 {
            return Ok(Interval::ZERO);
        }
        Ok(sup * self.minus_support_vol_upper().pow(inv)?)
    }

    /// `|D(m)| ≤ Σ_{mᵢ ≤ m} |Kᵢ|`.
    pub fn dm_vol_upper(&self, m: f64) -> Interval {
        self.cells.iter().filter(|c| c.lower <= m).map(|c| c.volume).sum()
    }

    /// `‖û₊‖_{L^p(D(m))} ≥ (Σ_{Mᵢ ≤ m} |Kᵢ| max{0, mᵢ}^p)^{1/p}`; the `lo`
    /// endpoint is certified.
    pub fn plus_norm_lower(&self, p: f64, m: f64) -> Result<Interval> {
        let items = self.cells.iter().filter(|c| c.upper <= m).map(|c| (c.volume, c.lower.max(0.0)));
        weighted_norm(items, p)
    }

    /// `‖û‖_{L^p} ≤ (Σ |Kᵢ| max(|mᵢ|, |Mᵢ|)^p)^{1/p}`.
    pub fn uhat_norm_upper(&self, p: f64) -> Result<Interval> {
        let items = self.cells.iter().map(|c| (c.volume, c.lower.abs().max(c.upper.abs())));
        weighted_norm(items, p)
    }

    /// Writes `id,volume_lo,volume_hi,lower,upper` rows for plotting.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "id,volume_lo,volume_hi,lower,upper")?;
        for c in &self.cells {
            writeln!(out, "{},{:e},{:e},{:e},{:e}", c.id, c.volume.lo(), c.volume.hi(), c.lower, c.upper)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mesh(bounds: &[(f64, f64)], vol: f64) -> CellMesh {
        let cells =
            bounds.iter().enumerate().map(|(i, &(l, u))| Cell::new(i, Interval::point(vol), l, u).unwrap()).collect();
        CellMesh::new(2, cells).unwrap()
    }

    fn fixture() -> CellMesh {
        mesh(&[(-0.1, 0.0), (0.05, 0.15), (0.2, 0.35), (0.3, 0.5)], 0.25)
    }

    #[test]
    fn minus_sup() {
        assert_eq!(mesh(&[(0.0, 1.0), (0.5, 1.0)], 1.0).minus_sup_upper(), Interval::ZERO);
        assert!(mesh(&[(-0.1, 0.0), (0.05, 0.1)], 1.0).minus_sup_upper().contains(0.1));
        assert!(mesh(&[(-0.3, 0.0), (-0.1, 0.1)], 1.0).minus_sup_upper().contains(0.3));
    }

    #[test]
    fn minus_support() {
        assert_eq!(mesh(&[(0.0, 1.0)], 0.25).minus_support_vol_upper(), Interval::ZERO);
        assert!(mesh(&[(-1.0, 0.0), (-1.0, 0.0)], 0.25).minus_support_vol_upper().contains(0.5));
        assert!(fixture().minus_support_vol_upper().contains(0.25));
    }

    #[test]
    fn minus_norms() {
        assert_eq!(mesh(&[(0.0, 1.0)], 1.0).minus_norm_upper(2.0).unwrap(), Interval::ZERO);
        let m = fixture();
        assert!(m.minus_norm_upper(2.0).unwrap().contains(0.05));
        assert!(m.minus_norm_upper(4.0).unwrap().contains(0.07071067811865475));
        assert!(m.minus_norm_upper(0.5).is_err());
    }

    #[test]
    fn dm_volume() {
        let m = fixture();
        assert!(m.dm_vol_upper(0.1).contains(0.5));
        assert_eq!(m.dm_vol_upper(-1.0), Interval::ZERO);
        assert_eq!(m.dm_vol_upper(10.0), m.total_volume());
    }

    #[test]
    fn plus_norm() {
        let m = fixture();
        assert_eq!(m.plus_norm_lower(2.0, -1.0).unwrap(), Interval::ZERO);
        let v = m.plus_norm_lower(2.0, 0.4).unwrap();
        assert!(v.contains(0.10307764064044151));
        assert!(v.width() < 1e-15);
        let single = mesh(&[(0.3, 0.3)], 0.5);
        for p in [1.0, 2.0, 3.5] {
            let expected = 0.3 * 0.5f64.powf(1.0 / p);
            let got = single.plus_norm_lower(p, 0.3).unwrap();
            assert!((got.lo() - expected).abs() < 1e-15 && got.lo() <= expected * (1.0 + 1e-15));
        }
    }

    #[test]
    fn uhat_norm() {
        assert_eq!(mesh(&[(0.0, 0.0)], 1.0).uhat_norm_upper(2.0).unwrap(), Interval::ZERO);
        assert!(mesh(&[(-0.7, -0.7)], 1.0).uhat_norm_upper(3.0).unwrap().contains(0.7));
        assert!(mesh(&[(-1.0, 0.5), (0.0, 2.0)], 1.0).uhat_norm_upper(2.0).unwrap().contains(5f64.sqrt()));
    }

    #[test]
    fn invalid_cells_are_rejected() {
        assert!(Cell::new(0, Interval::ONE, 1.0, 0.0).is_err());
        assert!(Cell::new(0, Interval::ZERO, 0.0, 1.0).is_err());
        assert!(CellMesh::new(2, vec![]).is_err());
    }

    #[test]
    fn csv_has_one_row_per_cell() {
        let mut buf = Vec::new();
        fixture().write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 5);
    }
}

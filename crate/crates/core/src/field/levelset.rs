//! Discrete analogue of the level-set characterization: among cell subsets
//! whose weighted `L^q` mass `(Σ vᵢ^q volᵢ)^{1/q}` stays within `c`, the
//! largest total volume is attained by taking the smallest values first.
//!
//! These are plain floating-point helpers used as test oracles, not part of
//! any certified bound.

/// Indices sorted by value, ties broken by index.
fn ascending(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    idx
}

/// Relative slack on the mass budget, so that decimal data whose decimal sums
/// hit `c` exactly (0.1 + 0.2 against 0.3) count as feasible.
pub const BUDGET_SLACK: f64 = 1e-12;

fn budget(c: f64, q: f64) -> f64 {
    c.powf(q) * (1.0 + BUDGET_SLACK)
}

fn check(values: &[f64], volumes: &[f64], q: f64) {
    assert_eq!(values.len(), volumes.len(), "values and volumes differ in length");
    assert!(q >= 1.0, "q must be ≥ 1");
    assert!(values.iter().all(|v| *v >= 0.0), "values must be nonnegative");
}

/// Largest feasible subset volume by exhaustive search (at most 20 cells).
/// Sums are accumulated in ascending value order so that the result is
/// directly comparable with [`greedy_max_levelset`].
pub fn oracle_max_levelset(values: &[f64], volumes: &[f64], q: f64, c: f64) -> f64 {
    check(values, volumes, q);
    assert!(values.len() <= 20, "brute force is limited to 20 cells");
    let order = ascending(values);
    let budget = budget(c, q);
    let mut best = 0.0f64;
    for mask in 0u32..(1 << values.len()) {
        let (mut mass, mut vol) = (0.0, 0.0);
        for (k, &i) in order.iter().enumerate() {
            if mask & (1 << k) != 0 {
                mass += values[i].powf(q) * volumes[i];
                vol += volumes[i];
            }
        }
        if mass <= budget {
            best = best.max(vol);
        }
    }
    best
}

/// Takes whole cells in ascending value order while the mass stays within
/// `c^q`. Optimal when all cells have the same volume.
pub fn greedy_max_levelset(values: &[f64], volumes: &[f64], q: f64, c: f64) -> f64 {
    check(values, volumes, q);
    let budget = budget(c, q);
    let (mut mass, mut vol) = (0.0, 0.0);
    for i in ascending(values) {
        let next = mass + values[i].powf(q) * volumes[i];
        if next > budget {
            break;
        }
        mass = next;
        vol += volumes[i];
    }
    vol
}

/// Like [`greedy_max_levelset`] but takes the admissible fraction of the
/// first cell that does not fit: the continuous optimum, an upper bound of
/// every subset solution.
pub fn fractional_max_levelset(values: &[f64], volumes: &[f64], q: f64, c: f64) -> f64 {
    check(values, volumes, q);
    let budget = budget(c, q);
    let (mut mass, mut vol) = (0.0, 0.0);
    for i in ascending(values) {
        let w = values[i].powf(q);
        let next = mass + w * volumes[i];
        if next > budget {
            return vol + (budget - mass) / w;
        }
        mass = next;
        vol += volumes[i];
    }
    vol
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_example() {
        let v = [0.1, 0.2, 0.3];
        let vol = [1.0; 3];
        assert_eq!(oracle_max_levelset(&v, &vol, 1.0, 0.3), 2.0);
        assert_eq!(greedy_max_levelset(&v, &vol, 1.0, 0.3), 2.0);
    }

    #[test]
    fn extremes() {
        let v = [0.5, 0.1, 0.9];
        let vol = [0.25, 0.5, 0.25];
        assert_eq!(oracle_max_levelset(&v, &vol, 2.0, 10.0), 1.0);
        assert_eq!(oracle_max_levelset(&v, &vol, 2.0, 0.0), 0.0);
        assert_eq!(greedy_max_levelset(&v, &vol, 2.0, 0.0), 0.0);
    }

    #[test]
    fn greedy_is_not_optimal_for_unequal_volumes() {
        // Small cell with value 0.1 blocks a large one with value 0.11.
        let v = [0.1, 0.11];
        let vol = [0.1, 1.0];
        let c = 0.11;
        let brute = oracle_max_levelset(&v, &vol, 1.0, c);
        let greedy = greedy_max_levelset(&v, &vol, 1.0, c);
        assert_eq!(brute, 1.0);
        assert!(greedy < brute);
        assert!(fractional_max_levelset(&v, &vol, 1.0, c) >= brute);
    }
}

//! The discrete level-set problem: the largest cell volume whose weighted
//! L^q mass stays below c, by brute force and smallest-values-first.
//!
//! `cargo run --example levelset_oracle`

use posicert::field::levelset::{fractional_max_levelset, greedy_max_levelset, oracle_max_levelset};

fn main() {
    let values = [0.1, 0.2, 0.3];
    let unit = [1.0; 3];
    println!(
        "equal volumes:   brute force {}  greedy {}",
        oracle_max_levelset(&values, &unit, 1.0, 0.3),
        greedy_max_levelset(&values, &unit, 1.0, 0.3)
    );

    let values = [0.1, 0.11];
    let volumes = [0.1, 1.0];
    println!(
        "unequal volumes: brute force {}  greedy {}  fractional bound {:.4}",
        oracle_max_levelset(&values, &volumes, 1.0, 0.11),
        greedy_max_levelset(&values, &volumes, 1.0, 0.11),
        fractional_max_levelset(&values, &volumes, 1.0, 0.11)
    );
}

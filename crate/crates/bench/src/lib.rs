//! Shared inputs for the benchmarks in `benches/`.

use blw_core::lbm::LBMStructure;
use blw_core::search::random_lbm;
use blw_core::syntax::{parse_formula, Formula};

/// A nested formula over `p`, `q`, `r` with every connective.
pub fn sample_formula() -> Formula {
    parse_formula("((p -> q) & (q -> r) -> p * q | r) -> (r -> p) | (p -> r * q)").unwrap()
}

pub fn sample_structure(worlds: usize, denominator: u64) -> LBMStructure {
    let atoms: Vec<String> = ["p", "q", "r"].iter().map(|s| s.to_string()).collect();
    random_lbm(&atoms, worlds, denominator, 42)
}

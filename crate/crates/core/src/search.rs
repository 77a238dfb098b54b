//! Bounded countermodel search over finite frames and finite Łukasiewicz
//! value grids, seeded random structures and formulas, and soundness fuzzing
//! of natural-deduction proofs.
//!
//! A reported countermodel is a genuine one: grid values are values of the
//! standard MV-chain. `NoneFound` only means "valid up to the bounds".

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::lbm::{LBMStructure, Verdict};
use crate::mv::{MVValue, SlopingFunction};
use crate::nd::{check_nd, NDProof, NdError};
use crate::syntax::{Formula, Sequent};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_worlds: usize,
    pub max_denominator: u64,
}

impl SearchBounds {
    /// Panics unless both bounds are at least one.
    pub fn new(max_worlds: usize, max_denominator: u64) -> Self {
        assert!(
            max_worlds >= 1 && max_denominator >= 1,
            "search bounds must be at least 1"
        );
        SearchBounds {
            max_worlds,
            max_denominator,
        }
    }
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds::new(3, 4)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Countermodel {
        structure: LBMStructure,
        world: usize,
        lhs: MVValue,
        rhs: MVValue,
    },
    NoneFound {
        bounds: SearchBounds,
        structures_checked: u64,
    },
}

impl SearchOutcome {
    pub fn is_countermodel(&self) -> bool {
        matches!(self, SearchOutcome::Countermodel { .. })
    }
}

/// All sloping functions on `k` worlds with values in `{0, 1/n, ..., 1}`:
/// the all-zero function first, then one step function per
/// `(position, value)` in lexicographic order. There are `1 + k*n` of them.
pub fn enumerate_sloping(k: usize, n: u64) -> impl Iterator<Item = SlopingFunction> {
    assert!(k >= 1 && n >= 1, "frame size and denominator must be positive");
    std::iter::once(SlopingFunction::bottom(k)).chain((0..k).flat_map(move |pos| {
        (1..=n).map(move |a| {
            SlopingFunction::step(k, pos, MVValue::frac(a, n)).expect("step is sloping")
        })
    }))
}

fn structure_at(
    atoms: &[String],
    candidates: &[SlopingFunction],
    k: usize,
    mut index: u64,
) -> LBMStructure {
    let base = candidates.len() as u64;
    let mut chosen = vec![0usize; atoms.len()];
    // the last atom varies fastest
    for slot in chosen.iter_mut().rev() {
        *slot = (index % base) as usize;
        index /= base;
    }
    let valuation: BTreeMap<String, SlopingFunction> = atoms
        .iter()
        .zip(chosen)
        .map(|(a, i)| (a.clone(), candidates[i].clone()))
        .collect();
    LBMStructure::new(k, valuation).expect("enumerated valuations fit the frame")
}

/// Searches frames of `1..=max_worlds` worlds and, within each, grids of
/// denominator `1..=max_denominator`, trying every assignment of enumerated
/// sloping functions to the sequent's atoms. Returns the first failure in
/// that order. Runs on the current rayon pool; the result does not depend on
/// the number of threads.
pub fn find_countermodel(s: &Sequent, bounds: SearchBounds) -> SearchOutcome {
    let atoms = s.atoms();
    if atoms.is_empty() {
        let m = LBMStructure::new(1, BTreeMap::new()).expect("one world");
        return match m.holds(s).expect("closed sequent") {
            Verdict::Holds => SearchOutcome::NoneFound {
                bounds,
                structures_checked: 1,
            },
            Verdict::FailsAt { world, lhs, rhs } => SearchOutcome::Countermodel {
                structure: m,
                world,
                lhs,
                rhs,
            },
        };
    }
    let mut checked = 0u64;
    for k in 1..=bounds.max_worlds {
        for n in 1..=bounds.max_denominator {
            let candidates: Vec<SlopingFunction> = enumerate_sloping(k, n).collect();
            let total = (candidates.len() as u64)
                .checked_pow(atoms.len() as u32)
                .expect("search space fits in u64");
            let hit = (0..total).into_par_iter().find_map_first(|i| {
                let m = structure_at(&atoms, &candidates, k, i);
                match m.holds(s).expect("all atoms assigned") {
                    Verdict::Holds => None,
                    Verdict::FailsAt { world, lhs, rhs } => Some(SearchOutcome::Countermodel {
                        structure: m,
                        world,
                        lhs,
                        rhs,
                    }),
                }
            });
            if let Some(found) = hit {
                return found;
            }
            checked += total;
        }
    }
    SearchOutcome::NoneFound {
        bounds,
        structures_checked: checked,
    }
}

/// Each atom gets an independent uniform choice among the `1 + k*n`
/// enumerated sloping functions.
pub fn random_lbm(atoms: &[String], k: usize, n: u64, seed: u64) -> LBMStructure {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_lbm_with(atoms, k, n, &mut rng)
}

pub fn random_lbm_with<R: Rng>(atoms: &[String], k: usize, n: u64, rng: &mut R) -> LBMStructure {
    let candidates: Vec<SlopingFunction> = enumerate_sloping(k, n).collect();
    let valuation = atoms
        .iter()
        .map(|a| {
            let i = rng.random_range(0..candidates.len());
            (a.clone(), candidates[i].clone())
        })
        .collect();
    LBMStructure::new(k, valuation).expect("enumerated valuations fit the frame")
}

/// A random formula of depth at most `max_depth` over `atoms`. Constants
/// appear occasionally; `*` only when `allow_tensor` is set.
pub fn random_formula<R: Rng>(
    atoms: &[String],
    max_depth: usize,
    allow_tensor: bool,
    rng: &mut R,
) -> Formula {
    if max_depth == 0 || rng.random_bool(0.25) {
        return match rng.random_range(0..10) {
            0 => Formula::Bottom,
            1 => Formula::Top,
            _ => Formula::Atom(atoms[rng.random_range(0..atoms.len())].clone()),
        };
    }
    let l = random_formula(atoms, max_depth - 1, allow_tensor, rng);
    let r = random_formula(atoms, max_depth - 1, allow_tensor, rng);
    let ops = if allow_tensor { 4 } else { 3 };
    match rng.random_range(0..ops) {
        0 => Formula::implies(l, r),
        1 => Formula::and(l, r),
        2 => Formula::or(l, r),
        _ => Formula::tensor(l, r),
    }
}

// ---------------------------------------------------------------------------
// Soundness fuzzing

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzWitness {
    pub sequent: Sequent,
    pub structure: LBMStructure,
    pub world: usize,
    pub lhs: MVValue,
    pub rhs: MVValue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzReport {
    pub trials: usize,
    pub sequents_checked: u64,
    pub failed_witness: Option<FuzzWitness>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.failed_witness.is_none()
    }
}

/// Checks the proof, then evaluates every node's sequent on `trials` random
/// structures within `bounds`.
pub fn soundness_fuzz(
    p: &NDProof,
    trials: usize,
    bounds: SearchBounds,
    seed: u64,
) -> Result<FuzzReport, NdError> {
    check_nd(p)?;
    Ok(soundness_fuzz_unchecked(p, trials, bounds, seed))
}

/// Like [`soundness_fuzz`] without checking the proof first; for negative
/// controls and for reporting semantic witnesses against rejected proofs.
pub fn soundness_fuzz_unchecked(
    p: &NDProof,
    trials: usize,
    bounds: SearchBounds,
    seed: u64,
) -> FuzzReport {
    let mut sequents: Vec<&Sequent> = Vec::new();
    for node in p.nodes() {
        if !sequents.contains(&&node.sequent) {
            sequents.push(&node.sequent);
        }
    }
    let mut atoms: Vec<String> = Vec::new();
    for s in &sequents {
        for a in s.atoms() {
            if !atoms.contains(&a) {
                atoms.push(a);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0u64;
    for _ in 0..trials {
        let k = rng.random_range(1..=bounds.max_worlds);
        let n = rng.random_range(1..=bounds.max_denominator);
        let m = random_lbm_with(&atoms, k, n, &mut rng);
        for s in &sequents {
            checked += 1;
            if let Verdict::FailsAt { world, lhs, rhs } = m.holds(s).expect("all atoms assigned") {
                return FuzzReport {
                    trials,
                    sequents_checked: checked,
                    failed_witness: Some(FuzzWitness {
                        sequent: (*s).clone(),
                        structure: m,
                        world,
                        lhs,
                        rhs,
                    }),
                };
            }
        }
    }
    FuzzReport {
        trials,
        sequents_checked: checked,
        failed_witness: None,
    }
}

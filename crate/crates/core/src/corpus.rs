//! Bundled example proofs: ten Hilbert-style proofs, and a seeded generator
//! of natural-deduction proofs with nonempty contexts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::axioms::AxiomId;
use crate::hilbert::{parse_hilbert, HilbertProof};
use crate::nd::{self, NDProof};
use crate::search::random_formula;
use crate::syntax::Formula;

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        [$(($name, include_str!(concat!("../corpus/hilbert/", $name, ".json")))),*]
    };
}

/// `(name, JSON text)` of every bundled Hilbert proof.
pub const HILBERT_FILES: [(&str, &str); 10] = bundled!(
    "01_identity",
    "02_tensor_projection",
    "03_tensor_pairing",
    "04_weakening",
    "05_conjunction_left",
    "06_bottom_disjunction",
    "07_prelinearity",
    "08_tensor_swap_twice",
    "09_curry_roundtrip",
    "10_conjunction_right",
);

pub fn hilbert_corpus() -> Vec<(&'static str, HilbertProof)> {
    HILBERT_FILES
        .iter()
        .map(|(name, text)| {
            let p = parse_hilbert(text).unwrap_or_else(|e| panic!("bundled proof {name}: {e}"));
            (*name, p)
        })
        .collect()
}

/// `count` checked ND proofs, each with at least two context formulas:
/// an axiom template at random small formulas, with up to two implication
/// premises moved into the context and weakenings to fill the rest.
pub fn nd_corpus(count: usize, seed: u64) -> Vec<NDProof> {
    let atoms: Vec<String> = ["p", "q", "r"].iter().map(|s| s.to_string()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let id = AxiomId::ALL[rng.random_range(0..AxiomId::ALL.len())];
            let pick = |rng: &mut ChaCha8Rng| random_formula(&atoms, 2, true, rng);
            let (phi, psi, chi) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let mut p = nd::axiom_derivation(id, &phi, &psi, &chi);
            for _ in 0..rng.random_range(0..=2) {
                if !matches!(p.sequent.conclusion, Formula::Implies(..)) {
                    break;
                }
                p = nd::uncurry(p).expect("conclusion is an implication");
            }
            while p.sequent.context.len() < 2 {
                p = nd::weaken(p, pick(&mut rng));
            }
            p
        })
        .collect()
}

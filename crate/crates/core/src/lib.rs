//! Basic Logic over linear Kripke frames whose worlds carry values of the
//! standard MV-chain.
//!
//! Formulas are evaluated in linear structures with sloping valuations
//! ([`lbm`]), or equivalently as elements of a poset product of MV-chains
//! ([`poset`]). Proofs are checked in a sequent-style natural deduction
//! system ([`nd`]) or a Hilbert system ([`hilbert`]), and bounded search
//! looks for countermodels ([`search`]).

pub mod axioms;
pub mod corpus;
pub mod hilbert;
pub mod lbm;
pub mod mv;
pub mod nd;
pub mod poset;
pub mod search;
pub mod syntax;

pub use axioms::{match_schema, AxiomId, Substitution};
pub use hilbert::{
    check_hilbert, hilbert_to_nd, match_axiom, parse_hilbert, HilbertError, HilbertProof,
    Justification,
};
pub use lbm::{
    classical_eval, embed_classical, eval, formula_profile, holds, ClassicalLinearKripke,
    LBMStructure, LbmError, ModelFile, Verdict,
};
pub use mv::{
    floored_inf, mv_and, mv_floor, mv_impl, mv_or, mv_otimes, slope_check, slope_combine,
    slope_compare, MVValue, MvError, PointwiseOp, SlopeOrdering, SlopingFunction,
};
pub use nd::{check_nd, parse_proof, NDProof, NdError, Rule};
pub use poset::{agree_with_lbm, denote, pp_impl, pp_valid, AtomAssignment, PosetProductAlgebra};
pub use search::{
    enumerate_sloping, find_countermodel, random_lbm, soundness_fuzz, FuzzReport, SearchBounds,
    SearchOutcome,
};
pub use syntax::{parse_formula, parse_sequent, Formula, ParseError, Sequent};

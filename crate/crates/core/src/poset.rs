//! The algebra of sloping functions over a finite chain with standard
//! MV-chain components: pointwise lattice and monoid operations and a guarded
//! residual. Formulas denote elements of this algebra under an assignment of
//! elements to atoms.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::lbm::{LBMStructure, LbmError};
use crate::mv::{slope_combine, MVValue, MvError, PointwiseOp, SlopingFunction};
use crate::syntax::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error(transparent)]
    Mv(#[from] MvError),
    #[error(transparent)]
    Lbm(#[from] LbmError),
    #[error("assignment value for `{atom}` has size {found}, expected {expected}")]
    WrongSize {
        atom: String,
        found: usize,
        expected: usize,
    },
}

/// Atom-to-element map.
pub type AtomAssignment = BTreeMap<String, SlopingFunction>;

/// The poset product over the chain `0 < 1 < ... < k-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PosetProductAlgebra {
    size: usize,
}

impl PosetProductAlgebra {
    pub fn new(size: usize) -> Result<Self, PosetError> {
        if size == 0 {
            return Err(MvError::EmptyFrame.into());
        }
        Ok(PosetProductAlgebra { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn bottom(&self) -> SlopingFunction {
        SlopingFunction::bottom(self.size)
    }

    pub fn top(&self) -> SlopingFunction {
        SlopingFunction::top(self.size)
    }

    pub fn meet(&self, f: &SlopingFunction, g: &SlopingFunction) -> Result<SlopingFunction, PosetError> {
        Ok(slope_combine(f, g, PointwiseOp::And)?)
    }

    pub fn join(&self, f: &SlopingFunction, g: &SlopingFunction) -> Result<SlopingFunction, PosetError> {
        Ok(slope_combine(f, g, PointwiseOp::Or)?)
    }

    pub fn otimes(&self, f: &SlopingFunction, g: &SlopingFunction) -> Result<SlopingFunction, PosetError> {
        Ok(slope_combine(f, g, PointwiseOp::Otimes)?)
    }

    pub fn residual(&self, f: &SlopingFunction, g: &SlopingFunction) -> Result<SlopingFunction, PosetError> {
        pp_impl(f, g)
    }
}

fn same_size(f: &SlopingFunction, g: &SlopingFunction) -> Result<(), MvError> {
    if f.size() == g.size() {
        Ok(())
    } else {
        Err(MvError::SizeMismatch(f.size(), g.size()))
    }
}

/// Residual in floored-infimum form: at `w`, the floored infimum over `v >= w`
/// of `f(v) -> g(v)`.
pub fn pp_impl(f: &SlopingFunction, g: &SlopingFunction) -> Result<SlopingFunction, PosetError> {
    same_size(f, g)?;
    let pointwise: Vec<MVValue> = f
        .values()
        .iter()
        .zip(g.values())
        .map(|(&a, &b)| a.implies(b))
        .collect();
    Ok(SlopingFunction::floored(&pointwise)?)
}

/// Residual in guarded form: `f(w) -> g(w)` when `f(v) <= g(v)` at every
/// strictly later `v`, else `0`.
pub fn pp_impl_guarded(
    f: &SlopingFunction,
    g: &SlopingFunction,
) -> Result<SlopingFunction, PosetError> {
    same_size(f, g)?;
    let k = f.size();
    let values = (0..k)
        .map(|w| {
            let guarded = (w + 1..k).all(|v| f.at(v) <= g.at(v));
            if guarded {
                f.at(w).implies(g.at(w))
            } else {
                MVValue::ZERO
            }
        })
        .collect();
    Ok(SlopingFunction::new(values)?)
}

fn check_assignment(h: &AtomAssignment, size: usize) -> Result<(), PosetError> {
    for (atom, f) in h {
        if f.size() != size {
            return Err(PosetError::WrongSize {
                atom: atom.clone(),
                found: f.size(),
                expected: size,
            });
        }
    }
    Ok(())
}

fn assignment_size(h: &AtomAssignment, f: &Formula) -> Result<usize, PosetError> {
    let atoms = f.atoms();
    match atoms.first() {
        Some(a) => h
            .get(a)
            .map(SlopingFunction::size)
            .ok_or_else(|| MvError::UnassignedAtom(a.clone()).into()),
        // closed formulas take the frame size from any assigned atom, else one world
        None => Ok(h.values().next().map_or(1, SlopingFunction::size)),
    }
}

/// The element a formula denotes under `h`.
pub fn denote(h: &AtomAssignment, f: &Formula) -> Result<SlopingFunction, PosetError> {
    let size = assignment_size(h, f)?;
    check_assignment(h, size)?;
    let algebra = PosetProductAlgebra::new(size)?;
    denote_in(&algebra, h, f)
}

fn denote_in(
    algebra: &PosetProductAlgebra,
    h: &AtomAssignment,
    f: &Formula,
) -> Result<SlopingFunction, PosetError> {
    Ok(match f {
        Formula::Atom(name) => h
            .get(name)
            .cloned()
            .ok_or_else(|| MvError::UnassignedAtom(name.clone()))?,
        Formula::Bottom => algebra.bottom(),
        Formula::Top => algebra.top(),
        Formula::And(l, r) => algebra.meet(&denote_in(algebra, h, l)?, &denote_in(algebra, h, r)?)?,
        Formula::Or(l, r) => algebra.join(&denote_in(algebra, h, l)?, &denote_in(algebra, h, r)?)?,
        Formula::Tensor(l, r) => {
            algebra.otimes(&denote_in(algebra, h, l)?, &denote_in(algebra, h, r)?)?
        }
        Formula::Implies(l, r) => {
            algebra.residual(&denote_in(algebra, h, l)?, &denote_in(algebra, h, r)?)?
        }
    })
}

/// `true` iff `f` denotes the top element under `h`.
pub fn pp_valid(h: &AtomAssignment, f: &Formula) -> Result<bool, PosetError> {
    Ok(denote(h, f)?.is_top())
}

/// The LBM structure whose atom valuations are the assigned elements.
pub fn induced_structure(h: &AtomAssignment, size: usize) -> Result<LBMStructure, PosetError> {
    Ok(LBMStructure::new(size, h.clone())?)
}

/// Whether `denote(h, f)` coincides with the Kripke profile of `f` in the
/// induced structure at every world.
pub fn agree_with_lbm(h: &AtomAssignment, f: &Formula) -> Result<bool, PosetError> {
    let algebraic = denote(h, f)?;
    let m = induced_structure(h, algebraic.size())?;
    let kripke: Vec<MVValue> = (0..m.worlds())
        .map(|w| m.eval(w, f))
        .collect::<Result<_, _>>()?;
    Ok(algebraic.values() == kripke.as_slice())
}

//! Finite linear Kripke structures whose atoms take sloping MV-chain
//! valuations, formula evaluation over them, sequent satisfaction, and the
//! embedding of ordinary (boolean, persistent) linear Kripke structures.
//!
//! Worlds are `0..k`, with `i` below `j` in the frame iff `i < j`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mv::{self, MVValue, MvError, SlopingFunction};
use crate::syntax::{Formula, Sequent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LbmError {
    #[error(transparent)]
    Mv(#[from] MvError),
    #[error("world {world} out of range for a frame of {worlds} worlds")]
    WorldOutOfRange { world: usize, worlds: usize },
    #[error("no valuation for atom `{0}`")]
    UnassignedAtom(String),
    #[error("valuation of `{atom}` has {len} entries, expected {worlds}")]
    WrongLength {
        atom: String,
        len: usize,
        worlds: usize,
    },
    #[error("truth of `{0}` is not persistent along the frame")]
    NotPersistent(String),
    #[error("`{0}` contains `*`, which has no classical Kripke clause")]
    TensorInClassical(String),
    #[error("invalid model file: {0}")]
    Model(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LBMStructure {
    worlds: usize,
    valuation: BTreeMap<String, SlopingFunction>,
}

impl LBMStructure {
    pub fn new(
        worlds: usize,
        valuation: BTreeMap<String, SlopingFunction>,
    ) -> Result<Self, LbmError> {
        if worlds == 0 {
            return Err(MvError::EmptyFrame.into());
        }
        for (atom, f) in &valuation {
            if f.size() != worlds {
                return Err(LbmError::WrongLength {
                    atom: atom.clone(),
                    len: f.size(),
                    worlds,
                });
            }
        }
        Ok(LBMStructure { worlds, valuation })
    }

    /// Builds a structure from raw value rows, validating the sloping condition.
    pub fn from_rows<S: Into<String>>(
        worlds: usize,
        rows: impl IntoIterator<Item = (S, Vec<MVValue>)>,
    ) -> Result<Self, LbmError> {
        let mut valuation = BTreeMap::new();
        for (atom, values) in rows {
            let atom = atom.into();
            if values.len() != worlds {
                return Err(LbmError::WrongLength {
                    atom,
                    len: values.len(),
                    worlds,
                });
            }
            valuation.insert(atom, SlopingFunction::new(values)?);
        }
        LBMStructure::new(worlds, valuation)
    }

    pub fn worlds(&self) -> usize {
        self.worlds
    }

    pub fn valuation(&self) -> &BTreeMap<String, SlopingFunction> {
        &self.valuation
    }

    fn atom_profile(&self, name: &str) -> Result<&SlopingFunction, LbmError> {
        self.valuation
            .get(name)
            .ok_or_else(|| LbmError::UnassignedAtom(name.to_string()))
    }

    fn check_world(&self, w: usize) -> Result<(), LbmError> {
        if w < self.worlds {
            Ok(())
        } else {
            Err(LbmError::WorldOutOfRange {
                world: w,
                worlds: self.worlds,
            })
        }
    }

    /// Value of `f` at world `w`.
    pub fn eval(&self, w: usize, f: &Formula) -> Result<MVValue, LbmError> {
        self.check_world(w)?;
        self.eval_unchecked(w, f)
    }

    // The implication clause only looks at worlds at or above `w`, so each
    // call restricts itself to the suffix `w..k`.
    fn eval_unchecked(&self, w: usize, f: &Formula) -> Result<MVValue, LbmError> {
        Ok(match f {
            Formula::Atom(name) => self.atom_profile(name)?.at(w),
            Formula::Bottom => MVValue::ZERO,
            Formula::Top => MVValue::ONE,
            Formula::And(l, r) => self.eval_unchecked(w, l)?.and(self.eval_unchecked(w, r)?),
            Formula::Or(l, r) => self.eval_unchecked(w, l)?.or(self.eval_unchecked(w, r)?),
            Formula::Tensor(l, r) => self
                .eval_unchecked(w, l)?
                .otimes(self.eval_unchecked(w, r)?),
            Formula::Implies(l, r) => {
                let pointwise = (w..self.worlds)
                    .map(|v| Ok(self.eval_unchecked(v, l)?.implies(self.eval_unchecked(v, r)?)))
                    .collect::<Result<Vec<_>, LbmError>>()?;
                mv::floored_inf(&pointwise, 0)?
            }
        })
    }

    /// `[eval(0, f), ..., eval(k-1, f)]`, computed bottom-up in one pass over
    /// the formula.
    pub fn formula_profile(&self, f: &Formula) -> Result<SlopingFunction, LbmError> {
        Ok(SlopingFunction::new(self.profile_values(f)?)?)
    }

    fn profile_values(&self, f: &Formula) -> Result<Vec<MVValue>, LbmError> {
        let k = self.worlds;
        let zip = |l: &Formula, r: &Formula, op: fn(MVValue, MVValue) -> MVValue| {
            let (a, b) = (self.profile_values(l)?, self.profile_values(r)?);
            Ok::<_, LbmError>(a.into_iter().zip(b).map(|(x, y)| op(x, y)).collect::<Vec<_>>())
        };
        Ok(match f {
            Formula::Atom(name) => self.atom_profile(name)?.values().to_vec(),
            Formula::Bottom => vec![MVValue::ZERO; k],
            Formula::Top => vec![MVValue::ONE; k],
            Formula::And(l, r) => zip(l, r, mv::mv_and)?,
            Formula::Or(l, r) => zip(l, r, mv::mv_or)?,
            Formula::Tensor(l, r) => zip(l, r, mv::mv_otimes)?,
            Formula::Implies(l, r) => mv::floored_inf_profile(&zip(l, r, mv::mv_impl)?),
        })
    }

    /// Checks `Γ |- φ`: at every world the `*`-fold of the context is below
    /// the conclusion. An empty context folds to `top`.
    pub fn holds(&self, s: &Sequent) -> Result<Verdict, LbmError> {
        let lhs = self.profile_values(&Formula::tensor_all(&s.context))?;
        let rhs = self.profile_values(&s.conclusion)?;
        Ok(lhs
            .into_iter()
            .zip(rhs)
            .enumerate()
            .find(|(_, (l, r))| l > r)
            .map_or(Verdict::Holds, |(world, (lhs, rhs))| Verdict::FailsAt {
                world,
                lhs,
                rhs,
            }))
    }

    /// Values of every atom at `w`, for single-world comparisons.
    pub fn assignment_at(&self, w: usize) -> mv::Assignment {
        self.valuation
            .iter()
            .map(|(a, f)| (a.clone(), f.at(w)))
            .collect()
    }
}

/// Outcome of checking a sequent in one structure. `FailsAt` names the least
/// world where the context exceeds the conclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    FailsAt {
        world: usize,
        lhs: MVValue,
        rhs: MVValue,
    },
}

impl Verdict {
    pub fn is_holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

pub fn eval(m: &LBMStructure, w: usize, f: &Formula) -> Result<MVValue, LbmError> {
    m.eval(w, f)
}

pub fn formula_profile(m: &LBMStructure, f: &Formula) -> Result<SlopingFunction, LbmError> {
    m.formula_profile(f)
}

pub fn holds(m: &LBMStructure, s: &Sequent) -> Result<Verdict, LbmError> {
    m.holds(s)
}

// ---------------------------------------------------------------------------
// Boolean linear Kripke structures

/// A linear Kripke structure: each atom is false up to some world and true
/// from there on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalLinearKripke {
    worlds: usize,
    truth: BTreeMap<String, Vec<bool>>,
}

impl ClassicalLinearKripke {
    pub fn new(worlds: usize, truth: BTreeMap<String, Vec<bool>>) -> Result<Self, LbmError> {
        if worlds == 0 {
            return Err(MvError::EmptyFrame.into());
        }
        for (atom, row) in &truth {
            if row.len() != worlds {
                return Err(LbmError::WrongLength {
                    atom: atom.clone(),
                    len: row.len(),
                    worlds,
                });
            }
            if row.windows(2).any(|w| w[0] && !w[1]) {
                return Err(LbmError::NotPersistent(atom.clone()));
            }
        }
        Ok(ClassicalLinearKripke { worlds, truth })
    }

    pub fn worlds(&self) -> usize {
        self.worlds
    }

    pub fn truth(&self) -> &BTreeMap<String, Vec<bool>> {
        &self.truth
    }

    /// Intuitionistic forcing at world `w`; `->` quantifies over `v >= w`.
    pub fn eval(&self, w: usize, f: &Formula) -> Result<bool, LbmError> {
        if w >= self.worlds {
            return Err(LbmError::WorldOutOfRange {
                world: w,
                worlds: self.worlds,
            });
        }
        if f.contains_tensor() {
            return Err(LbmError::TensorInClassical(f.to_string()));
        }
        self.force(w, f)
    }

    fn force(&self, w: usize, f: &Formula) -> Result<bool, LbmError> {
        Ok(match f {
            Formula::Atom(name) => self
                .truth
                .get(name)
                .ok_or_else(|| LbmError::UnassignedAtom(name.clone()))?[w],
            Formula::Bottom => false,
            Formula::Top => true,
            Formula::And(l, r) => self.force(w, l)? && self.force(w, r)?,
            Formula::Or(l, r) => self.force(w, l)? || self.force(w, r)?,
            Formula::Implies(l, r) => {
                for v in w..self.worlds {
                    if self.force(v, l)? && !self.force(v, r)? {
                        return Ok(false);
                    }
                }
                true
            }
            Formula::Tensor(..) => unreachable!("rejected before forcing"),
        })
    }
}

pub fn classical_eval(
    c: &ClassicalLinearKripke,
    w: usize,
    f: &Formula,
) -> Result<bool, LbmError> {
    c.eval(w, f)
}

/// Reads a persistent boolean structure as an LBM structure with values in `{0, 1}`.
pub fn embed_classical(c: &ClassicalLinearKripke) -> LBMStructure {
    let valuation = c
        .truth
        .iter()
        .map(|(atom, row)| {
            let values = row
                .iter()
                .map(|&b| if b { MVValue::ONE } else { MVValue::ZERO })
                .collect();
            (atom.clone(), SlopingFunction::from_values_unchecked(values))
        })
        .collect();
    LBMStructure {
        worlds: c.worlds,
        valuation,
    }
}

// ---------------------------------------------------------------------------
// Model files

/// On-disk model: `{"worlds": k, "denominator": n, "valuation": {"p": [..]}}`
/// where each entry is a numerator over `denominator`. Countermodels carry an
/// extra `world` field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub worlds: usize,
    pub denominator: u64,
    pub valuation: BTreeMap<String, Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub world: Option<usize>,
}

impl ModelFile {
    pub fn to_structure(&self) -> Result<LBMStructure, LbmError> {
        if self.denominator == 0 {
            return Err(LbmError::Model("denominator must be positive".into()));
        }
        let mut rows = Vec::new();
        for (atom, nums) in &self.valuation {
            if !crate::syntax::is_identifier(atom) {
                return Err(LbmError::Model(format!("invalid atom name {atom:?}")));
            }
            let values = nums
                .iter()
                .map(|&a| {
                    MVValue::new(a, self.denominator).map_err(|_| {
                        LbmError::Model(format!(
                            "entry {a} of `{atom}` is outside [0, {}]",
                            self.denominator
                        ))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push((atom.clone(), values));
        }
        let m = LBMStructure::from_rows(self.worlds, rows)?;
        if let Some(w) = self.world {
            m.check_world(w)?;
        }
        Ok(m)
    }

    /// Writes `m` over the least common denominator of its values.
    pub fn from_structure(m: &LBMStructure, world: Option<usize>) -> ModelFile {
        let denominator = m
            .valuation
            .values()
            .flat_map(|f| f.values())
            .fold(1u64, |acc, v| lcm(acc, v.denom()));
        let valuation = m
            .valuation
            .iter()
            .map(|(atom, f)| {
                let nums = f
                    .values()
                    .iter()
                    .map(|v| v.numer() * (denominator / v.denom()))
                    .collect();
                (atom.clone(), nums)
            })
            .collect();
        ModelFile {
            worlds: m.worlds,
            denominator,
            valuation,
            world,
        }
    }

    pub fn parse(text: &str) -> Result<ModelFile, LbmError> {
        serde_json::from_str(text).map_err(|e| LbmError::Model(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

//! The fourteen axiom schemas of the Hilbert system and one-sided schema
//! matching against concrete formulas.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::syntax::{parse_formula, Formula};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomId {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    A8,
    A9,
    A10,
    A11,
    A12,
    A13,
    A14,
}

impl AxiomId {
    pub const ALL: [AxiomId; 14] = [
        AxiomId::A1,
        AxiomId::A2,
        AxiomId::A3,
        AxiomId::A4,
        AxiomId::A5,
        AxiomId::A6,
        AxiomId::A7,
        AxiomId::A8,
        AxiomId::A9,
        AxiomId::A10,
        AxiomId::A11,
        AxiomId::A12,
        AxiomId::A13,
        AxiomId::A14,
    ];

    pub fn index(self) -> usize {
        self as usize + 1
    }

    /// Schema text; every atom in it is a metavariable (`phi`, `psi`, `chi`).
    pub fn schema_text(self) -> &'static str {
        match self {
            AxiomId::A1 => "phi -> phi",
            AxiomId::A2 => "(phi -> psi) -> (psi -> chi) -> phi -> chi",
            AxiomId::A3 => "phi * psi -> psi * phi",
            AxiomId::A4 => "phi * psi -> psi",
            AxiomId::A5 => "(phi -> psi -> chi) -> phi * psi -> chi",
            AxiomId::A6 => "(phi * psi -> chi) -> phi -> psi -> chi",
            AxiomId::A7 => "phi * (phi -> psi) -> phi & psi",
            AxiomId::A8 => "phi & psi -> phi * (phi -> psi)",
            AxiomId::A9 => "phi & psi -> psi & phi",
            AxiomId::A10 => "phi -> phi | psi",
            AxiomId::A11 => "psi -> phi | psi",
            AxiomId::A12 => "(phi -> psi) & (chi -> psi) -> phi | chi -> psi",
            AxiomId::A13 => "bot -> phi",
            AxiomId::A14 => "(phi -> psi) | (psi -> phi)",
        }
    }

    pub fn schema(self) -> &'static Formula {
        static SCHEMAS: OnceLock<Vec<Formula>> = OnceLock::new();
        let all = SCHEMAS.get_or_init(|| {
            AxiomId::ALL
                .iter()
                .map(|id| parse_formula(id.schema_text()).expect("schema parses"))
                .collect()
        });
        &all[self as usize]
    }

    /// The schema with `phi`, `psi`, `chi` replaced by the given formulas.
    pub fn instance(self, phi: &Formula, psi: &Formula, chi: &Formula) -> Formula {
        let subst = Substitution {
            phi: Some(phi.clone()),
            psi: Some(psi.clone()),
            chi: Some(chi.clone()),
        };
        subst.apply(self.schema())
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}", self.index())
    }
}

impl FromStr for AxiomId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.strip_prefix('A')
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|n| (1..=14).contains(n))
            .map(|n| AxiomId::ALL[n - 1])
            .ok_or_else(|| format!("unknown axiom {s:?}"))
    }
}

/// Bindings for the three metavariables; unused ones stay `None`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    pub phi: Option<Formula>,
    pub psi: Option<Formula>,
    pub chi: Option<Formula>,
}

impl Substitution {
    fn slot(&mut self, meta: &str) -> &mut Option<Formula> {
        match meta {
            "phi" => &mut self.phi,
            "psi" => &mut self.psi,
            "chi" => &mut self.chi,
            other => unreachable!("schemas only use phi, psi, chi; found {other}"),
        }
    }

    fn apply(&self, schema: &Formula) -> Formula {
        match schema {
            Formula::Atom(meta) => {
                let bound = match meta.as_str() {
                    "phi" => &self.phi,
                    "psi" => &self.psi,
                    _ => &self.chi,
                };
                bound.clone().unwrap_or(Formula::Top)
            }
            Formula::Bottom => Formula::Bottom,
            Formula::Top => Formula::Top,
            Formula::And(l, r) => Formula::and(self.apply(l), self.apply(r)),
            Formula::Or(l, r) => Formula::or(self.apply(l), self.apply(r)),
            Formula::Tensor(l, r) => Formula::tensor(self.apply(l), self.apply(r)),
            Formula::Implies(l, r) => Formula::implies(self.apply(l), self.apply(r)),
        }
    }

    /// The bindings as `(phi, psi, chi)`, with `top` for unused slots.
    pub fn triple(&self) -> (Formula, Formula, Formula) {
        let get = |f: &Option<Formula>| f.clone().unwrap_or(Formula::Top);
        (get(&self.phi), get(&self.psi), get(&self.chi))
    }
}

fn match_into(pattern: &Formula, target: &Formula, subst: &mut Substitution) -> bool {
    match (pattern, target) {
        (Formula::Atom(meta), _) => {
            let slot = subst.slot(meta);
            match slot {
                Some(bound) => bound == target,
                None => {
                    *slot = Some(target.clone());
                    true
                }
            }
        }
        (Formula::Bottom, Formula::Bottom) | (Formula::Top, Formula::Top) => true,
        (Formula::And(a, b), Formula::And(c, d))
        | (Formula::Or(a, b), Formula::Or(c, d))
        | (Formula::Tensor(a, b), Formula::Tensor(c, d))
        | (Formula::Implies(a, b), Formula::Implies(c, d)) => {
            match_into(a, c, subst) && match_into(b, d, subst)
        }
        _ => false,
    }
}

/// Matches `f` against one schema.
pub fn match_schema(id: AxiomId, f: &Formula) -> Option<Substitution> {
    let mut subst = Substitution::default();
    match_into(id.schema(), f, &mut subst).then_some(subst)
}

/// Every schema `f` is an instance of, in id order.
pub fn match_axiom(f: &Formula) -> Vec<AxiomId> {
    AxiomId::ALL
        .into_iter()
        .filter(|&id| match_schema(id, f).is_some())
        .collect()
}

/// All matches with their substitutions.
pub fn match_axiom_with_bindings(f: &Formula) -> BTreeMap<AxiomId, Substitution> {
    AxiomId::ALL
        .into_iter()
        .filter_map(|id| match_schema(id, f).map(|s| (id, s)))
        .collect()
}

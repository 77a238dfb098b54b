//! Line-list proofs in the Hilbert system (axioms A1-A14 plus modus ponens)
//! and their translation into closed natural-deduction derivations.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axioms::{match_schema, AxiomId};
use crate::nd::{self, NDProof};
use crate::syntax::{parse_formula, Formula, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Justification {
    Axiom(AxiomId),
    /// Modus ponens from earlier lines (0-based): `implication` holds
    /// `A -> B` and `antecedent` holds `A`.
    Mp { implication: usize, antecedent: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertLine {
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HilbertProof {
    pub lines: Vec<HilbertLine>,
}

/// A rejected line, reported with its 1-based number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertError {
    #[error("proof has no lines")]
    Empty,
    #[error("line {line}: `{formula}` is not an instance of {axiom}")]
    NotAnInstance {
        line: usize,
        axiom: AxiomId,
        formula: String,
    },
    #[error("line {line}: cites line {cited}, which is not earlier")]
    ForwardReference { line: usize, cited: usize },
    #[error("line {line}: cited line {cited} holds `{formula}`, which is not an implication")]
    NotAnImplication {
        line: usize,
        cited: usize,
        formula: String,
    },
    #[error("line {line}: modus ponens needs `{expected}`, found `{found}`")]
    MpMismatch {
        line: usize,
        expected: String,
        found: String,
    },
}

impl HilbertProof {
    pub fn new() -> Self {
        HilbertProof::default()
    }

    pub fn axiom(mut self, id: AxiomId, formula: Formula) -> Self {
        self.lines.push(HilbertLine {
            formula,
            justification: Justification::Axiom(id),
        });
        self
    }

    /// Appends a modus ponens line; `implication` and `antecedent` are 1-based.
    pub fn mp(mut self, implication: usize, antecedent: usize, formula: Formula) -> Self {
        self.lines.push(HilbertLine {
            formula,
            justification: Justification::Mp {
                implication: implication.wrapping_sub(1),
                antecedent: antecedent.wrapping_sub(1),
            },
        });
        self
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }
}

pub fn match_axiom(f: &Formula) -> Vec<AxiomId> {
    crate::axioms::match_axiom(f)
}

/// Validates every line and returns the last formula.
pub fn check_hilbert(p: &HilbertProof) -> Result<Formula, HilbertError> {
    for (i, line) in p.lines.iter().enumerate() {
        check_line(p, i, line)?;
    }
    p.conclusion().cloned().ok_or(HilbertError::Empty)
}

fn check_line(p: &HilbertProof, i: usize, line: &HilbertLine) -> Result<(), HilbertError> {
    let number = i + 1;
    match line.justification {
        Justification::Axiom(id) => {
            if match_schema(id, &line.formula).is_none() {
                return Err(HilbertError::NotAnInstance {
                    line: number,
                    axiom: id,
                    formula: line.formula.to_string(),
                });
            }
        }
        Justification::Mp {
            implication,
            antecedent,
        } => {
            for cited in [implication, antecedent] {
                if cited >= i {
                    return Err(HilbertError::ForwardReference {
                        line: number,
                        cited: cited.wrapping_add(1),
                    });
                }
            }
            let major = &p.lines[implication].formula;
            let Formula::Implies(a, b) = major else {
                return Err(HilbertError::NotAnImplication {
                    line: number,
                    cited: implication + 1,
                    formula: major.to_string(),
                });
            };
            let minor = &p.lines[antecedent].formula;
            if **a != *minor {
                return Err(HilbertError::MpMismatch {
                    line: number,
                    expected: a.to_string(),
                    found: minor.to_string(),
                });
            }
            if **b != line.formula {
                return Err(HilbertError::MpMismatch {
                    line: number,
                    expected: b.to_string(),
                    found: line.formula.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Translates a checked Hilbert proof into a closed natural-deduction proof of
/// the same formula. Axiom lines become the stored templates; modus ponens
/// becomes implication elimination with empty contexts.
pub fn hilbert_to_nd(p: &HilbertProof) -> Result<NDProof, HilbertError> {
    check_hilbert(p)?;
    let mut translated: Vec<NDProof> = Vec::with_capacity(p.lines.len());
    for line in &p.lines {
        let proof = match line.justification {
            Justification::Axiom(id) => {
                let subst = match_schema(id, &line.formula).expect("checked above");
                let (phi, psi, chi) = subst.triple();
                nd::axiom_derivation(id, &phi, &psi, &chi)
            }
            Justification::Mp {
                implication,
                antecedent,
            } => nd::imp_elim(
                translated[implication].clone(),
                translated[antecedent].clone(),
            )
            .expect("checked modus ponens has matching shapes"),
        };
        debug_assert_eq!(proof.sequent.conclusion, line.formula);
        translated.push(proof);
    }
    Ok(translated.pop().expect("nonempty proof"))
}

// ---------------------------------------------------------------------------
// Proof files: {"lines": [{"formula": "...", "axiom": "A3"} | {"formula": "...", "mp": [i, j]}]}
// with 1-based line references.

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HilbertFile {
    pub lines: Vec<HilbertLineFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HilbertLineFile {
    pub formula: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axiom: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mp: Option<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertFileError {
    #[error("invalid Hilbert proof JSON: {0}")]
    Json(String),
    #[error("line {line}: {source}")]
    Formula {
        line: usize,
        #[source]
        source: ParseError,
    },
    #[error("line {line}: {message}")]
    Justification { line: usize, message: String },
}

pub fn parse_hilbert(text: &str) -> Result<HilbertProof, HilbertFileError> {
    let file: HilbertFile =
        serde_json::from_str(text).map_err(|e| HilbertFileError::Json(e.to_string()))?;
    let mut lines = Vec::with_capacity(file.lines.len());
    for (i, l) in file.lines.iter().enumerate() {
        let line = i + 1;
        let formula =
            parse_formula(&l.formula).map_err(|source| HilbertFileError::Formula { line, source })?;
        let justification = match (&l.axiom, l.mp) {
            (Some(id), None) => Justification::Axiom(
                id.parse()
                    .map_err(|message| HilbertFileError::Justification { line, message })?,
            ),
            (None, Some([a, b])) if a >= 1 && b >= 1 => Justification::Mp {
                implication: a - 1,
                antecedent: b - 1,
            },
            (None, Some(_)) => {
                return Err(HilbertFileError::Justification {
                    line,
                    message: "line references are 1-based".into(),
                })
            }
            _ => {
                return Err(HilbertFileError::Justification {
                    line,
                    message: "exactly one of `axiom` or `mp` is required".into(),
                })
            }
        };
        lines.push(HilbertLine {
            formula,
            justification,
        });
    }
    Ok(HilbertProof { lines })
}

pub fn hilbert_to_json(p: &HilbertProof) -> String {
    let file = HilbertFile {
        lines: p
            .lines
            .iter()
            .map(|l| match l.justification {
                Justification::Axiom(id) => HilbertLineFile {
                    formula: l.formula.to_string(),
                    axiom: Some(id.to_string()),
                    mp: None,
                },
                Justification::Mp {
                    implication,
                    antecedent,
                } => HilbertLineFile {
                    formula: l.formula.to_string(),
                    axiom: None,
                    mp: Some([implication + 1, antecedent + 1]),
                },
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("proof serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nd::check_nd;
    use crate::syntax::Sequent;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    /// (p*q) -> p from A3, A4 and A2.
    fn tensor_left_projection() -> HilbertProof {
        HilbertProof::new()
            .axiom(AxiomId::A3, f("p * q -> q * p"))
            .axiom(AxiomId::A4, f("q * p -> p"))
            .axiom(
                AxiomId::A2,
                f("(p * q -> q * p) -> (q * p -> p) -> p * q -> p"),
            )
            .mp(3, 1, f("(q * p -> p) -> p * q -> p"))
            .mp(4, 2, f("p * q -> p"))
    }

    #[test]
    fn single_axiom_line() {
        let p = HilbertProof::new().axiom(AxiomId::A1, f("p -> p"));
        assert_eq!(check_hilbert(&p).unwrap(), f("p -> p"));
        let nd = hilbert_to_nd(&p).unwrap();
        assert_eq!(nd.rule, nd::Rule::ImpI);
        assert_eq!(check_nd(&nd).unwrap(), Sequent::theorem(f("p -> p")));
    }

    #[test]
    fn five_line_projection() {
        let p = tensor_left_projection();
        assert_eq!(check_hilbert(&p).unwrap(), f("(p*q)->p"));
        let nd = hilbert_to_nd(&p).unwrap();
        assert_eq!(check_nd(&nd).unwrap(), Sequent::theorem(f("(p*q)->p")));
    }

    #[test]
    fn rejections() {
        let not_implication = HilbertProof::new()
            .axiom(AxiomId::A14, f("(p->q)|(q->p)"))
            .axiom(AxiomId::A1, f("p -> p"))
            .mp(1, 2, f("q"));
        assert!(matches!(
            check_hilbert(&not_implication),
            Err(HilbertError::NotAnImplication { line: 3, cited: 1, .. })
        ));

        let forward = HilbertProof::new().mp(1, 1, f("p"));
        assert!(matches!(
            check_hilbert(&forward),
            Err(HilbertError::ForwardReference { line: 1, .. })
        ));

        let wrong_axiom = HilbertProof::new().axiom(AxiomId::A3, f("p * q -> p"));
        assert!(matches!(
            check_hilbert(&wrong_axiom),
            Err(HilbertError::NotAnInstance { line: 1, axiom: AxiomId::A3, .. })
        ));

        let mut bad_mp = tensor_left_projection();
        bad_mp.lines[4].formula = f("p * q -> q");
        assert!(matches!(
            check_hilbert(&bad_mp),
            Err(HilbertError::MpMismatch { line: 5, .. })
        ));

        let mut bad_minor = tensor_left_projection();
        bad_minor.lines[4].justification = Justification::Mp {
            implication: 3,
            antecedent: 0,
        };
        assert!(matches!(
            check_hilbert(&bad_minor),
            Err(HilbertError::MpMismatch { line: 5, .. })
        ));

        assert_eq!(check_hilbert(&HilbertProof::new()), Err(HilbertError::Empty));
    }

    #[test]
    fn one_line_proofs_of_every_axiom() {
        let (phi, psi, chi) = (f("a & b"), f("c -> a"), f("bot"));
        for id in AxiomId::ALL {
            let p = HilbertProof::new().axiom(id, id.instance(&phi, &psi, &chi));
            assert!(check_hilbert(&p).is_ok(), "{id}");
            let nd = hilbert_to_nd(&p).unwrap();
            assert_eq!(check_nd(&nd).unwrap().conclusion, *p.conclusion().unwrap());
        }
    }

    #[test]
    fn file_round_trip_and_errors() {
        let p = tensor_left_projection();
        let text = hilbert_to_json(&p);
        assert!(text.contains("\"mp\""));
        assert_eq!(parse_hilbert(&text).unwrap(), p);

        let both = r#"{"lines": [{"formula": "p -> p", "axiom": "A1", "mp": [1, 1]}]}"#;
        assert!(matches!(
            parse_hilbert(both),
            Err(HilbertFileError::Justification { line: 1, .. })
        ));
        let zero = r#"{"lines": [{"formula": "p", "mp": [0, 1]}]}"#;
        assert!(parse_hilbert(zero).is_err());
        let unknown = r#"{"lines": [{"formula": "p -> p", "axiom": "A99"}]}"#;
        assert!(parse_hilbert(unknown).is_err());
        let bad_formula = r#"{"lines": [{"formula": "p ->", "axiom": "A1"}]}"#;
        assert!(matches!(
            parse_hilbert(bad_formula),
            Err(HilbertFileError::Formula { line: 1, .. })
        ));
    }
}

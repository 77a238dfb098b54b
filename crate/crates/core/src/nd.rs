//! Natural deduction for Basic Logic with explicit sequent contexts.
//!
//! Every node stores the sequent it concludes; [`check_nd`] validates each
//! node against its rule and the sequents of its premises. Contexts are
//! ordered sequences: rules act on fixed positions (the last formula, or the
//! last two) and `Ex` is the only way to reorder. There is no contraction.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axioms::AxiomId;
use crate::syntax::{parse_sequent, Formula, ParseError, Sequent};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Ax,
    W,
    Ex,
    ImpI,
    ImpE,
    TensI,
    TensE,
    AndI,
    AndE1,
    AndE2,
    OrI1,
    OrI2,
    OrE,
    Div,
    BotE,
    Prelin,
}

impl Rule {
    pub const ALL: [Rule; 16] = [
        Rule::Ax,
        Rule::W,
        Rule::Ex,
        Rule::ImpI,
        Rule::ImpE,
        Rule::TensI,
        Rule::TensE,
        Rule::AndI,
        Rule::AndE1,
        Rule::AndE2,
        Rule::OrI1,
        Rule::OrI2,
        Rule::OrE,
        Rule::Div,
        Rule::BotE,
        Rule::Prelin,
    ];

    pub fn arity(self) -> usize {
        match self {
            Rule::Ax | Rule::Prelin => 0,
            Rule::W
            | Rule::Ex
            | Rule::ImpI
            | Rule::AndE1
            | Rule::AndE2
            | Rule::OrI1
            | Rule::OrI2
            | Rule::Div
            | Rule::BotE => 1,
            Rule::ImpE | Rule::TensI | Rule::TensE | Rule::AndI => 2,
            Rule::OrE => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Rule::Ax => "Ax",
            Rule::W => "W",
            Rule::Ex => "Ex",
            Rule::ImpI => "ImpI",
            Rule::ImpE => "ImpE",
            Rule::TensI => "TensI",
            Rule::TensE => "TensE",
            Rule::AndI => "AndI",
            Rule::AndE1 => "AndE1",
            Rule::AndE2 => "AndE2",
            Rule::OrI1 => "OrI1",
            Rule::OrI2 => "OrI2",
            Rule::OrE => "OrE",
            Rule::Div => "Div",
            Rule::BotE => "BotE",
            Rule::Prelin => "Prelin",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown rule {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NDProof {
    pub rule: Rule,
    pub sequent: Sequent,
    pub premises: Vec<NDProof>,
}

/// A rejected node: where it is (premise indices from the root), which rule
/// it claims, and what is wrong.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("node {} ({rule}): {reason}", fmt_path(.path))]
pub struct NdError {
    pub path: Vec<usize>,
    pub rule: Rule,
    pub reason: String,
}

fn fmt_path(path: &[usize]) -> String {
    std::iter::once("root".to_string())
        .chain(path.iter().map(|i| i.to_string()))
        .collect::<Vec<_>>()
        .join(".")
}

impl NDProof {
    /// Breadth-first, root first.
    pub fn nodes(&self) -> Vec<&NDProof> {
        let mut out = vec![self];
        let mut i = 0;
        while i < out.len() {
            let node = out[i];
            out.extend(node.premises.iter());
            i += 1;
        }
        out
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(NDProof::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(NDProof::height).max().unwrap_or(0)
    }

    pub fn conclusion(&self) -> &Sequent {
        &self.sequent
    }
}

// ---------------------------------------------------------------------------
// Checking

pub fn check_nd(p: &NDProof) -> Result<Sequent, NdError> {
    let mut path = Vec::new();
    check_node(p, &mut path)?;
    Ok(p.sequent.clone())
}

fn check_node(p: &NDProof, path: &mut Vec<usize>) -> Result<(), NdError> {
    for (i, prem) in p.premises.iter().enumerate() {
        path.push(i);
        check_node(prem, path)?;
        path.pop();
    }
    check_step(p).map_err(|reason| NdError {
        path: path.clone(),
        rule: p.rule,
        reason,
    })
}

fn require(cond: bool, reason: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(reason())
    }
}

fn same_conclusion(c: &Sequent, prem: &Sequent) -> Result<(), String> {
    require(c.conclusion == prem.conclusion, || {
        format!(
            "conclusion formula mismatch: node has `{}`, premise has `{}`",
            c.conclusion, prem.conclusion
        )
    })
}

fn same_context(c: &Sequent, prem: &Sequent) -> Result<(), String> {
    require(c.context == prem.context, || {
        format!("context mismatch: `{c}` against premise `{prem}`")
    })
}

fn concat_context(c: &Sequent, left: &[Formula], right: &[Formula]) -> Result<(), String> {
    let expected: Vec<Formula> = left.iter().chain(right).cloned().collect();
    require(c.context == expected, || {
        format!(
            "context must be the premise contexts concatenated in order: expected `{}`",
            Sequent::new(expected.clone(), c.conclusion.clone())
        )
    })
}

fn expect_conclusion(c: &Sequent, expected: &Formula) -> Result<(), String> {
    require(c.conclusion == *expected, || {
        format!(
            "conclusion formula mismatch: expected `{expected}`, node has `{}`",
            c.conclusion
        )
    })
}

fn check_step(p: &NDProof) -> Result<(), String> {
    let arity = p.rule.arity();
    require(p.premises.len() == arity, || {
        format!("expects {arity} premise(s), found {}", p.premises.len())
    })?;
    let c = &p.sequent;
    let ps: Vec<&Sequent> = p.premises.iter().map(|q| &q.sequent).collect();
    match p.rule {
        Rule::Ax => require(c.context.len() == 1 && c.context[0] == c.conclusion, || {
            format!("axiom must have the form `phi |- phi`, found `{c}`")
        }),
        Rule::W => {
            same_conclusion(c, ps[0])?;
            require(
                c.context.len() == ps[0].context.len() + 1
                    && c.context[..ps[0].context.len()] == ps[0].context[..],
                || "weakening must append exactly one formula at the end of the context".into(),
            )
        }
        Rule::Ex => {
            same_conclusion(c, ps[0])?;
            let (a, b) = (&ps[0].context, &c.context);
            let swapped = a.len() == b.len()
                && (0..a.len().saturating_sub(1)).any(|i| {
                    a[..i] == b[..i] && a[i] == b[i + 1] && a[i + 1] == b[i] && a[i + 2..] == b[i + 2..]
                });
            require(swapped, || {
                "context must differ from the premise by one adjacent transposition".into()
            })
        }
        Rule::ImpI => {
            let (last, rest) = ps[0]
                .context
                .split_last()
                .ok_or("premise context is empty; nothing to discharge")?;
            require(c.context[..] == rest[..], || {
                "context must be the premise context without its last formula".into()
            })?;
            expect_conclusion(c, &Formula::implies(last.clone(), ps[0].conclusion.clone()))
        }
        Rule::ImpE => {
            let Formula::Implies(ante, cons) = &ps[0].conclusion else {
                return Err(format!(
                    "first premise must conclude an implication, found `{}`",
                    ps[0].conclusion
                ));
            };
            require(**ante == ps[1].conclusion, || {
                format!(
                    "second premise concludes `{}`, but the antecedent is `{ante}`",
                    ps[1].conclusion
                )
            })?;
            expect_conclusion(c, cons)?;
            concat_context(c, &ps[0].context, &ps[1].context)
        }
        Rule::TensI => {
            expect_conclusion(
                c,
                &Formula::tensor(ps[0].conclusion.clone(), ps[1].conclusion.clone()),
            )?;
            concat_context(c, &ps[0].context, &ps[1].context)
        }
        Rule::TensE => {
            let Formula::Tensor(l, r) = &ps[1].conclusion else {
                return Err(format!(
                    "second premise must conclude a `*` formula, found `{}`",
                    ps[1].conclusion
                ));
            };
            let n = ps[0].context.len();
            require(
                n >= 2 && ps[0].context[n - 2] == **l && ps[0].context[n - 1] == **r,
                || format!("first premise context must end with `{l}, {r}`"),
            )?;
            same_conclusion(c, ps[0])?;
            concat_context(c, &ps[0].context[..n - 2], &ps[1].context)
        }
        Rule::AndI => {
            require(ps[0].context == ps[1].context, || {
                "both premises must have the same context".into()
            })?;
            same_context(c, ps[0])?;
            expect_conclusion(
                c,
                &Formula::and(ps[0].conclusion.clone(), ps[1].conclusion.clone()),
            )
        }
        Rule::AndE1 | Rule::AndE2 => {
            same_context(c, ps[0])?;
            let Formula::And(l, r) = &ps[0].conclusion else {
                return Err(format!(
                    "premise must conclude a `&` formula, found `{}`",
                    ps[0].conclusion
                ));
            };
            expect_conclusion(c, if p.rule == Rule::AndE1 { l } else { r })
        }
        Rule::OrI1 | Rule::OrI2 => {
            same_context(c, ps[0])?;
            let Formula::Or(l, r) = &c.conclusion else {
                return Err(format!("conclusion must be a `|` formula, found `{}`", c.conclusion));
            };
            let injected = if p.rule == Rule::OrI1 { l } else { r };
            require(**injected == ps[0].conclusion, || {
                format!(
                    "premise concludes `{}`, but the injected disjunct is `{injected}`",
                    ps[0].conclusion
                )
            })
        }
        Rule::OrE => {
            let Formula::Or(l, r) = &ps[0].conclusion else {
                return Err(format!(
                    "first premise must conclude a `|` formula, found `{}`",
                    ps[0].conclusion
                ));
            };
            let (left_hyp, left_ctx) = ps[1]
                .context
                .split_last()
                .ok_or("second premise has an empty context")?;
            let (right_hyp, right_ctx) = ps[2]
                .context
                .split_last()
                .ok_or("third premise has an empty context")?;
            require(left_hyp == &**l, || {
                format!("second premise must end with the case hypothesis `{l}`")
            })?;
            require(right_hyp == &**r, || {
                format!("third premise must end with the case hypothesis `{r}`")
            })?;
            require(left_ctx == right_ctx, || {
                "both case branches must share the same context".into()
            })?;
            same_conclusion(c, ps[1])?;
            same_conclusion(c, ps[2])?;
            concat_context(c, &ps[0].context, left_ctx)
        }
        Rule::Div => {
            same_conclusion(c, ps[0])?;
            let n = ps[0].context.len();
            require(n >= 2 && c.context.len() == n, || {
                "premise and conclusion contexts must have the same length, at least two".into()
            })?;
            let (phi, imp) = (&ps[0].context[n - 2], &ps[0].context[n - 1]);
            let Formula::Implies(a, psi) = imp else {
                return Err(format!("premise context must end with an implication, found `{imp}`"));
            };
            require(**a == *phi, || {
                format!("premise context must end with `phi, phi -> psi`; found `{phi}, {imp}`")
            })?;
            require(c.context[..n - 2] == ps[0].context[..n - 2], || {
                "the untouched part of the context must be preserved".into()
            })?;
            let expected = [(**psi).clone(), Formula::implies((**psi).clone(), phi.clone())];
            require(c.context[n - 2..] == expected, || {
                format!(
                    "conclusion context must end with `{}, {}`",
                    expected[0], expected[1]
                )
            })
        }
        Rule::BotE => {
            same_context(c, ps[0])?;
            require(ps[0].conclusion == Formula::Bottom, || {
                format!("premise must conclude `bot`, found `{}`", ps[0].conclusion)
            })
        }
        Rule::Prelin => match &c.conclusion {
            Formula::Or(l, r) => match (&**l, &**r) {
                (Formula::Implies(a, b), Formula::Implies(c2, d)) if a == d && b == c2 => Ok(()),
                _ => Err(format!(
                    "conclusion must be `(phi -> psi) | (psi -> phi)`, found `{}`",
                    c.conclusion
                )),
            },
            other => Err(format!(
                "conclusion must be `(phi -> psi) | (psi -> phi)`, found `{other}`"
            )),
        },
    }
}

// ---------------------------------------------------------------------------
// Builders. Each computes the conclusion from its premises and fails when
// the premises have the wrong shape.

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot apply {rule}: {reason}")]
pub struct ShapeError {
    pub rule: Rule,
    pub reason: String,
}

fn shape(rule: Rule, reason: impl Into<String>) -> ShapeError {
    ShapeError {
        rule,
        reason: reason.into(),
    }
}

fn node(rule: Rule, sequent: Sequent, premises: Vec<NDProof>) -> NDProof {
    NDProof {
        rule,
        sequent,
        premises,
    }
}

fn concat(a: &[Formula], b: &[Formula]) -> Vec<Formula> {
    a.iter().chain(b).cloned().collect()
}

pub fn ax(phi: Formula) -> NDProof {
    node(Rule::Ax, Sequent::new(vec![phi.clone()], phi), vec![])
}

pub fn weaken(p: NDProof, phi: Formula) -> NDProof {
    let mut context = p.sequent.context.clone();
    context.push(phi);
    let s = Sequent::new(context, p.sequent.conclusion.clone());
    node(Rule::W, s, vec![p])
}

/// Swaps context positions `i` and `i + 1`.
pub fn exchange(p: NDProof, i: usize) -> Result<NDProof, ShapeError> {
    if i + 1 >= p.sequent.context.len() {
        return Err(shape(Rule::Ex, format!("no adjacent pair at position {i}")));
    }
    let mut s = p.sequent.clone();
    s.context.swap(i, i + 1);
    Ok(node(Rule::Ex, s, vec![p]))
}

/// Moves the formula at position `i` to the end of the context by a chain of
/// `Ex` steps.
pub fn move_to_end(mut p: NDProof, i: usize) -> Result<NDProof, ShapeError> {
    let n = p.sequent.context.len();
    if i >= n {
        return Err(shape(Rule::Ex, format!("no context position {i}")));
    }
    for j in i..n - 1 {
        p = exchange(p, j)?;
    }
    Ok(p)
}

/// Reorders the context so that new position `j` holds old position `order[j]`.
pub fn permute(mut p: NDProof, order: &[usize]) -> Result<NDProof, ShapeError> {
    let n = p.sequent.context.len();
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..n).collect::<Vec<_>>() {
        return Err(shape(Rule::Ex, "not a permutation of the context"));
    }
    // current[j] = original index now sitting at position j
    let mut current: Vec<usize> = (0..n).collect();
    for (target, &want) in order.iter().enumerate() {
        let at = current.iter().position(|&c| c == want).unwrap();
        for j in (target..at).rev() {
            p = exchange(p, j)?;
            current.swap(j, j + 1);
        }
    }
    Ok(p)
}

pub fn imp_intro(p: NDProof) -> Result<NDProof, ShapeError> {
    let mut context = p.sequent.context.clone();
    let hyp = context
        .pop()
        .ok_or_else(|| shape(Rule::ImpI, "empty context"))?;
    let s = Sequent::new(context, Formula::implies(hyp, p.sequent.conclusion.clone()));
    Ok(node(Rule::ImpI, s, vec![p]))
}

pub fn imp_elim(major: NDProof, minor: NDProof) -> Result<NDProof, ShapeError> {
    let Formula::Implies(a, b) = &major.sequent.conclusion else {
        return Err(shape(Rule::ImpE, "first premise is not an implication"));
    };
    if **a != minor.sequent.conclusion {
        return Err(shape(
            Rule::ImpE,
            format!("antecedent `{a}` differs from `{}`", minor.sequent.conclusion),
        ));
    }
    let s = Sequent::new(
        concat(&major.sequent.context, &minor.sequent.context),
        (**b).clone(),
    );
    Ok(node(Rule::ImpE, s, vec![major, minor]))
}

pub fn tens_intro(left: NDProof, right: NDProof) -> NDProof {
    let s = Sequent::new(
        concat(&left.sequent.context, &right.sequent.context),
        Formula::tensor(left.sequent.conclusion.clone(), right.sequent.conclusion.clone()),
    );
    node(Rule::TensI, s, vec![left, right])
}

/// From `Γ, φ, ψ |- χ` and `Δ |- φ * ψ` conclude `Γ, Δ |- χ`.
pub fn tens_elim(body: NDProof, pair: NDProof) -> Result<NDProof, ShapeError> {
    let Formula::Tensor(l, r) = &pair.sequent.conclusion else {
        return Err(shape(Rule::TensE, "second premise is not a `*` formula"));
    };
    let ctx = &body.sequent.context;
    let n = ctx.len();
    if n < 2 || ctx[n - 2] != **l || ctx[n - 1] != **r {
        return Err(shape(
            Rule::TensE,
            format!("first premise context does not end with `{l}, {r}`"),
        ));
    }
    let s = Sequent::new(
        concat(&ctx[..n - 2], &pair.sequent.context),
        body.sequent.conclusion.clone(),
    );
    Ok(node(Rule::TensE, s, vec![body, pair]))
}

pub fn and_intro(left: NDProof, right: NDProof) -> Result<NDProof, ShapeError> {
    if left.sequent.context != right.sequent.context {
        return Err(shape(Rule::AndI, "premise contexts differ"));
    }
    let s = Sequent::new(
        left.sequent.context.clone(),
        Formula::and(left.sequent.conclusion.clone(), right.sequent.conclusion.clone()),
    );
    Ok(node(Rule::AndI, s, vec![left, right]))
}

pub fn and_elim(p: NDProof, first: bool) -> Result<NDProof, ShapeError> {
    let rule = if first { Rule::AndE1 } else { Rule::AndE2 };
    let Formula::And(l, r) = &p.sequent.conclusion else {
        return Err(shape(rule, "premise is not a `&` formula"));
    };
    let picked = if first { l } else { r };
    let s = Sequent::new(p.sequent.context.clone(), (**picked).clone());
    Ok(node(rule, s, vec![p]))
}

/// `Γ |- φ` to `Γ |- φ | other`.
pub fn or_intro_left(p: NDProof, other: Formula) -> NDProof {
    let s = Sequent::new(
        p.sequent.context.clone(),
        Formula::or(p.sequent.conclusion.clone(), other),
    );
    node(Rule::OrI1, s, vec![p])
}

/// `Γ |- ψ` to `Γ |- other | ψ`.
pub fn or_intro_right(p: NDProof, other: Formula) -> NDProof {
    let s = Sequent::new(
        p.sequent.context.clone(),
        Formula::or(other, p.sequent.conclusion.clone()),
    );
    node(Rule::OrI2, s, vec![p])
}

pub fn or_elim(disj: NDProof, left: NDProof, right: NDProof) -> Result<NDProof, ShapeError> {
    let Formula::Or(l, r) = &disj.sequent.conclusion else {
        return Err(shape(Rule::OrE, "first premise is not a `|` formula"));
    };
    let (lh, lctx) = left
        .sequent
        .context
        .split_last()
        .ok_or_else(|| shape(Rule::OrE, "left branch has an empty context"))?;
    let (rh, rctx) = right
        .sequent
        .context
        .split_last()
        .ok_or_else(|| shape(Rule::OrE, "right branch has an empty context"))?;
    if lh != &**l || rh != &**r || lctx != rctx {
        return Err(shape(Rule::OrE, "branches do not match the disjunction"));
    }
    if left.sequent.conclusion != right.sequent.conclusion {
        return Err(shape(Rule::OrE, "branches conclude different formulas"));
    }
    let s = Sequent::new(
        concat(&disj.sequent.context, lctx),
        left.sequent.conclusion.clone(),
    );
    Ok(node(Rule::OrE, s, vec![disj, left, right]))
}

/// From `Γ, φ, φ -> ψ |- χ` conclude `Γ, ψ, ψ -> φ |- χ`.
pub fn div(p: NDProof) -> Result<NDProof, ShapeError> {
    let ctx = &p.sequent.context;
    let n = ctx.len();
    let err = || shape(Rule::Div, "context does not end with `phi, phi -> psi`");
    if n < 2 {
        return Err(err());
    }
    let Formula::Implies(a, psi) = &ctx[n - 1] else {
        return Err(err());
    };
    if **a != ctx[n - 2] {
        return Err(err());
    }
    let phi = ctx[n - 2].clone();
    let mut context = ctx[..n - 2].to_vec();
    context.push((**psi).clone());
    context.push(Formula::implies((**psi).clone(), phi));
    let s = Sequent::new(context, p.sequent.conclusion.clone());
    Ok(node(Rule::Div, s, vec![p]))
}

pub fn bot_elim(p: NDProof, phi: Formula) -> Result<NDProof, ShapeError> {
    if p.sequent.conclusion != Formula::Bottom {
        return Err(shape(Rule::BotE, "premise does not conclude `bot`"));
    }
    let s = Sequent::new(p.sequent.context.clone(), phi);
    Ok(node(Rule::BotE, s, vec![p]))
}

pub fn prelin(context: Vec<Formula>, phi: Formula, psi: Formula) -> NDProof {
    let conclusion = AxiomId::A14.instance(&phi, &psi, &Formula::Top);
    node(Rule::Prelin, Sequent::new(context, conclusion), vec![])
}

// ---------------------------------------------------------------------------
// Deduction-theorem transformers

/// `Γ, ψ |- χ` to `Γ |- ψ -> χ`.
pub fn curry(p: NDProof) -> Result<NDProof, ShapeError> {
    imp_intro(p)
}

/// `Γ |- ψ -> χ` to `Γ, ψ |- χ`.
pub fn uncurry(p: NDProof) -> Result<NDProof, ShapeError> {
    let Formula::Implies(hyp, _) = &p.sequent.conclusion else {
        return Err(shape(Rule::ImpE, "conclusion is not an implication"));
    };
    let hyp = (**hyp).clone();
    imp_elim(p, ax(hyp))
}

/// `Γ, φ, ψ |- χ` to `Γ, φ * ψ |- χ`.
pub fn tensor_fold(p: NDProof) -> Result<NDProof, ShapeError> {
    let ctx = &p.sequent.context;
    let n = ctx.len();
    if n < 2 {
        return Err(shape(Rule::TensE, "context has fewer than two formulas"));
    }
    let pair = Formula::tensor(ctx[n - 2].clone(), ctx[n - 1].clone());
    tens_elim(p, ax(pair))
}

/// `Γ, φ * ψ |- χ` to `Γ, φ, ψ |- χ`.
pub fn tensor_unfold(p: NDProof) -> Result<NDProof, ShapeError> {
    let Some(Formula::Tensor(l, r)) = p.sequent.context.last() else {
        return Err(shape(Rule::ImpE, "last context formula is not a `*` formula"));
    };
    let pair = tens_intro(ax((**l).clone()), ax((**r).clone()));
    imp_elim(imp_intro(p)?, pair)
}

// ---------------------------------------------------------------------------
// Axiom templates

/// A closed derivation of the given axiom instance.
pub fn axiom_derivation(id: AxiomId, phi: &Formula, psi: &Formula, chi: &Formula) -> NDProof {
    build_axiom(id, phi.clone(), psi.clone(), chi.clone())
        .unwrap_or_else(|e| panic!("template {id} is ill-formed: {e}"))
}

fn imp_intro_n(mut p: NDProof, n: usize) -> Result<NDProof, ShapeError> {
    for _ in 0..n {
        p = imp_intro(p)?;
    }
    Ok(p)
}

fn build_axiom(id: AxiomId, phi: Formula, psi: Formula, chi: Formula) -> Result<NDProof, ShapeError> {
    let imp = Formula::implies;
    let p = match id {
        AxiomId::A1 => imp_intro(ax(phi))?,
        AxiomId::A2 => {
            // φ→ψ, φ ⊢ ψ ; ψ→χ, φ→ψ, φ ⊢ χ ; swap the first two
            let step = imp_elim(ax(imp(phi.clone(), psi.clone())), ax(phi.clone()))?;
            let step = imp_elim(ax(imp(psi, chi)), step)?;
            imp_intro_n(exchange(step, 0)?, 3)?
        }
        AxiomId::A3 => {
            let swapped = exchange(tens_intro(ax(psi.clone()), ax(phi.clone())), 0)?;
            imp_intro(tens_elim(swapped, ax(Formula::tensor(phi, psi)))?)?
        }
        AxiomId::A4 => {
            let body = exchange(weaken(ax(psi.clone()), phi.clone()), 0)?;
            imp_intro(tens_elim(body, ax(Formula::tensor(phi, psi)))?)?
        }
        AxiomId::A5 => {
            let curried = imp(phi.clone(), imp(psi.clone(), chi));
            let step = imp_elim(ax(curried), ax(phi.clone()))?;
            let step = imp_elim(step, ax(psi.clone()))?;
            imp_intro_n(tens_elim(step, ax(Formula::tensor(phi, psi)))?, 2)?
        }
        AxiomId::A6 => {
            let pair = tens_intro(ax(phi.clone()), ax(psi.clone()));
            let step = imp_elim(ax(imp(Formula::tensor(phi, psi), chi)), pair)?;
            imp_intro_n(step, 3)?
        }
        AxiomId::A7 => {
            // φ, φ→ψ ⊢ φ by weakening; φ, φ→ψ ⊢ ψ by modus ponens
            let fwd = imp(phi.clone(), psi.clone());
            let left = weaken(ax(phi.clone()), fwd.clone());
            let right = exchange(imp_elim(ax(fwd.clone()), ax(phi.clone()))?, 0)?;
            let body = and_intro(left, right)?;
            imp_intro(tens_elim(body, ax(Formula::tensor(phi, fwd)))?)?
        }
        AxiomId::A8 => {
            // Case split on prelinearity. With φ→ψ at hand the goal is a
            // direct ⊗-introduction; with ψ→φ it follows by divisibility.
            let conj = Formula::and(phi.clone(), psi.clone());
            let fwd = imp(phi.clone(), psi.clone());
            let bwd = imp(psi.clone(), phi.clone());
            let goal = Formula::tensor(phi.clone(), fwd.clone());

            let case_fwd = tens_intro(and_elim(ax(conj.clone()), true)?, ax(fwd.clone()));

            let divided = div(tens_intro(ax(phi.clone()), ax(fwd.clone())))?; // ψ, ψ→φ ⊢ goal
            let curried = imp_intro(exchange(divided, 0)?)?; // ψ→φ ⊢ ψ → goal
            let applied = imp_elim(curried, and_elim(ax(conj.clone()), false)?)?; // ψ→φ, φ∧ψ ⊢ goal
            let case_bwd = exchange(applied, 0)?;

            let split = or_elim(prelin(vec![], phi, psi), case_fwd, case_bwd)?;
            debug_assert_eq!(split.sequent.conclusion, goal);
            debug_assert_eq!(bwd, split.premises[2].sequent.context[1]);
            imp_intro(split)?
        }
        AxiomId::A9 => {
            let conj = Formula::and(phi, psi);
            let swapped = and_intro(
                and_elim(ax(conj.clone()), false)?,
                and_elim(ax(conj), true)?,
            )?;
            imp_intro(swapped)?
        }
        AxiomId::A10 => imp_intro(or_intro_left(ax(phi), psi))?,
        AxiomId::A11 => imp_intro(or_intro_right(ax(psi), phi))?,
        AxiomId::A12 => {
            let conj = Formula::and(imp(phi.clone(), psi.clone()), imp(chi.clone(), psi));
            let left = imp_elim(and_elim(ax(conj.clone()), true)?, ax(phi.clone()))?;
            let right = imp_elim(and_elim(ax(conj), false)?, ax(chi.clone()))?;
            let split = or_elim(ax(Formula::or(phi, chi)), left, right)?;
            imp_intro_n(exchange(split, 0)?, 2)?
        }
        AxiomId::A13 => imp_intro(bot_elim(ax(Formula::Bottom), phi)?)?,
        AxiomId::A14 => prelin(vec![], phi, psi),
    };
    Ok(p)
}

// ---------------------------------------------------------------------------
// Proof files

/// JSON shape of a proof node: `{"rule", "sequent", "premises"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProofNodeFile {
    pub rule: String,
    pub sequent: String,
    #[serde(default)]
    pub premises: Vec<ProofNodeFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofFileError {
    #[error("invalid proof JSON: {0}")]
    Json(String),
    #[error("node {}: {message}", fmt_path(.path))]
    Node { path: Vec<usize>, message: String },
    #[error("node {}: bad sequent: {source}", fmt_path(.path))]
    Sequent {
        path: Vec<usize>,
        #[source]
        source: ParseError,
    },
}

impl ProofNodeFile {
    pub fn from_proof(p: &NDProof) -> Self {
        ProofNodeFile {
            rule: p.rule.name().to_string(),
            sequent: p.sequent.to_string(),
            premises: p.premises.iter().map(ProofNodeFile::from_proof).collect(),
        }
    }

    pub fn to_proof(&self) -> Result<NDProof, ProofFileError> {
        self.to_proof_at(&mut Vec::new())
    }

    fn to_proof_at(&self, path: &mut Vec<usize>) -> Result<NDProof, ProofFileError> {
        let rule = self.rule.parse::<Rule>().map_err(|message| ProofFileError::Node {
            path: path.clone(),
            message,
        })?;
        let sequent = parse_sequent(&self.sequent).map_err(|source| ProofFileError::Sequent {
            path: path.clone(),
            source,
        })?;
        let mut premises = Vec::with_capacity(self.premises.len());
        for (i, prem) in self.premises.iter().enumerate() {
            path.push(i);
            premises.push(prem.to_proof_at(path)?);
            path.pop();
        }
        Ok(NDProof {
            rule,
            sequent,
            premises,
        })
    }
}

pub fn parse_proof(text: &str) -> Result<NDProof, ProofFileError> {
    let file: ProofNodeFile =
        serde_json::from_str(text).map_err(|e| ProofFileError::Json(e.to_string()))?;
    file.to_proof()
}

pub fn proof_to_json(p: &NDProof) -> String {
    serde_json::to_string_pretty(&ProofNodeFile::from_proof(p)).expect("proof serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    fn raw(rule: Rule, s: &str, premises: Vec<NDProof>) -> NDProof {
        NDProof {
            rule,
            sequent: seq(s),
            premises,
        }
    }

    #[test]
    fn axiom_and_implication_intro() {
        assert_eq!(check_nd(&raw(Rule::Ax, "p |- p", vec![])).unwrap(), seq("p |- p"));
        let id = raw(Rule::ImpI, "|- p -> p", vec![raw(Rule::Ax, "p |- p", vec![])]);
        assert_eq!(check_nd(&id).unwrap(), seq("|- p -> p"));
        assert!(check_nd(&raw(Rule::Ax, "p |- q", vec![])).is_err());
        assert!(check_nd(&raw(Rule::Ax, "p, p |- p", vec![])).is_err());
    }

    #[test]
    fn implication_elim_mismatch_is_reported() {
        // p |- q -> p and q |- q
        let major = imp_intro(weaken(ax(f("p")), f("q"))).unwrap();
        let minor = ax(f("q"));
        let good = raw(Rule::ImpE, "p, q |- p", vec![major.clone(), minor.clone()]);
        assert!(check_nd(&good).is_ok());
        let bad = raw(Rule::ImpE, "p, q |- r2", vec![major.clone(), minor.clone()]);
        let err = check_nd(&bad).unwrap_err();
        assert!(err.path.is_empty());
        assert_eq!(err.rule, Rule::ImpE);
        assert!(err.reason.contains("conclusion formula mismatch"), "{err}");
        let swapped = raw(Rule::ImpE, "q, p |- p", vec![major, minor]);
        assert!(check_nd(&swapped).unwrap_err().reason.contains("concatenated"));
    }

    #[test]
    fn error_paths_point_at_the_bad_node() {
        let bad_leaf = raw(Rule::Ax, "p |- q", vec![]);
        let p = raw(Rule::ImpI, "|- p -> q", vec![bad_leaf]);
        let err = check_nd(&p).unwrap_err();
        assert_eq!(err.path, vec![0]);
        assert_eq!(err.to_string(), format!("node root.0 (Ax): {}", err.reason));
    }

    #[test]
    fn arity_is_enforced() {
        let p = raw(Rule::Prelin, "|- (p -> q) | (q -> p)", vec![raw(Rule::Ax, "p |- p", vec![])]);
        assert!(check_nd(&p).unwrap_err().reason.contains("expects 0"));
        assert!(check_nd(&raw(Rule::ImpE, "|- p", vec![])).is_err());
    }

    #[test]
    fn weakening_and_exchange_positions() {
        let w = raw(Rule::W, "p, q |- p", vec![raw(Rule::Ax, "p |- p", vec![])]);
        assert!(check_nd(&w).is_ok());
        let w_front = raw(Rule::W, "q, p |- p", vec![raw(Rule::Ax, "p |- p", vec![])]);
        assert!(check_nd(&w_front).is_err());
        let ex = raw(Rule::Ex, "q, p |- p", vec![w.clone()]);
        assert!(check_nd(&ex).is_ok());
        let no_swap = raw(Rule::Ex, "p, q |- p", vec![w.clone()]);
        assert!(check_nd(&no_swap).is_err());
        let three = weaken(weaken(ax(f("a")), f("b")), f("c")); // a, b, c |- a
        let far = raw(Rule::Ex, "c, b, a |- a", vec![three.clone()]);
        assert!(check_nd(&far).is_err());
        let permuted = permute(three, &[2, 0, 1]).unwrap();
        assert_eq!(permuted.sequent, seq("c, a, b |- a"));
        assert!(check_nd(&permuted).is_ok());
    }

    #[test]
    fn no_contraction() {
        // duplicating a hypothesis would need a rule that merges context entries
        let two = tens_intro(ax(f("p")), ax(f("p")));
        assert_eq!(two.sequent, seq("p, p |- p * p"));
        let contracted = raw(Rule::TensI, "p |- p * p", vec![ax(f("p")), ax(f("p"))]);
        assert!(check_nd(&contracted).is_err());
    }

    #[test]
    fn div_rule() {
        let p = tens_intro(ax(f("a")), ax(f("a -> b"))); // a, a -> b |- a * (a -> b)
        let d = div(p).unwrap();
        assert_eq!(d.sequent, seq("b, b -> a |- a * (a -> b)"));
        assert!(check_nd(&d).is_ok());
        let mut wrong = d.clone();
        wrong.sequent = seq("b, a -> b |- a * (a -> b)");
        assert!(check_nd(&wrong).is_err());
    }

    #[test]
    fn or_elim_needs_shared_branch_context() {
        let disj = ax(f("a | b"));
        let left = weaken(ax(f("a")), f("c")); // a, c |- a : wrong hypothesis position
        let right = weaken(ax(f("b")), f("c"));
        assert!(or_elim(disj.clone(), left, right).is_err());
        let left = or_intro_left(ax(f("a")), f("b"));
        let right = or_intro_right(ax(f("b")), f("a"));
        let ok = or_elim(disj, left, right).unwrap();
        assert_eq!(ok.sequent, seq("a | b |- a | b"));
        assert!(check_nd(&ok).is_ok());
    }

    #[test]
    fn prelin_accepts_any_context() {
        let p = prelin(vec![f("r"), f("s")], f("p"), f("q"));
        assert_eq!(check_nd(&p).unwrap(), seq("r, s |- (p -> q) | (q -> p)"));
        let bad = raw(Rule::Prelin, "|- (p -> q) | (q -> r)", vec![]);
        assert!(check_nd(&bad).is_err());
    }

    #[test]
    fn curry_and_uncurry() {
        let pq = tens_intro(ax(f("p")), ax(f("q")));
        let c = curry(pq.clone()).unwrap();
        assert_eq!(check_nd(&c).unwrap(), seq("p |- q -> p * q"));
        let back = uncurry(c).unwrap();
        assert_eq!(check_nd(&back).unwrap(), pq.sequent);

        let id = axiom_derivation(AxiomId::A1, &f("p"), &Formula::Top, &Formula::Top);
        assert_eq!(check_nd(&uncurry(id).unwrap()).unwrap(), seq("p |- p"));

        assert!(curry(prelin(vec![], f("p"), f("q"))).is_err());
        assert!(uncurry(ax(f("p"))).is_err());
    }

    #[test]
    fn tensor_fold_and_unfold() {
        let pq = tens_intro(ax(f("p")), ax(f("q")));
        let folded = tensor_fold(pq.clone()).unwrap();
        assert_eq!(check_nd(&folded).unwrap(), seq("p * q |- p * q"));
        let unfolded = tensor_unfold(ax(f("p * q"))).unwrap();
        assert_eq!(check_nd(&unfolded).unwrap(), seq("p, q |- p * q"));
        let round = tensor_unfold(folded).unwrap();
        assert_eq!(check_nd(&round).unwrap(), pq.sequent);
        assert!(tensor_unfold(ax(f("p & q"))).is_err());
        assert!(tensor_fold(ax(f("p"))).is_err());
    }

    #[test]
    fn templates_conclude_their_axioms() {
        let (phi, psi, chi) = (f("p"), f("q"), f("r"));
        for id in AxiomId::ALL {
            let proof = axiom_derivation(id, &phi, &psi, &chi);
            let concl = check_nd(&proof).unwrap_or_else(|e| panic!("{id}: {e}"));
            assert_eq!(concl, Sequent::theorem(id.instance(&phi, &psi, &chi)), "{id}");
        }
        let a1 = axiom_derivation(AxiomId::A1, &phi, &psi, &chi);
        assert_eq!(a1.rule, Rule::ImpI);
        assert_eq!(a1.premises[0].rule, Rule::Ax);
        let a14 = axiom_derivation(AxiomId::A14, &phi, &psi, &chi);
        assert_eq!(a14.rule, Rule::Prelin);
        let a8 = axiom_derivation(AxiomId::A8, &phi, &psi, &chi);
        let rules: Vec<Rule> = a8.nodes().iter().map(|n| n.rule).collect();
        assert!(rules.contains(&Rule::Div) && rules.contains(&Rule::Prelin) && rules.contains(&Rule::OrE));
    }

    #[test]
    fn templates_with_compound_instances() {
        let (phi, psi, chi) = (f("a * b"), f("a -> bot"), f("(a | b) & b"));
        for id in AxiomId::ALL {
            let proof = axiom_derivation(id, &phi, &psi, &chi);
            assert_eq!(
                check_nd(&proof).unwrap(),
                Sequent::theorem(id.instance(&phi, &psi, &chi))
            );
        }
    }

    #[test]
    fn proof_file_round_trip_and_errors() {
        let p = axiom_derivation(AxiomId::A8, &f("p"), &f("q"), &f("r"));
        let text = proof_to_json(&p);
        assert_eq!(parse_proof(&text).unwrap(), p);

        let bad_rule = r#"{"rule": "Cut", "sequent": "p |- p", "premises": []}"#;
        assert!(matches!(parse_proof(bad_rule), Err(ProofFileError::Node { .. })));
        let bad_seq = r#"{"rule": "Ax", "sequent": "p |- ", "premises": []}"#;
        assert!(matches!(parse_proof(bad_seq), Err(ProofFileError::Sequent { .. })));
        assert!(matches!(parse_proof("{"), Err(ProofFileError::Json(_))));
        let leaf = r#"{"rule": "Ax", "sequent": "p |- p"}"#;
        assert!(check_nd(&parse_proof(leaf).unwrap()).is_ok());
    }
}

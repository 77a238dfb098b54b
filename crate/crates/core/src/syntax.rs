//! Formulas and sequents of the propositional language with `&`, `|`, `*`,
//! `->`, `bot` and `top`, together with a recursive-descent parser and a
//! minimal-parentheses printer.
//!
//! Surface syntax, loosest binding first:
//!
//! ```text
//! formula := impl
//! impl    := or ("->" impl)?        right associative
//! or      := and ("|" and)*         left associative
//! and     := tens ("&" tens)*       left associative
//! tens    := atom ("*" atom)*       left associative
//! atom    := ident | "bot" | "top" | "(" formula ")"
//! sequent := (formula ("," formula)*)? "|-" formula
//! ```

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Bottom,
    Top,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Tensor(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    /// Builds an atom. Panics if `name` is not a valid identifier.
    pub fn atom(name: &str) -> Formula {
        assert!(is_identifier(name), "invalid atom name {name:?}");
        Formula::Atom(name.to_string())
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn tensor(l: Formula, r: Formula) -> Formula {
        Formula::Tensor(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    /// `phi -> bot`; negation is not a primitive connective.
    pub fn negation(f: Formula) -> Formula {
        Formula::implies(f, Formula::Bottom)
    }

    /// Folds a sequence with `*`, left-nested; the empty sequence is `top`.
    pub fn tensor_all<'a, I>(formulas: I) -> Formula
    where
        I: IntoIterator<Item = &'a Formula>,
    {
        formulas
            .into_iter()
            .cloned()
            .reduce(Formula::tensor)
            .unwrap_or(Formula::Top)
    }

    /// Height of the syntax tree; atoms and constants have depth 0.
    pub fn depth(&self) -> usize {
        match self.children() {
            Some((l, r)) => 1 + l.depth().max(r.depth()),
            None => 0,
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self.children() {
            Some((l, r)) => 1 + l.size() + r.size(),
            None => 1,
        }
    }

    pub fn children(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Tensor(l, r)
            | Formula::Implies(l, r) => Some((l, r)),
            _ => None,
        }
    }

    pub fn contains_tensor(&self) -> bool {
        match self {
            Formula::Tensor(..) => true,
            _ => self
                .children()
                .is_some_and(|(l, r)| l.contains_tensor() || r.contains_tensor()),
        }
    }

    /// Distinct atom names in first-occurrence order.
    pub fn atoms(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut Vec<String>) {
        match self {
            Formula::Atom(name) => {
                if !out.iter().any(|a| a == name) {
                    out.push(name.clone());
                }
            }
            Formula::Bottom | Formula::Top => {}
            _ => {
                let (l, r) = self.children().unwrap();
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Nested prefix form, e.g. `Implies(Tensor(p,q),r)`.
    pub fn to_prefix(&self) -> String {
        match self {
            Formula::Atom(name) => name.clone(),
            Formula::Bottom => "Bottom".into(),
            Formula::Top => "Top".into(),
            Formula::And(l, r) => format!("And({},{})", l.to_prefix(), r.to_prefix()),
            Formula::Or(l, r) => format!("Or({},{})", l.to_prefix(), r.to_prefix()),
            Formula::Tensor(l, r) => format!("Tensor({},{})", l.to_prefix(), r.to_prefix()),
            Formula::Implies(l, r) => format!("Implies({},{})", l.to_prefix(), r.to_prefix()),
        }
    }

    // Binding strength used by the printer; higher binds tighter.
    fn level(&self) -> u8 {
        match self {
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Tensor(..) => 4,
            _ => 5,
        }
    }
}

/// A sequent `Γ |- φ`. The context is an ordered sequence: multiplicity and
/// position both matter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub context: Vec<Formula>,
    pub conclusion: Formula,
}

impl Sequent {
    pub fn new(context: Vec<Formula>, conclusion: Formula) -> Self {
        Sequent {
            context,
            conclusion,
        }
    }

    pub fn theorem(conclusion: Formula) -> Self {
        Sequent::new(Vec::new(), conclusion)
    }

    /// Atoms of the context, then of the conclusion, in first-occurrence order.
    pub fn atoms(&self) -> Vec<String> {
        let mut out = Vec::new();
        for f in self.context.iter().chain(std::iter::once(&self.conclusion)) {
            f.collect_atoms(&mut out);
        }
        out
    }
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some('a'..='z'))
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s != "bot"
        && s != "top"
}

// ---------------------------------------------------------------------------
// Printing

pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(f, &mut out);
    out
}

fn write_formula(f: &Formula, out: &mut String) {
    let (op, l, r) = match f {
        Formula::Atom(name) => return out.push_str(name),
        Formula::Bottom => return out.push_str("bot"),
        Formula::Top => return out.push_str("top"),
        Formula::And(l, r) => ("&", l, r),
        Formula::Or(l, r) => ("|", l, r),
        Formula::Tensor(l, r) => ("*", l, r),
        Formula::Implies(l, r) => ("->", l, r),
    };
    let level = f.level();
    let right_assoc = matches!(f, Formula::Implies(..));
    let (left_parens, right_parens) = if right_assoc {
        (l.level() <= level, r.level() < level)
    } else {
        (l.level() < level, r.level() <= level)
    };
    write_operand(l, left_parens, out);
    out.push(' ');
    out.push_str(op);
    out.push(' ');
    write_operand(r, right_parens, out);
}

fn write_operand(f: &Formula, parens: bool, out: &mut String) {
    if parens {
        out.push('(');
        write_formula(f, out);
        out.push(')');
    } else {
        write_formula(f, out);
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, h) in self.context.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{h}")?;
        }
        if !self.context.is_empty() {
            f.write_str(" ")?;
        }
        write!(f, "|- {}", self.conclusion)
    }
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {found:?} at position {pos}")]
    UnknownToken { pos: usize, found: char },
    #[error("expected {expected} at position {pos}, found {found}")]
    Unexpected {
        pos: usize,
        expected: &'static str,
        found: String,
    },
    #[error("expected {expected} at end of input")]
    UnexpectedEnd { expected: &'static str },
    #[error("missing turnstile `|-` in sequent")]
    MissingTurnstile,
}

impl ParseError {
    /// Byte offset of the error; `None` when it is at end of input.
    pub fn position(&self) -> Option<usize> {
        match self {
            ParseError::UnknownToken { pos, .. } | ParseError::Unexpected { pos, .. } => Some(*pos),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Bot,
    Top,
    LParen,
    RParen,
    And,
    Or,
    Tensor,
    Arrow,
    Comma,
    Turnstile,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Token::Ident(name) => return write!(f, "identifier `{name}`"),
            Token::Bot => "`bot`",
            Token::Top => "`top`",
            Token::LParen => "`(`",
            Token::RParen => "`)`",
            Token::And => "`&`",
            Token::Or => "`|`",
            Token::Tensor => "`*`",
            Token::Arrow => "`->`",
            Token::Comma => "`,`",
            Token::Turnstile => "`|-`",
        };
        f.write_str(s)
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'&' => Token::And,
            b'*' => Token::Tensor,
            b',' => Token::Comma,
            b'|' if bytes.get(i + 1) == Some(&b'-') => {
                i += 1;
                Token::Turnstile
            }
            b'|' => Token::Or,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Token::Arrow
            }
            b'a'..=b'z' => {
                while i + 1 < bytes.len()
                    && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_')
                {
                    i += 1;
                }
                match &text[start..=i] {
                    "bot" => Token::Bot,
                    "top" => Token::Top,
                    name => Token::Ident(name.to_string()),
                }
            }
            _ => {
                let found = text[start..].chars().next().unwrap();
                return Err(ParseError::UnknownToken { pos: start, found });
            }
        };
        i += 1;
        tokens.push((start, tok));
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, expected: &'static str) -> ParseError {
        match self.tokens.get(self.pos) {
            Some((pos, tok)) => ParseError::Unexpected {
                pos: *pos,
                expected,
                found: tok.to_string(),
            },
            None => ParseError::UnexpectedEnd { expected },
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.eat(&Token::Arrow) {
            let rhs = self.formula()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while self.eat(&Token::Or) {
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.tens()?;
        while self.eat(&Token::And) {
            lhs = Formula::and(lhs, self.tens()?);
        }
        Ok(lhs)
    }

    fn tens(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.atom()?;
        while self.eat(&Token::Tensor) {
            lhs = Formula::tensor(lhs, self.atom()?);
        }
        Ok(lhs)
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let f = match self.peek() {
            Some(Token::Ident(name)) => Formula::Atom(name.clone()),
            Some(Token::Bot) => Formula::Bottom,
            Some(Token::Top) => Formula::Top,
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.formula()?;
                if !self.eat(&Token::RParen) {
                    return Err(self.error("`)`"));
                }
                return Ok(inner);
            }
            _ => return Err(self.error("a formula")),
        };
        self.pos += 1;
        Ok(f)
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos < self.tokens.len() {
            Err(self.error("end of input"))
        } else {
            Ok(())
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
    };
    let f = parser.formula()?;
    parser.finish()?;
    Ok(f)
}

pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let tokens = tokenize(text)?;
    if !tokens.iter().any(|(_, t)| *t == Token::Turnstile) {
        return Err(ParseError::MissingTurnstile);
    }
    let mut parser = Parser { tokens, pos: 0 };
    let mut context = Vec::new();
    if !parser.eat(&Token::Turnstile) {
        loop {
            context.push(parser.formula()?);
            if parser.eat(&Token::Turnstile) {
                break;
            }
            if !parser.eat(&Token::Comma) {
                return Err(parser.error("`,` or `|-`"));
            }
        }
    }
    let conclusion = parser.formula()?;
    parser.finish()?;
    Ok(Sequent::new(context, conclusion))
}

impl FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

impl FromStr for Sequent {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_sequent(s)
    }
}

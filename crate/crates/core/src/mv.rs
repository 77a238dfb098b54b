//! Exact arithmetic on the standard MV-chain `[0,1]`, the Monteiro-Baaz
//! floor, the floored infimum over later worlds, and sloping functions.
//!
//! Everything is exact rational arithmetic. Equality with `1` drives both
//! the floor and the sloping condition, so floats are never used.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use thiserror::Error;

use crate::syntax::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MvError {
    #[error("value {0} is outside [0,1]")]
    OutOfRange(String),
    #[error("malformed value {0:?}")]
    Malformed(String),
    #[error("world {world} out of range for a frame of {size} worlds")]
    WorldOutOfRange { world: usize, size: usize },
    #[error("sloping functions of different sizes ({0} and {1})")]
    SizeMismatch(usize, usize),
    #[error("values {0} violate the sloping condition")]
    NotSloping(String),
    #[error("a frame needs at least one world")]
    EmptyFrame,
    #[error("no value assigned to atom `{0}`")]
    UnassignedAtom(String),
    #[error("sloping functions {0} and {1} are incomparable")]
    Incomparable(String, String),
}

/// A rational in `[0,1]`, always in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MVValue(Ratio<i64>);

impl MVValue {
    pub const ZERO: MVValue = MVValue(Ratio::new_raw(0, 1));
    pub const ONE: MVValue = MVValue(Ratio::new_raw(1, 1));

    /// `numer/denom`, reduced.
    pub fn new(numer: u64, denom: u64) -> Result<MVValue, MvError> {
        if denom == 0 || numer > denom {
            return Err(MvError::OutOfRange(format!("{numer}/{denom}")));
        }
        let (n, d) = (
            i64::try_from(numer).map_err(|_| MvError::Malformed(numer.to_string()))?,
            i64::try_from(denom).map_err(|_| MvError::Malformed(denom.to_string()))?,
        );
        Ok(MVValue(Ratio::new(n, d)))
    }

    /// Panicking shorthand for literals in tests and templates.
    pub fn frac(numer: u64, denom: u64) -> MVValue {
        MVValue::new(numer, denom).expect("fraction in [0,1]")
    }

    fn from_ratio(r: Ratio<i64>) -> MVValue {
        debug_assert!(r >= Ratio::from_integer(0) && r <= Ratio::from_integer(1));
        MVValue(r)
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer() as u64
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom() as u64
    }

    pub fn is_zero(&self) -> bool {
        *self == MVValue::ZERO
    }

    pub fn is_one(&self) -> bool {
        *self == MVValue::ONE
    }

    /// `1 - x`.
    pub fn complement(self) -> MVValue {
        MVValue::from_ratio(Ratio::from_integer(1) - self.0)
    }

    pub fn and(self, other: MVValue) -> MVValue {
        self.min(other)
    }

    pub fn or(self, other: MVValue) -> MVValue {
        self.max(other)
    }

    /// Łukasiewicz t-norm `max{0, x + y - 1}`.
    pub fn otimes(self, other: MVValue) -> MVValue {
        let s = self.0 + other.0 - Ratio::from_integer(1);
        MVValue::from_ratio(s.max(Ratio::from_integer(0)))
    }

    /// Residuum `min{1, 1 - x + y}`.
    pub fn implies(self, other: MVValue) -> MVValue {
        let s = Ratio::from_integer(1) - self.0 + other.0;
        MVValue::from_ratio(s.min(Ratio::from_integer(1)))
    }

    /// Monteiro-Baaz Δ: `1` at `1`, `0` below.
    pub fn floor(self) -> MVValue {
        if self.is_one() {
            MVValue::ONE
        } else {
            MVValue::ZERO
        }
    }
}

pub fn mv_and(x: MVValue, y: MVValue) -> MVValue {
    x.and(y)
}

pub fn mv_or(x: MVValue, y: MVValue) -> MVValue {
    x.or(y)
}

pub fn mv_otimes(x: MVValue, y: MVValue) -> MVValue {
    x.otimes(y)
}

pub fn mv_impl(x: MVValue, y: MVValue) -> MVValue {
    x.implies(y)
}

pub fn mv_floor(x: MVValue) -> MVValue {
    x.floor()
}

impl fmt::Display for MVValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for MVValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for MVValue {
    type Err = MvError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || MvError::Malformed(s.to_string());
        let (n, d) = match s.trim().split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: u64 = n.parse().map_err(|_| malformed())?;
        let d: u64 = d.parse().map_err(|_| malformed())?;
        MVValue::new(n, d)
    }
}

/// Which of the three binary MV operations `slope_combine` applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointwiseOp {
    And,
    Or,
    Otimes,
}

impl PointwiseOp {
    pub fn apply(self, x: MVValue, y: MVValue) -> MVValue {
        match self {
            PointwiseOp::And => x.and(y),
            PointwiseOp::Or => x.or(y),
            PointwiseOp::Otimes => x.otimes(y),
        }
    }
}

/// `min{ f(w), inf_{v > w} floor(f(v)) }`, with the empty infimum taken as `1`.
///
/// `values` need not be sloping.
pub fn floored_inf(values: &[MVValue], w: usize) -> Result<MVValue, MvError> {
    let here = *values.get(w).ok_or(MvError::WorldOutOfRange {
        world: w,
        size: values.len(),
    })?;
    let later = values[w + 1..]
        .iter()
        .map(|v| v.floor())
        .min()
        .unwrap_or(MVValue::ONE);
    Ok(here.min(later))
}

/// The floored infimum at every world at once, by a single right-to-left scan.
pub fn floored_inf_profile(values: &[MVValue]) -> Vec<MVValue> {
    let mut out = vec![MVValue::ZERO; values.len()];
    let mut later_all_one = true;
    for (w, &v) in values.iter().enumerate().rev() {
        out[w] = if later_all_one { v } else { MVValue::ZERO };
        later_all_one &= v.is_one();
    }
    out
}

/// `values[i] > 0` forces `values[j] = 1` for every `j > i`.
pub fn slope_check(values: &[MVValue]) -> bool {
    match values.iter().position(|v| !v.is_zero()) {
        Some(i) => values[i + 1..].iter().all(|v| v.is_one()),
        None => true,
    }
}

/// A map from worlds `0..k` (ordered by index) into `[0,1]` that is zero up
/// to some world, takes an arbitrary value there, and is one afterwards.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SlopingFunction {
    values: Vec<MVValue>,
}

impl SlopingFunction {
    pub fn new(values: Vec<MVValue>) -> Result<Self, MvError> {
        if values.is_empty() {
            return Err(MvError::EmptyFrame);
        }
        if !slope_check(&values) {
            return Err(MvError::NotSloping(format_values(&values)));
        }
        Ok(SlopingFunction { values })
    }

    pub fn constant(size: usize, value: MVValue) -> Result<Self, MvError> {
        if size == 0 {
            return Err(MvError::EmptyFrame);
        }
        if size > 1 && !value.is_zero() && !value.is_one() {
            return Err(MvError::NotSloping(format_values(&vec![value; size])));
        }
        Ok(SlopingFunction {
            values: vec![value; size],
        })
    }

    pub fn bottom(size: usize) -> Self {
        assert!(size > 0, "a frame needs at least one world");
        SlopingFunction {
            values: vec![MVValue::ZERO; size],
        }
    }

    pub fn top(size: usize) -> Self {
        assert!(size > 0, "a frame needs at least one world");
        SlopingFunction {
            values: vec![MVValue::ONE; size],
        }
    }

    /// Zero before `pos`, `value` at `pos`, one after. `value` must be positive.
    pub fn step(size: usize, pos: usize, value: MVValue) -> Result<Self, MvError> {
        if pos >= size {
            return Err(MvError::WorldOutOfRange { world: pos, size });
        }
        let mut values = vec![MVValue::ZERO; size];
        values[pos] = value;
        values[pos + 1..].fill(MVValue::ONE);
        SlopingFunction::new(values)
    }

    pub fn size(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[MVValue] {
        &self.values
    }

    pub fn at(&self, w: usize) -> MVValue {
        self.values[w]
    }

    pub fn is_top(&self) -> bool {
        self.values.iter().all(|v| v.is_one())
    }

    pub fn into_values(self) -> Vec<MVValue> {
        self.values
    }

    /// The floored infimum of an arbitrary sequence; sloping by construction.
    pub fn floored(values: &[MVValue]) -> Result<Self, MvError> {
        if values.is_empty() {
            return Err(MvError::EmptyFrame);
        }
        let values = floored_inf_profile(values);
        debug_assert!(slope_check(&values));
        Ok(SlopingFunction { values })
    }

    pub(crate) fn from_values_unchecked(values: Vec<MVValue>) -> Self {
        debug_assert!(!values.is_empty() && slope_check(&values));
        SlopingFunction { values }
    }

    /// Partial pointwise order; on sloping functions this is always `Some`.
    pub fn pointwise_cmp(&self, other: &SlopingFunction) -> Option<Ordering> {
        let mut le = true;
        let mut ge = true;
        for (a, b) in self.values.iter().zip(&other.values) {
            le &= a <= b;
            ge &= a >= b;
        }
        match (le, ge) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}

impl fmt::Display for SlopingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_values(&self.values))
    }
}

impl fmt::Debug for SlopingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn format_values(values: &[MVValue]) -> String {
    let inner: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("[{}]", inner.join(", "))
}

fn check_sizes(f: &SlopingFunction, g: &SlopingFunction) -> Result<(), MvError> {
    if f.size() == g.size() {
        Ok(())
    } else {
        Err(MvError::SizeMismatch(f.size(), g.size()))
    }
}

/// Pointwise `∧`, `∨` or `⊗` of two sloping functions.
pub fn slope_combine(
    f: &SlopingFunction,
    g: &SlopingFunction,
    op: PointwiseOp,
) -> Result<SlopingFunction, MvError> {
    check_sizes(f, g)?;
    let values = f
        .values
        .iter()
        .zip(&g.values)
        .map(|(&a, &b)| op.apply(a, b))
        .collect();
    Ok(SlopingFunction::from_values_unchecked(values))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlopeOrdering {
    Le,
    Ge,
    Eq,
}

/// Compares two sloping functions pointwise. Sloping functions over a chain
/// are totally ordered, so the `Incomparable` error is never produced for
/// values built through this module.
pub fn slope_compare(f: &SlopingFunction, g: &SlopingFunction) -> Result<SlopeOrdering, MvError> {
    check_sizes(f, g)?;
    match f.pointwise_cmp(g) {
        Some(Ordering::Equal) => Ok(SlopeOrdering::Eq),
        Some(Ordering::Less) => Ok(SlopeOrdering::Le),
        Some(Ordering::Greater) => Ok(SlopeOrdering::Ge),
        None => Err(MvError::Incomparable(f.to_string(), g.to_string())),
    }
}

/// An assignment of values to atoms for single-world evaluation.
pub type Assignment = BTreeMap<String, MVValue>;

/// Value of `f` in the standard MV-chain under `assignment`.
pub fn mv_denote(assignment: &Assignment, f: &Formula) -> Result<MVValue, MvError> {
    Ok(match f {
        Formula::Atom(name) => *assignment
            .get(name)
            .ok_or_else(|| MvError::UnassignedAtom(name.clone()))?,
        Formula::Bottom => MVValue::ZERO,
        Formula::Top => MVValue::ONE,
        Formula::And(l, r) => mv_denote(assignment, l)?.and(mv_denote(assignment, r)?),
        Formula::Or(l, r) => mv_denote(assignment, l)?.or(mv_denote(assignment, r)?),
        Formula::Tensor(l, r) => mv_denote(assignment, l)?.otimes(mv_denote(assignment, r)?),
        Formula::Implies(l, r) => mv_denote(assignment, l)?.implies(mv_denote(assignment, r)?),
    })
}

/// The finite Łukasiewicz chain `{0, 1/n, ..., 1}`.
pub fn lukasiewicz_chain(n: u64) -> Vec<MVValue> {
    assert!(n > 0, "chain denominator must be positive");
    (0..=n).map(|i| MVValue::frac(i, n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;
    use proptest::prelude::*;

    fn v(n: u64, d: u64) -> MVValue {
        MVValue::frac(n, d)
    }

    fn sf(values: &[MVValue]) -> SlopingFunction {
        SlopingFunction::new(values.to_vec()).unwrap()
    }

    #[test]
    fn canonical_form_and_text() {
        assert_eq!(v(2, 4), v(1, 2));
        assert_eq!(v(2, 4).numer(), 1);
        assert_eq!(v(0, 7), MVValue::ZERO);
        assert_eq!(v(0, 7).denom(), 1);
        assert_eq!(v(5, 5), MVValue::ONE);
        assert_eq!(v(3, 6).to_string(), "1/2");
        assert_eq!(MVValue::ZERO.to_string(), "0");
        assert_eq!(MVValue::ONE.to_string(), "1");
        assert_eq!("2/6".parse::<MVValue>().unwrap(), v(1, 3));
        assert_eq!("1".parse::<MVValue>().unwrap(), MVValue::ONE);
        assert!("3/2".parse::<MVValue>().is_err());
        assert!("1/0".parse::<MVValue>().is_err());
        assert!("-1/2".parse::<MVValue>().is_err());
        assert!("x".parse::<MVValue>().is_err());
        assert!(v(1, 3) < v(1, 2));
    }

    #[test]
    fn operation_examples() {
        assert_eq!(mv_otimes(v(1, 2), v(1, 2)), MVValue::ZERO);
        assert_eq!(mv_impl(v(3, 4), v(1, 2)), v(3, 4));
        for x in lukasiewicz_chain(5) {
            assert_eq!(mv_impl(x, x), MVValue::ONE);
        }
        assert_eq!(mv_and(v(1, 3), v(1, 2)), v(1, 3));
        assert_eq!(mv_or(v(1, 3), v(1, 2)), v(1, 2));
        assert_eq!(v(1, 3).complement(), v(2, 3));
    }

    #[test]
    fn floor_examples() {
        assert_eq!(mv_floor(MVValue::ONE), MVValue::ONE);
        assert_eq!(mv_floor(v(2, 3)), MVValue::ZERO);
        assert_eq!(mv_floor(MVValue::ZERO), MVValue::ZERO);
    }

    #[test]
    fn floored_inf_examples() {
        let one = MVValue::ONE;
        assert_eq!(floored_inf(&[v(1, 2), one, one], 0).unwrap(), v(1, 2));
        assert_eq!(floored_inf(&[v(1, 2), v(2, 3), one], 0).unwrap(), MVValue::ZERO);
        assert_eq!(floored_inf(&[v(2, 3)], 0).unwrap(), v(2, 3));
        assert_eq!(
            floored_inf(&[v(2, 3)], 1),
            Err(MvError::WorldOutOfRange { world: 1, size: 1 })
        );
    }

    #[test]
    fn slope_check_examples() {
        assert!(slope_check(&[MVValue::ZERO, v(1, 2), MVValue::ONE]));
        assert!(!slope_check(&[v(1, 2), v(1, 2), MVValue::ONE]));
        assert!(slope_check(&[MVValue::ZERO; 3]));
        assert!(slope_check(&[]));
    }

    #[test]
    fn combine_examples() {
        let one = MVValue::ONE;
        let f = sf(&[v(1, 2), one]);
        assert_eq!(
            slope_combine(&f, &sf(&[one, one]), PointwiseOp::Otimes).unwrap(),
            f
        );
        assert_eq!(
            slope_combine(&f, &sf(&[v(2, 3), one]), PointwiseOp::Otimes).unwrap(),
            sf(&[v(1, 6), one])
        );
        assert_eq!(
            slope_combine(&sf(&[MVValue::ZERO, one]), &f, PointwiseOp::And).unwrap(),
            sf(&[MVValue::ZERO, one])
        );
        assert_eq!(
            slope_combine(&f, &sf(&[one]), PointwiseOp::Or),
            Err(MvError::SizeMismatch(2, 1))
        );
    }

    #[test]
    fn compare_examples() {
        let (zero, one) = (MVValue::ZERO, MVValue::ONE);
        assert_eq!(
            slope_compare(&sf(&[zero, v(1, 2), one]), &sf(&[zero, zero, one])).unwrap(),
            SlopeOrdering::Ge
        );
        assert_eq!(
            slope_compare(&sf(&[zero, one]), &sf(&[zero, one])).unwrap(),
            SlopeOrdering::Eq
        );
        assert_eq!(
            slope_compare(&sf(&[v(1, 2), one]), &sf(&[v(2, 3), one])).unwrap(),
            SlopeOrdering::Le
        );
        assert!(slope_compare(&sf(&[one]), &sf(&[one, one])).is_err());
    }

    #[test]
    fn sloping_constructors() {
        assert!(SlopingFunction::new(vec![]).is_err());
        assert!(SlopingFunction::new(vec![v(1, 2), v(1, 2)]).is_err());
        assert!(SlopingFunction::constant(2, v(1, 2)).is_err());
        assert_eq!(SlopingFunction::constant(1, v(1, 2)).unwrap().values(), &[v(1, 2)]);
        assert_eq!(
            SlopingFunction::step(3, 1, v(1, 3)).unwrap().values(),
            &[MVValue::ZERO, v(1, 3), MVValue::ONE]
        );
        assert!(SlopingFunction::step(3, 3, v(1, 3)).is_err());
    }

    #[test]
    fn denote_examples() {
        let mut a = Assignment::new();
        a.insert("p".into(), v(1, 2));
        assert_eq!(
            mv_denote(&a, &parse_formula("p * p").unwrap()).unwrap(),
            MVValue::ZERO
        );
        assert_eq!(
            mv_denote(&a, &parse_formula("bot -> p").unwrap()).unwrap(),
            MVValue::ONE
        );
        assert_eq!(
            mv_denote(&a, &parse_formula("p -> q").unwrap()),
            Err(MvError::UnassignedAtom("q".into()))
        );
        let prelin = parse_formula("(p->q)|(q->p)").unwrap();
        for x in lukasiewicz_chain(4) {
            for y in lukasiewicz_chain(3) {
                let a: Assignment = [("p".to_string(), x), ("q".to_string(), y)].into();
                assert_eq!(mv_denote(&a, &prelin).unwrap(), MVValue::ONE);
            }
        }
    }

    fn grid_value() -> impl Strategy<Value = MVValue> {
        (1u64..=12).prop_flat_map(|d| (0..=d).prop_map(move |n| MVValue::frac(n, d)))
    }

    fn any_sequence() -> impl Strategy<Value = Vec<MVValue>> {
        proptest::collection::vec(grid_value(), 1..6)
    }

    fn sloping(size: usize) -> impl Strategy<Value = SlopingFunction> {
        (0..=size, grid_value()).prop_map(move |(pos, val)| {
            if pos == size || val.is_zero() {
                SlopingFunction::bottom(size)
            } else {
                SlopingFunction::step(size, pos, val).unwrap()
            }
        })
    }

    proptest! {
        #[test]
        fn residuation(x in grid_value(), y in grid_value(), z in grid_value()) {
            prop_assert_eq!(x.otimes(y) <= z, x <= y.implies(z));
        }

        #[test]
        fn divisibility(x in grid_value(), y in grid_value()) {
            prop_assert_eq!(x.otimes(x.implies(y)), x.and(y));
        }

        #[test]
        fn chain_closure(n in 1u64..16, i in 0u64..16, j in 0u64..16) {
            let (x, y) = (MVValue::frac(i % (n + 1), n), MVValue::frac(j % (n + 1), n));
            for out in [x.and(y), x.or(y), x.otimes(y), x.implies(y), x.floor()] {
                prop_assert_eq!(n % out.denom(), 0);
            }
        }

        #[test]
        fn floored_inf_forms_agree(values in any_sequence()) {
            let scan = floored_inf_profile(&values);
            for w in 0..values.len() {
                let two_case = if values[w + 1..].iter().all(|v| v.is_one()) {
                    values[w]
                } else {
                    MVValue::ZERO
                };
                prop_assert_eq!(floored_inf(&values, w).unwrap(), two_case);
                prop_assert_eq!(scan[w], two_case);
            }
            prop_assert!(slope_check(&scan));
        }

        #[test]
        fn combine_and_compare_stay_in_the_chain(
            (f, g) in (1usize..6).prop_flat_map(|k| (sloping(k), sloping(k)))
        ) {
            for op in [PointwiseOp::And, PointwiseOp::Or, PointwiseOp::Otimes] {
                let h = slope_combine(&f, &g, op).unwrap();
                prop_assert!(slope_check(h.values()));
            }
            prop_assert!(slope_compare(&f, &g).is_ok());
            prop_assert!(f.values().windows(2).all(|w| w[0] <= w[1]));
        }
    }
}

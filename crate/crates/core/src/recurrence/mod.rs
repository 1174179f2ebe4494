//! Exact linear recurrences: constant or polynomial-in-`n` coefficients,
//! coupled systems, and numeric identity checks on their tables.

mod form;
mod identity;
pub mod sequences;
mod system;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::elimination::IntPoly;

pub use form::{FormTerm, LinearForm, SequenceLookup};
pub use identity::{check_identity, Identity, IdentityCheck};
pub use system::{eval_system, CoupledSystemSpec, MemberSpec, SystemTables};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecurrenceError {
    #[error("{name}: step n = {n} does not divide exactly")]
    NonIntegralStep { name: String, n: usize },
    #[error("{name}: leading coefficient vanishes at n = {n}")]
    ZeroLeadingCoefficient { name: String, n: usize },
    #[error("{name}: {reason}")]
    InvalidSpec { name: String, reason: String },
    #[error("system {name} has a same-index dependency cycle through {members:?}")]
    UnstratifiableSystem { name: String, members: Vec<String> },
    #[error("unknown sequence member `{0}`")]
    UnknownMember(String),
    #[error("index {index} of `{member}` is not available")]
    IndexOutOfRange { member: String, index: isize },
    #[error("cannot parse `{text}` at byte {position}: {message}")]
    Parse { text: String, position: usize, message: String },
}

/// A polynomial in `n` with rational coefficients, ascending degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientPoly {
    coeffs: Vec<BigRational>,
}

impl CoefficientPoly {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        let mut p = CoefficientPoly { coeffs };
        while p.coeffs.last().is_some_and(Zero::is_zero) {
            p.coeffs.pop();
        }
        p
    }

    pub fn constant(c: i64) -> Self {
        Self::from_ints(&[c])
    }

    /// `c0 + c1*n`.
    pub fn linear(c0: i64, c1: i64) -> Self {
        Self::from_ints(&[c0, c1])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn eval(&self, n: usize) -> BigRational {
        let x = BigRational::from_integer(n.into());
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    /// The value when this is an integer constant.
    pub fn as_integer_constant(&self) -> Option<BigInt> {
        match self.coeffs.as_slice() {
            [] => Some(BigInt::zero()),
            [c] if c.is_integer() => Some(c.to_integer()),
            _ => None,
        }
    }
}

/// `lhs(n) * s(n) = sum_k coeffs[k](n) * s(n-1-k)` for `n >= initial.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceSpec {
    pub name: String,
    pub lhs: CoefficientPoly,
    pub coeffs: Vec<CoefficientPoly>,
    pub initial: Vec<BigInt>,
}

impl RecurrenceSpec {
    /// Monic recurrence with integer constant coefficients.
    pub fn constant(name: &str, coeffs: &[i64], initial: &[i64]) -> Self {
        RecurrenceSpec {
            name: name.to_string(),
            lhs: CoefficientPoly::constant(1),
            coeffs: coeffs.iter().map(|&c| CoefficientPoly::constant(c)).collect(),
            initial: initial.iter().map(|&v| BigInt::from(v)).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn validate(&self) -> Result<(), RecurrenceError> {
        let invalid = |reason: &str| RecurrenceError::InvalidSpec { name: self.name.clone(), reason: reason.to_string() };
        if self.order() == 0 {
            return Err(invalid("order must be at least 1"));
        }
        if self.initial.len() < self.order() {
            return Err(invalid("fewer initial values than the order"));
        }
        Ok(())
    }

    /// `x^k - c_0 x^{k-1} - ... - c_{k-1}` for monic constant-coefficient specs.
    pub fn characteristic_polynomial(&self) -> Option<IntPoly> {
        if self.lhs.as_integer_constant()? != BigInt::one() {
            return None;
        }
        let k = self.order();
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[k - 1 - i] = -c.as_integer_constant()?;
        }
        Some(IntPoly::new(coeffs))
    }

    fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        if self.lhs.as_integer_constant()? != BigInt::one() {
            return None;
        }
        self.coeffs.iter().map(CoefficientPoly::as_integer_constant).collect()
    }
}

/// A named, append-only table of sequence values indexed from 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTable {
    pub name: String,
    values: Vec<BigInt>,
}

impl SequenceTable {
    pub fn new(name: &str, values: Vec<BigInt>) -> Self {
        SequenceTable { name: name.to_string(), values }
    }

    pub fn from_ints(name: &str, values: &[i64]) -> Self {
        Self::new(name, values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn get(&self, n: usize) -> Option<&BigInt> {
        self.values.get(n)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn push(&mut self, value: BigInt) {
        self.values.push(value);
    }

    pub fn into_values(self) -> Vec<BigInt> {
        self.values
    }
}

impl SequenceLookup for SequenceTable {
    fn lookup(&self, name: &str) -> Option<&[BigInt]> {
        (name == self.name).then_some(self.values.as_slice())
    }
}

/// Evaluates `spec` for indices `0..=upto`.
///
/// Polynomial-coefficient steps are divided by `lhs(n)` and must come out
/// integral; a remainder means the spec or its initial values are wrong.
pub fn eval_recurrence(spec: &RecurrenceSpec, upto: usize) -> Result<SequenceTable, RecurrenceError> {
    spec.validate()?;
    let mut values: Vec<BigInt> = spec.initial.iter().take(upto + 1).cloned().collect();

    if let Some(coeffs) = spec.integer_coeffs() {
        for n in values.len()..=upto {
            let next = coeffs.iter().enumerate().fold(BigInt::zero(), |acc, (k, c)| acc + c * &values[n - 1 - k]);
            values.push(next);
        }
        return Ok(SequenceTable::new(&spec.name, values));
    }

    for n in values.len()..=upto {
        let rhs = spec
            .coeffs
            .iter()
            .enumerate()
            .fold(BigRational::zero(), |acc, (k, c)| acc + c.eval(n) * BigRational::from_integer(values[n - 1 - k].clone()));
        let lead = spec.lhs.eval(n);
        if lead.is_zero() {
            return Err(RecurrenceError::ZeroLeadingCoefficient { name: spec.name.clone(), n });
        }
        let q = rhs / lead;
        if !q.is_integer() {
            return Err(RecurrenceError::NonIntegralStep { name: spec.name.clone(), n });
        }
        values.push(q.to_integer());
    }
    Ok(SequenceTable::new(&spec.name, values))
}

/// Result of fitting `s(n) = c_1 s(n-1) + ... + c_k s(n-k)` to known values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecurrenceFit {
    Unique(Vec<BigRational>),
    Underdetermined,
    Inconsistent,
}

/// Solves for constant coefficients of an order-`order` recurrence using
/// the equations at every `n` in `range`.
pub fn fit_constant_recurrence(
    values: &[BigInt],
    order: usize,
    range: std::ops::RangeInclusive<usize>,
) -> Result<RecurrenceFit, RecurrenceError> {
    use crate::elimination::{solve, RatMatrix, Solution};
    let (lo, hi) = (*range.start(), *range.end());
    if lo < order || hi >= values.len() || lo > hi {
        return Err(RecurrenceError::IndexOutOfRange { member: "fit".to_string(), index: hi as isize });
    }
    let rows: Vec<Vec<BigRational>> = (lo..=hi)
        .map(|n| (1..=order).map(|k| BigRational::from_integer(values[n - k].clone())).collect())
        .collect();
    let rhs: Vec<BigRational> = (lo..=hi).map(|n| BigRational::from_integer(values[n].clone())).collect();
    let m = RatMatrix::from_rows(rows);
    Ok(match solve(&m, &rhs) {
        Solution::Unique(x) => RecurrenceFit::Unique(x),
        Solution::Infinite { .. } => RecurrenceFit::Underdetermined,
        Solution::Inconsistent => RecurrenceFit::Inconsistent,
    })
}

//! Integer linear combinations of shifted sequence terms, written as text:
//! `2*r2[n-1] - c[n+1] + d1[n]`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::RecurrenceError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormTerm {
    pub coeff: BigInt,
    pub member: String,
    /// Index offset relative to `n`.
    pub offset: isize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinearForm {
    pub terms: Vec<FormTerm>,
}

/// Read access to named sequence tables.
pub trait SequenceLookup {
    fn lookup(&self, name: &str) -> Option<&[BigInt]>;
}

impl SequenceLookup for BTreeMap<String, Vec<BigInt>> {
    fn lookup(&self, name: &str) -> Option<&[BigInt]> {
        self.get(name).map(Vec::as_slice)
    }
}

impl LinearForm {
    pub fn parse(text: &str) -> Result<Self, RecurrenceError> {
        Parser { src: text, pos: 0 }.form()
    }

    pub fn term(mut self, coeff: impl Into<BigInt>, member: &str, offset: isize) -> Self {
        self.terms.push(FormTerm { coeff: coeff.into(), member: member.to_string(), offset });
        self
    }

    pub fn min_offset(&self) -> isize {
        self.terms.iter().map(|t| t.offset).min().unwrap_or(0)
    }

    pub fn max_offset(&self) -> isize {
        self.terms.iter().map(|t| t.offset).max().unwrap_or(0)
    }

    pub fn members(&self) -> impl Iterator<Item = &str> {
        self.terms.iter().map(|t| t.member.as_str())
    }

    /// Value at index `n`; every referenced index must exist.
    pub fn eval(&self, tables: &impl SequenceLookup, n: usize) -> Result<BigInt, RecurrenceError> {
        let mut acc = BigInt::zero();
        for t in &self.terms {
            let values = tables.lookup(&t.member).ok_or_else(|| RecurrenceError::UnknownMember(t.member.clone()))?;
            let idx = n as isize + t.offset;
            let v = usize::try_from(idx)
                .ok()
                .and_then(|i| values.get(i))
                .ok_or(RecurrenceError::IndexOutOfRange { member: t.member.clone(), index: idx })?;
            acc += &t.coeff * v;
        }
        Ok(acc)
    }

    /// Self minus other, with like terms merged and zeros dropped.
    pub fn minus(&self, other: &LinearForm) -> LinearForm {
        let mut merged: BTreeMap<(String, isize), BigInt> = BTreeMap::new();
        for t in &self.terms {
            *merged.entry((t.member.clone(), t.offset)).or_default() += &t.coeff;
        }
        for t in &other.terms {
            *merged.entry((t.member.clone(), t.offset)).or_default() -= &t.coeff;
        }
        LinearForm {
            terms: merged
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((member, offset), coeff)| FormTerm { coeff, member, offset })
                .collect(),
        }
    }

    /// The same form with every offset moved by `by`.
    pub fn shifted(&self, by: isize) -> LinearForm {
        LinearForm {
            terms: self.terms.iter().map(|t| FormTerm { offset: t.offset + by, ..t.clone() }).collect(),
        }
    }
}

impl FromStr for LinearForm {
    type Err = RecurrenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LinearForm::parse(s)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let mag = t.coeff.abs();
            match (i, t.coeff.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            match t.offset {
                0 => write!(f, "{}[n]", t.member)?,
                o if o > 0 => write!(f, "{}[n+{o}]", t.member)?,
                o => write!(f, "{}[n{o}]", t.member)?,
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> RecurrenceError {
        RecurrenceError::Parse { text: self.src.to_string(), position: self.pos, message: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            None
        } else {
            digits.parse().ok()
        }
    }

    fn form(mut self) -> Result<LinearForm, RecurrenceError> {
        let mut form = LinearForm::default();
        let mut negative = self.eat('-');
        loop {
            form.terms.push(self.term(negative)?);
            self.skip_ws();
            if self.pos == self.src.len() {
                return Ok(form);
            }
            negative = if self.eat('+') {
                false
            } else if self.eat('-') {
                true
            } else {
                return Err(self.error("expected '+' or '-'"));
            };
        }
    }

    fn term(&mut self, negative: bool) -> Result<FormTerm, RecurrenceError> {
        let mut coeff = match self.integer() {
            Some(c) => {
                self.eat('*');
                c
            }
            None => BigInt::one(),
        };
        if negative {
            coeff = -coeff;
        }
        self.skip_ws();
        let member = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_').to_string();
        if member.is_empty() || member.starts_with(|c: char| c.is_ascii_digit()) {
            return Err(self.error("expected a sequence name"));
        }
        if !self.eat('[') || !self.eat('n') {
            return Err(self.error("expected '[n'"));
        }
        let offset = if self.eat('+') {
            self.offset()?
        } else if self.eat('-') {
            -self.offset()?
        } else {
            0
        };
        if !self.eat(']') {
            return Err(self.error("expected ']'"));
        }
        Ok(FormTerm { coeff, member, offset })
    }

    fn offset(&mut self) -> Result<isize, RecurrenceError> {
        self.integer()
            .and_then(|v| isize::try_from(v).ok())
            .ok_or_else(|| self.error("expected an index offset"))
    }
}

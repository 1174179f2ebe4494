use serde::Serialize;

use super::{LinearForm, RecurrenceError, SequenceLookup};

/// `lhs(n) = rhs(n)` over named sequence tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub name: String,
    pub lhs: LinearForm,
    pub rhs: LinearForm,
    /// Smallest `n` the identity is claimed for, on top of the index floor
    /// implied by its shifts.
    pub from: usize,
}

impl Identity {
    /// Parses `"<form> = <form>"`.
    pub fn parse(name: &str, text: &str) -> Result<Self, RecurrenceError> {
        let (l, r) = text.split_once('=').ok_or_else(|| RecurrenceError::Parse {
            text: text.to_string(),
            position: 0,
            message: "expected '='".to_string(),
        })?;
        Ok(Identity { name: name.to_string(), lhs: LinearForm::parse(l)?, rhs: LinearForm::parse(r)?, from: 0 })
    }

    pub fn from_index(mut self, from: usize) -> Self {
        self.from = from;
        self
    }

    /// `sum = 0` form of the identity.
    pub fn difference(&self) -> LinearForm {
        self.lhs.minus(&self.rhs)
    }

    /// First index at which every referenced term has a non-negative index.
    pub fn index_floor(&self) -> usize {
        let lowest = self.lhs.min_offset().min(self.rhs.min_offset());
        ((-lowest).max(0) as usize).max(self.from)
    }
}

/// Outcome of checking one identity over a table range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    /// Inclusive checked range, absent when no index was admissible.
    pub checked: Option<(usize, usize)>,
    pub first_failure: Option<usize>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.checked.is_some() && self.first_failure.is_none()
    }
}

/// Checks `identity` for every admissible `n <= upto`: all shifted indices
/// must be non-negative and present in the tables.
pub fn check_identity(
    identity: &Identity,
    tables: &impl SequenceLookup,
    upto: usize,
) -> Result<IdentityCheck, RecurrenceError> {
    let diff = identity.difference();
    let lo = identity.index_floor();
    let mut hi = upto as isize;
    for t in identity.lhs.terms.iter().chain(&identity.rhs.terms) {
        let len = tables.lookup(&t.member).ok_or_else(|| RecurrenceError::UnknownMember(t.member.clone()))?.len();
        hi = hi.min(len as isize - 1 - t.offset);
    }
    let mut check = IdentityCheck { name: identity.name.clone(), checked: None, first_failure: None };
    if hi < lo as isize {
        return Ok(check);
    }
    let hi = hi as usize;
    check.checked = Some((lo, hi));
    for n in lo..=hi {
        if !num_traits::Zero::is_zero(&diff.eval(tables, n)?) {
            check.first_failure = Some(n);
            break;
        }
    }
    Ok(check)
}

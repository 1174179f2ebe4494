//! Mutually recursive integer sequences evaluated one index at a time.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use super::{LinearForm, RecurrenceError, SequenceLookup, SequenceTable};

/// One member of a coupled system: its values below the system's start
/// index and its defining rule for every later index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemberSpec {
    pub name: String,
    pub initial: Vec<BigInt>,
    /// Offsets are `<= 0`; offset 0 refers to members computed earlier in
    /// the same step.
    pub rule: LinearForm,
}

impl MemberSpec {
    pub fn new(name: &str, initial: &[i64], rule: &str) -> Result<Self, RecurrenceError> {
        Ok(MemberSpec {
            name: name.to_string(),
            initial: initial.iter().map(|&v| BigInt::from(v)).collect(),
            rule: LinearForm::parse(rule)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoupledSystemSpec {
    pub name: String,
    /// First index computed from the rules.
    pub start: usize,
    pub members: Vec<MemberSpec>,
}

impl CoupledSystemSpec {
    /// Member indices in an order where every same-index dependency is
    /// computed first. Ties keep declaration order.
    pub fn evaluation_order(&self) -> Result<Vec<usize>, RecurrenceError> {
        let index: BTreeMap<&str, usize> =
            self.members.iter().enumerate().map(|(i, m)| (m.name.as_str(), i)).collect();
        let invalid = |reason: String| RecurrenceError::InvalidSpec { name: self.name.clone(), reason };

        let mut deps: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.members.len()];
        for (i, m) in self.members.iter().enumerate() {
            if m.initial.len() < self.start {
                return Err(invalid(format!("{} needs {} initial values", m.name, self.start)));
            }
            for t in &m.rule.terms {
                let j = *index.get(t.member.as_str()).ok_or_else(|| RecurrenceError::UnknownMember(t.member.clone()))?;
                if t.offset > 0 {
                    return Err(invalid(format!("{} refers forward to {}[n+{}]", m.name, t.member, t.offset)));
                }
                if (-t.offset) as usize > self.start {
                    return Err(invalid(format!("{} reaches below index 0 at n = {}", m.name, self.start)));
                }
                if t.offset == 0 {
                    deps[i].insert(j);
                }
            }
        }

        let mut order = Vec::with_capacity(self.members.len());
        let mut done = vec![false; self.members.len()];
        while order.len() < self.members.len() {
            let ready = (0..self.members.len()).find(|&i| !done[i] && deps[i].iter().all(|&j| done[j]));
            match ready {
                Some(i) => {
                    done[i] = true;
                    order.push(i);
                }
                None => {
                    let members = (0..self.members.len())
                        .filter(|&i| !done[i])
                        .map(|i| self.members[i].name.clone())
                        .collect();
                    return Err(RecurrenceError::UnstratifiableSystem { name: self.name.clone(), members });
                }
            }
        }
        Ok(order)
    }
}

/// Filled tables of every member of a system.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SystemTables {
    tables: BTreeMap<String, SequenceTable>,
}

impl SystemTables {
    pub fn get(&self, name: &str) -> Option<&SequenceTable> {
        self.tables.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.tables.keys().map(String::as_str)
    }

    pub fn insert(&mut self, table: SequenceTable) {
        self.tables.insert(table.name.clone(), table);
    }

    /// Replaces one value; used to build perturbed tables for negative checks.
    pub fn with_value(mut self, name: &str, n: usize, value: BigInt) -> Self {
        if let Some(t) = self.tables.get(name) {
            let mut values = t.values().to_vec();
            if n < values.len() {
                values[n] = value;
            }
            self.tables.insert(name.to_string(), SequenceTable::new(name, values));
        }
        self
    }
}

impl SequenceLookup for SystemTables {
    fn lookup(&self, name: &str) -> Option<&[BigInt]> {
        self.tables.get(name).map(SequenceTable::values)
    }
}

struct Partial<'a> {
    names: &'a [String],
    values: &'a [Vec<BigInt>],
}

impl SequenceLookup for Partial<'_> {
    fn lookup(&self, name: &str) -> Option<&[BigInt]> {
        self.names.iter().position(|n| n == name).map(|i| self.values[i].as_slice())
    }
}

pub fn eval_system(spec: &CoupledSystemSpec, upto: usize) -> Result<SystemTables, RecurrenceError> {
    let order = spec.evaluation_order()?;
    let names: Vec<String> = spec.members.iter().map(|m| m.name.clone()).collect();
    let mut values: Vec<Vec<BigInt>> = spec
        .members
        .iter()
        .map(|m| m.initial.iter().take(spec.start.min(upto + 1)).cloned().collect())
        .collect();

    for n in spec.start..=upto {
        for &i in &order {
            let v = spec.members[i].rule.eval(&Partial { names: &names, values: &values }, n)?;
            values[i].push(v);
        }
    }

    let mut out = SystemTables::default();
    for (name, v) in names.iter().zip(values) {
        out.insert(SequenceTable::new(name, v));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(start: usize, members: &[(&str, &[i64], &str)]) -> CoupledSystemSpec {
        CoupledSystemSpec {
            name: "test".into(),
            start,
            members: members.iter().map(|(n, i, r)| MemberSpec::new(n, i, r).unwrap()).collect(),
        }
    }

    #[test]
    fn same_index_dependencies_are_ordered() {
        // b depends on a at the same index even though it is declared first.
        let s = spec(1, &[("b", &[0], "a[n] + b[n-1]"), ("a", &[1], "a[n-1] + 1*a[n-1]")]);
        assert_eq!(s.evaluation_order().unwrap(), vec![1, 0]);
        let t = eval_system(&s, 4).unwrap();
        let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(t.get("a").unwrap().values(), ints(&[1, 2, 4, 8, 16]).as_slice());
        assert_eq!(t.get("b").unwrap().values(), ints(&[0, 2, 6, 14, 30]).as_slice());
    }

    #[test]
    fn cycles_are_rejected() {
        let s = spec(1, &[("a", &[0], "b[n]"), ("b", &[0], "a[n]"), ("c", &[0], "c[n-1]")]);
        assert_eq!(
            s.evaluation_order(),
            Err(RecurrenceError::UnstratifiableSystem { name: "test".into(), members: vec!["a".into(), "b".into()] })
        );
    }

    #[test]
    fn malformed_systems() {
        assert!(matches!(spec(1, &[("a", &[0], "z[n-1]")]).evaluation_order(), Err(RecurrenceError::UnknownMember(_))));
        assert!(spec(1, &[("a", &[0], "a[n+1]")]).evaluation_order().is_err());
        assert!(spec(1, &[("a", &[0], "a[n-2]")]).evaluation_order().is_err());
        assert!(spec(2, &[("a", &[0], "a[n-1]")]).evaluation_order().is_err());
    }

    #[test]
    fn upto_inside_initial_segment() {
        let s = spec(2, &[("a", &[3, 4], "a[n-1] + a[n-2]")]);
        assert_eq!(eval_system(&s, 0).unwrap().get("a").unwrap().len(), 1);
    }
}

//! The named recurrences and coupled systems for walks on tiled boards.
//!
//! Member names in the systems: `r`, `a`, `c`, `d` count full tilings and
//! the three partial shapes; a trailing digit `j` marks walk totals ending
//! on grid line `j` (`r2` is the number of walks across `2 x n` boards).

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::{
    check_identity, eval_system, CoefficientPoly, CoupledSystemSpec, Identity, IdentityCheck, MemberSpec,
    RecurrenceError, RecurrenceSpec, SequenceTable,
};

fn system(name: &str, start: usize, members: &[(&str, &[i64], &str)]) -> CoupledSystemSpec {
    CoupledSystemSpec {
        name: name.to_string(),
        start,
        members: members
            .iter()
            .map(|(m, init, rule)| MemberSpec::new(m, init, rule).expect("built-in rule parses"))
            .collect(),
    }
}

pub fn fibonacci() -> RecurrenceSpec {
    RecurrenceSpec::constant("fib", &[1, 1], &[0, 1])
}

/// Tilings of the `2 x n` board.
pub fn tiling_count_recurrence() -> RecurrenceSpec {
    RecurrenceSpec::constant("r", &[3, 1, -1], &[1, 2, 7])
}

/// `n v(n) = (n+1) v(n-1) + (n+2) v(n-2)`.
pub fn v_polynomial_recurrence() -> RecurrenceSpec {
    RecurrenceSpec {
        name: "v".to_string(),
        lhs: CoefficientPoly::linear(0, 1),
        coeffs: vec![CoefficientPoly::linear(1, 1), CoefficientPoly::linear(2, 1)],
        initial: vec![BigInt::from(1), BigInt::from(2)],
    }
}

pub fn v_fourth_order_recurrence() -> RecurrenceSpec {
    RecurrenceSpec::constant("v", &[2, 1, -2, -1], &[1, 2, 5, 10])
}

/// `v(n) = v(n-1) + v(n-2) + F(n+1)`, with `g(n) = F(n+1)` carried along.
pub fn v_inhomogeneous_system() -> CoupledSystemSpec {
    system("v-fibonacci-forced", 2, &[("g", &[1, 1], "g[n-1] + g[n-2]"), ("v", &[1, 2], "v[n-1] + v[n-2] + g[n]")])
}

/// The three independent routes to `v(n)`.
#[derive(Debug, Clone)]
pub struct VRecurrences {
    pub polynomial: RecurrenceSpec,
    pub fourth_order: RecurrenceSpec,
    pub inhomogeneous: CoupledSystemSpec,
}

impl VRecurrences {
    /// Tables `0..=upto` for each route, in field order.
    pub fn eval(&self, upto: usize) -> Result<[SequenceTable; 3], RecurrenceError> {
        let forced = eval_system(&self.inhomogeneous, upto)?;
        Ok([
            super::eval_recurrence(&self.polynomial, upto)?,
            super::eval_recurrence(&self.fourth_order, upto)?,
            forced.get("v").expect("system defines v").clone(),
        ])
    }
}

pub fn v_closed_recurrences() -> VRecurrences {
    VRecurrences {
        polynomial: v_polynomial_recurrence(),
        fourth_order: v_fourth_order_recurrence(),
        inhomogeneous: v_inhomogeneous_system(),
    }
}

const TILING_MEMBERS: [(&str, &[i64], &str); 4] = [
    ("d", &[0, 0], "r[n-2]"),
    ("a", &[0, 0], "c[n-1]"),
    ("c", &[0, 1], "r[n-1] + a[n-1] + d[n]"),
    ("r", &[1, 2], "r[n-1] + a[n] + c[n] + d[n]"),
];

/// Full tilings `r` and the partial shapes `a`, `c`, `d`.
pub fn tiling_system() -> CoupledSystemSpec {
    system("tiling", 2, &TILING_MEMBERS)
}

/// The twelve-member walk system: tiling counts plus walk totals ending on
/// lines 1 and 2 for each board shape.
pub fn walk_system() -> CoupledSystemSpec {
    let mut members = TILING_MEMBERS.to_vec();
    members.extend_from_slice(&[
        ("d2", &[0, 0], "r2[n-2] + r1[n-2]"),
        ("d1", &[0, 0], "r1[n-2]"),
        ("a2", &[0, 0], "c2[n-1]"),
        ("a1", &[0, 0], "c1[n-1] + c[n-1]"),
        ("c2", &[0, 2], "r2[n-1] + r1[n-1] + a2[n-1] + a1[n-1] + d2[n] + d[n]"),
        ("c1", &[0, 1], "r1[n-1] + a1[n-1] + d1[n] + d[n]"),
        ("r2", &[1, 5], "r2[n-1] + r[n-1] + a2[n] + a1[n] + c2[n] + c[n] + d2[n] + d[n]"),
        ("r1", &[1, 3], "r[n-1] + a1[n] + c1[n] + c[n] + d1[n] + d[n]"),
    ]);
    system("walk", 2, &members)
}

/// Walk totals when the board is tiled by dominoes only.
pub fn domino_only_system() -> CoupledSystemSpec {
    system(
        "domino-walk",
        2,
        &[
            ("r", &[1, 1], "r[n-1] + r[n-2]"),
            ("r1", &[1, 1], "r1[n-2] + r[n]"),
            ("r2", &[1, 2], "r2[n-1] + r2[n-2] + r1[n-2] + r[n]"),
        ],
    )
}

/// Ninth-order recurrence for walks across square/domino tilings of `2 x n`.
pub fn w_ninth_order_recurrence() -> RecurrenceSpec {
    RecurrenceSpec::constant(
        "w",
        &[8, -17, -7, 41, 1, -23, 3, 4, -1],
        &[1, 5, 28, 130, 569, 2352, 9363, 36183, 136663],
    )
}

/// Sixth-order recurrence for walks across domino tilings of `2 x n`.
///
/// Six initial values cover `n = 0..=5`, which is exactly the order.
pub fn domino_only_recurrence() -> RecurrenceSpec {
    RecurrenceSpec::constant("w-domino", &[2, 2, -4, -2, 2, 1], &[1, 2, 6, 12, 26, 50])
}

/// Numeric identities the walk system must satisfy, from the tiling
/// reductions through the two equations eliminated to reach `r2`.
pub fn walk_identities() -> Vec<Identity> {
    let rules: &[(&str, &str)] = &[
        ("reduced-r", "r[n] = r[n-1] + r[n-2] + c[n] + c[n-1]"),
        ("reduced-c", "c[n] = r[n-1] + r[n-2] + c[n-2]"),
        ("r-third-order", "r[n] = 3*r[n-1] + r[n-2] - r[n-3]"),
        ("r-from-c-difference", "r[n] = c[n+1] - c[n]"),
        ("c-third-order", "c[n] = 3*c[n-1] + c[n-2] - c[n-3]"),
        ("four-eq-r2", "r2[n] = r2[n-1] + r2[n-2] + r1[n-2] + c2[n] + c2[n-1] + c1[n-1] + r[n]"),
        ("four-eq-r1", "r1[n] = r1[n-2] + c1[n] + c1[n-1] + r[n]"),
        ("four-eq-c2", "c2[n] = r2[n-1] + r2[n-2] + r1[n-1] + r1[n-2] + c2[n-2] + c1[n-2] + r[n-2] + c[n-2]"),
        ("four-eq-c1", "c1[n] = r1[n-1] + r1[n-2] + c1[n-2] + r[n-2] + c[n-2]"),
        ("line-difference-r", "r2[n] - r1[n] = r2[n-1] + r2[n-2] + c2[n] + c2[n-1] - c1[n]"),
        ("line-difference-c", "c2[n] - c1[n] = r2[n-1] + r2[n-2] + c2[n-2]"),
        ("r1-from-line-2", "r1[n] = r2[n] - 2*r2[n-1] - 2*r2[n-2] - c2[n-1] - c2[n-2]"),
        ("c1-from-line-2", "c1[n] = c2[n] - r2[n-1] - r2[n-2] - c2[n-2]"),
        (
            "r2-eliminated",
            "r2[n] = r2[n-1] + r2[n-2] - 3*r2[n-3] - 2*r2[n-4] + c2[n] + 2*c2[n-1] - 2*c2[n-3] - c2[n-4] + r[n]",
        ),
        (
            "c2-eliminated",
            "c2[n] = 2*r2[n-1] - 5*r2[n-3] - 3*r2[n-4] + c2[n-2] - 2*c2[n-3] - 2*c2[n-4] + r[n-2] + c[n-2]",
        ),
        (
            "r2-via-c",
            "r2[n] = r2[n-1] + r2[n-2] - 3*r2[n-3] - 2*r2[n-4] + c2[n] + 2*c2[n-1] - 2*c2[n-3] - c2[n-4] + c[n+1] - c[n]",
        ),
        (
            "c2-via-c",
            "c2[n] = 2*r2[n-1] - 5*r2[n-3] - 3*r2[n-4] + c2[n-2] - 2*c2[n-3] - 2*c2[n-4] + c[n-1]",
        ),
        ("shift-relation-a", SHIFT_RELATION_A),
        ("shift-relation-b", SHIFT_RELATION_B),
    ];
    rules.iter().map(|(name, rule)| Identity::parse(name, rule).expect("built-in identity parses")).collect()
}

/// `2 r2(n) - ... = c2(n+1) - c2(n) + ...`: its right side has the
/// coordinate vector `(1, -1, 0, 5, 0, -4, -1, 0, ...)` in `c2(n+1), c2(n), ...`.
pub const SHIFT_RELATION_A: &str = "2*r2[n] - r2[n-1] - 6*r2[n-2] + r2[n-3] + 6*r2[n-4] + 2*r2[n-5] \
     = c2[n+1] - c2[n] + 5*c2[n-2] - 4*c2[n-4] - c2[n-5]";

/// Right side coordinates `(1, -3, -2, 6, -3, -9, 0, 2, 0, ...)`.
pub const SHIFT_RELATION_B: &str =
    "2*r2[n] - 6*r2[n-1] - 7*r2[n-2] + 14*r2[n-3] + 14*r2[n-4] - 2*r2[n-5] - 3*r2[n-6] \
     = c2[n+1] - 3*c2[n] - 2*c2[n-1] + 6*c2[n-2] - 3*c2[n-3] - 9*c2[n-4] + 2*c2[n-6]";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub upto: usize,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }

    pub fn get(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Evaluates every identity in [`walk_identities`] on the walk system's
/// tables for `n <= upto`.
pub fn verify_intermediate_identities(upto: usize) -> Result<IdentityReport, RecurrenceError> {
    let tables = eval_system(&walk_system(), upto + 1)?;
    let checks = walk_identities()
        .iter()
        .map(|id| check_identity(id, &tables, upto))
        .collect::<Result<_, _>>()?;
    Ok(IdentityReport { upto, checks })
}

/// A sequence known from index `start` onward.
struct Tail {
    start: usize,
    values: Vec<BigInt>,
}

impl Tail {
    fn at(&self, n: usize) -> &BigInt {
        &self.values[n - self.start]
    }

    fn derive(&self, weights: &[i64]) -> Tail {
        let start = self.start + weights.len() - 1;
        let end = self.start + self.values.len();
        let values = (start..end)
            .map(|n| weights.iter().enumerate().fold(BigInt::zero(), |acc, (k, &c)| acc + c * self.at(n - k)))
            .collect();
        Tail { start, values }
    }
}

/// Checks the factored form of the ninth-order recurrence:
/// `y(n) = w(n) + w(n-1)`, `x(n) = y(n) - 3y(n-1) + y(n-2)`,
/// `t(n) = x(n) - 3x(n-1) - x(n-2) + x(n-3)`, and then
/// `t(n) = 3t(n-1) + t(n-2) - t(n-3)`.
///
/// Returns the inclusive range of `n` that was checked (empty below
/// `n = 9`) and the first failing index.
pub fn composed_form_report(w: &SequenceTable, upto: usize) -> IdentityCheck {
    let len = w.len().min(upto + 1);
    let w = Tail { start: 0, values: w.values()[..len].to_vec() };
    let y = w.derive(&[1, 1]);
    let x = y.derive(&[1, -3, 1]);
    let t = x.derive(&[1, -3, -1, 1]);
    let lo = t.start + 3;
    let hi = t.start + t.values.len();
    let mut check = IdentityCheck { name: "composed-form".to_string(), checked: None, first_failure: None };
    if hi <= lo {
        return check;
    }
    check.checked = Some((lo, hi - 1));
    check.first_failure = (lo..hi).find(|&n| {
        let rhs = BigInt::from(3) * t.at(n - 1) + t.at(n - 2) - t.at(n - 3);
        *t.at(n) != rhs
    });
    check
}

/// True iff the composed recurrence holds at every admissible `n <= upto`.
pub fn composed_form_check(w: &SequenceTable, upto: usize) -> bool {
    composed_form_report(w, upto).first_failure.is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::eval_recurrence;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn known_values_for_v() {
        assert_eq!(eval_recurrence(&v_polynomial_recurrence(), 4).unwrap().values(), ints(&[1, 2, 5, 10, 20]).as_slice());
    }

    #[test]
    fn polynomial_step_divides_for_long_range() {
        let v = eval_recurrence(&v_polynomial_recurrence(), 200).unwrap();
        for n in 2..=200usize {
            let num = BigInt::from(n + 1) * &v.values()[n - 1] + BigInt::from(n + 2) * &v.values()[n - 2];
            assert!((num % BigInt::from(n)).is_zero(), "n = {n}");
        }
    }

    #[test]
    fn three_v_routes_agree() {
        let routes = v_closed_recurrences().eval(200).unwrap();
        assert_eq!(routes[0].values()[3], BigInt::from(10));
        assert_eq!(routes[0].values()[0], BigInt::from(1));
        assert_eq!(routes[0].values(), routes[1].values());
        assert_eq!(routes[1].values(), routes[2].values());
    }

    #[test]
    fn ninth_order_initial_values() {
        let w = eval_recurrence(&w_ninth_order_recurrence(), 10).unwrap();
        assert_eq!(w.values()[8], BigInt::from(136663));
    }

    #[test]
    fn tiling_system_table() {
        let t = eval_system(&tiling_system(), 6).unwrap();
        assert_eq!(t.get("r").unwrap().values(), ints(&[1, 2, 7, 22, 71, 228, 733]).as_slice());
        assert_eq!(t.get("c").unwrap().values(), ints(&[0, 1, 3, 10, 32, 103, 331]).as_slice());
    }

    #[test]
    fn walk_system_first_rows() {
        let t = eval_system(&walk_system(), 2).unwrap();
        assert_eq!(t.get("r2").unwrap().values(), ints(&[1, 5, 28]).as_slice());
        assert_eq!(t.get("r1").unwrap().values(), ints(&[1, 3, 14]).as_slice());
        assert_eq!(t.get("c2").unwrap().values(), ints(&[0, 2, 11]).as_slice());
        assert_eq!(t.get("d1").unwrap().values(), ints(&[0, 0, 1]).as_slice());
    }

    #[test]
    fn domino_system_and_recurrence() {
        let t = eval_system(&domino_only_system(), 5).unwrap();
        assert_eq!(t.get("r2").unwrap().values(), ints(&[1, 2, 6, 12, 26, 50]).as_slice());
        let w = eval_recurrence(&domino_only_recurrence(), 6).unwrap();
        assert_eq!(w.values()[6], BigInt::from(97));
        assert_eq!(w.values()[5], BigInt::from(50));
    }

    #[test]
    fn ninth_order_matches_system() {
        let sys = eval_system(&walk_system(), 50).unwrap();
        let rec = eval_recurrence(&w_ninth_order_recurrence(), 50).unwrap();
        assert_eq!(sys.get("r2").unwrap().values(), rec.values());
    }

    #[test]
    fn composed_form_on_known_values() {
        let known = SequenceTable::from_ints("w", &[1, 5, 28, 130, 569, 2352, 9363, 36183, 136663]);
        let report = composed_form_report(&known, 8);
        assert_eq!(report.checked, None);
        assert!(composed_form_check(&known, 8));

        let w = eval_system(&walk_system(), 20).unwrap().get("r2").unwrap().clone();
        let report = composed_form_report(&w, 20);
        assert_eq!(report.checked, Some((9, 20)));
        assert!(report.passed());

        let mut bumped = w.values().to_vec();
        bumped[5] += 1;
        assert!(!composed_form_check(&SequenceTable::new("w", bumped), 20));
    }

    #[test]
    fn intermediate_identities_hold() {
        let report = verify_intermediate_identities(20).unwrap();
        for c in &report.checks {
            assert!(c.passed(), "{c:?}");
        }
        assert_eq!(report.get("r-from-c-difference").unwrap().checked, Some((0, 20)));
        assert_eq!(report.get("c-third-order").unwrap().checked, Some((3, 20)));
        assert_eq!(report.get("shift-relation-b").unwrap().checked, Some((6, 20)));
    }

    #[test]
    fn identities_catch_a_perturbed_table() {
        let tables = eval_system(&walk_system(), 21).unwrap().with_value("c2", 9, BigInt::from(-1));
        let id = Identity::parse("b", SHIFT_RELATION_B).unwrap();
        let c = check_identity(&id, &tables, 20).unwrap();
        assert_eq!(c.first_failure, Some(8));
    }
}

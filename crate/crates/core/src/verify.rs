//! Named suites of cross-checks between the enumeration, recurrence and
//! closed-form routes. Each suite returns a flat list of [`Check`]s.

use std::fmt::Display;
use std::path::PathBuf;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::closed_form::{
    asymptotic_ratio, binet_identity_check, fibonacci, v_fibonacci_form, w_domino_ceiling, w_domino_explicit,
    w_domino_fibonacci_form, w_domino_split_form,
};
use crate::elimination::{
    build_matrix_m, charpoly_factorization_check, kernel, primitive_integer_vector, printed_matrix_m,
    verify_la_lb_combination,
};
use crate::grid::{count_tilings, enumerate_tilings, Board};
use crate::oeis::{align_offset, compare_prefix, load_fixture, BFile, OeisError};
use crate::recurrence::sequences::{
    composed_form_report, domino_only_recurrence, domino_only_system, tiling_system, v_closed_recurrences,
    verify_intermediate_identities, w_ninth_order_recurrence, walk_system,
};
use crate::recurrence::{eval_recurrence, eval_system, fit_constant_recurrence, IdentityCheck, RecurrenceFit, SequenceTable};
use crate::walk::{brute_v, brute_w_by_line, Budget, OracleConfig};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub first_failure: Option<String>,
    pub expected: Option<String>,
    pub actual: Option<String>,
}

impl Check {
    pub fn flag(name: &str, passed: bool) -> Check {
        Check { name: name.to_string(), passed, first_failure: None, expected: None, actual: None }
    }

    pub fn failed(name: &str, reason: impl Display) -> Check {
        Check { actual: Some(reason.to_string()), ..Check::flag(name, false) }
    }

    pub fn values<T: Display>(name: &str, expected: T, actual: T, passed: bool) -> Check {
        Check { expected: Some(expected.to_string()), actual: Some(actual.to_string()), ..Check::flag(name, passed) }
    }

    /// Element-wise equality of two sequences starting at index 0.
    pub fn sequences(name: &str, expected: &[BigInt], actual: &[BigInt]) -> Check {
        let first = (0..expected.len().max(actual.len())).find(|&i| expected.get(i) != actual.get(i));
        let show = |v: Option<&BigInt>| v.map_or("missing".to_string(), BigInt::to_string);
        match first {
            None => Check::flag(name, true),
            Some(i) => Check {
                first_failure: Some(i.to_string()),
                expected: Some(show(expected.get(i))),
                actual: Some(show(actual.get(i))),
                ..Check::flag(name, false)
            },
        }
    }

    pub fn identity(c: &IdentityCheck) -> Check {
        Check {
            first_failure: c.first_failure.map(|n| n.to_string()),
            actual: Some(match c.checked {
                Some((lo, hi)) => format!("checked n = {lo}..={hi}"),
                None => "no admissible index".to_string(),
            }),
            ..Check::flag(&c.name, c.passed())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Theorems,
    Lemmas,
    Elimination,
    ClosedForms,
    Oeis,
    All,
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "theorems" => Suite::Theorems,
            "lemmas" => Suite::Lemmas,
            "elimination" => Suite::Elimination,
            "closed-forms" => Suite::ClosedForms,
            "oeis" => Suite::Oeis,
            "all" => Suite::All,
            _ => return Err(format!("unknown suite {s:?}")),
        })
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub budget: Budget,
    pub shards: usize,
    /// Largest `n` for the brute-force legs on `2 x n` boards.
    pub brute_w_upto: usize,
    /// When set, b-files are fetched through this cache instead of read
    /// from the embedded fixtures.
    pub fetch_cache: Option<PathBuf>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { budget: Budget::default(), shards: 1, brute_w_upto: 9, fetch_cache: None }
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Vec<Check> {
    match suite {
        Suite::Theorems => theorems(opts),
        Suite::Lemmas => lemmas(),
        Suite::Elimination => elimination(),
        Suite::ClosedForms => closed_forms(),
        Suite::Oeis => oeis(opts),
        Suite::All => [Suite::Theorems, Suite::Lemmas, Suite::Elimination, Suite::ClosedForms, Suite::Oeis]
            .iter()
            .flat_map(|&s| run_suite(s, opts))
            .collect(),
    }
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Values of `f(0..=upto)`, or the first error.
fn collect<E: Display>(upto: usize, f: impl Fn(usize) -> Result<BigInt, E>) -> Result<Vec<BigInt>, String> {
    (0..=upto).map(|n| f(n).map_err(|e| e.to_string())).collect()
}

fn seq_check(name: &str, expected: Result<Vec<BigInt>, String>, actual: Result<Vec<BigInt>, String>) -> Check {
    match (expected, actual) {
        (Ok(e), Ok(a)) => Check::sequences(name, &e, &a),
        (Err(e), _) | (_, Err(e)) => Check::failed(name, e),
    }
}

fn member(spec: &crate::recurrence::CoupledSystemSpec, name: &str, upto: usize) -> Result<Vec<BigInt>, String> {
    let t = eval_system(spec, upto).map_err(|e| e.to_string())?;
    Ok(t.get(name).ok_or_else(|| format!("no member {name}"))?.values().to_vec())
}

fn recurrence(spec: &crate::recurrence::RecurrenceSpec, upto: usize) -> Result<Vec<BigInt>, String> {
    eval_recurrence(spec, upto).map(|t| t.values().to_vec()).map_err(|e| e.to_string())
}

pub const W_INITIAL: [i64; 9] = [1, 5, 28, 130, 569, 2352, 9363, 36183, 136663];

fn theorems(opts: &VerifyOptions) -> Vec<Check> {
    let mut out = Vec::new();
    let v = v_closed_recurrences();
    out.push(seq_check("v-polynomial-vs-fibonacci-form-200", recurrence(&v.polynomial, 200), collect(200, v_fibonacci_form)));
    out.push(seq_check("v-fourth-order-vs-fibonacci-form-200", recurrence(&v.fourth_order, 200), collect(200, v_fibonacci_form)));
    out.push(seq_check("v-inhomogeneous-vs-fibonacci-form-200", member(&v.inhomogeneous, "v", 200), collect(200, v_fibonacci_form)));
    out.push(seq_check(
        "v-brute-vs-polynomial-20",
        recurrence(&v.polynomial, 20),
        collect(20, |n| brute_v(n, &opts.budget)),
    ));

    out.push(seq_check("w-system-initial-values", Ok(ints(&W_INITIAL)), member(&walk_system(), "r2", 8)));
    out.push(seq_check("w-ninth-order-vs-system-60", member(&walk_system(), "r2", 60), recurrence(&w_ninth_order_recurrence(), 60)));
    let cfg = OracleConfig { budget: opts.budget.clone(), shards: opts.shards };
    out.push(seq_check(
        &format!("w-brute-vs-system-{}", opts.brute_w_upto),
        member(&walk_system(), "r2", opts.brute_w_upto),
        collect(opts.brute_w_upto, |n| brute_w_by_line(n, true, &cfg).map(|w| w.w2.unwrap_or_default())),
    ));
    match member(&walk_system(), "r2", 50) {
        Ok(w) => {
            let r = composed_form_report(&SequenceTable::new("w", w), 50);
            out.push(Check::identity(&r));
        }
        Err(e) => out.push(Check::failed("composed-form", e)),
    }

    out.push(seq_check(
        "w-domino-system-vs-sixth-order-50",
        member(&domino_only_system(), "r2", 50),
        recurrence(&domino_only_recurrence(), 50),
    ));
    out.push(seq_check(
        "w-domino-brute-vs-sixth-order-12",
        recurrence(&domino_only_recurrence(), 12),
        collect(12, |n| brute_w_by_line(n, false, &cfg).map(|w| w.w2.unwrap_or_default())),
    ));
    out
}

/// Histogram of domino counts over the tilings of `1 x n`, compared with
/// `C(n-k, k)`.
pub fn benjamin_quinn_check(n_max: usize) -> Check {
    for n in 0..=n_max {
        let mut hist = vec![BigInt::zero(); n / 2 + 1];
        for t in enumerate_tilings(Board::one_by(n)) {
            hist[t.domino_count()] += 1;
        }
        let want: Vec<BigInt> = (0..=n / 2).map(|k| num_integer::binomial(BigInt::from(n - k), BigInt::from(k))).collect();
        if hist != want {
            return Check {
                first_failure: Some(n.to_string()),
                expected: Some(format!("{want:?}")),
                actual: Some(format!("{hist:?}")),
                ..Check::flag("benjamin-quinn", false)
            };
        }
    }
    Check { actual: Some(format!("n = 0..={n_max}")), ..Check::flag("benjamin-quinn", true) }
}

/// Fits `v(n) = A v(n-1) + B v(n-2) + ...` on the given range.
pub fn v_coefficient_fit(order: usize, range: std::ops::RangeInclusive<usize>) -> Result<RecurrenceFit, String> {
    let v = eval_recurrence(&v_closed_recurrences().polynomial, *range.end()).map_err(|e| e.to_string())?;
    fit_constant_recurrence(v.values(), order, range).map_err(|e| e.to_string())
}

fn lemmas() -> Vec<Check> {
    let mut out = vec![benjamin_quinn_check(16)];
    match verify_intermediate_identities(30) {
        Ok(rep) => out.extend(rep.checks.iter().map(Check::identity)),
        Err(e) => out.push(Check::failed("intermediate-identities", e)),
    }
    out.push(seq_check(
        "tiling-system-vs-counts-30",
        member(&tiling_system(), "r", 30),
        Ok((0..=30).map(|n| count_tilings(Board::two_by(n))).collect()),
    ));

    let want: Vec<BigRational> = [2, 1, -2, -1].iter().map(|&x| BigRational::from_integer(x.into())).collect();
    out.push(match v_coefficient_fit(4, 4..=8) {
        Ok(RecurrenceFit::Unique(x)) => {
            let show = |v: &[BigRational]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
            Check::values("v-fourth-order-fit", show(&want), show(&x), x == want)
        }
        other => Check::failed("v-fourth-order-fit", format!("{other:?}")),
    });
    out.push(match v_coefficient_fit(3, 3..=6) {
        Ok(RecurrenceFit::Inconsistent) => Check::flag("v-third-order-fit-inconsistent", true),
        other => Check::failed("v-third-order-fit-inconsistent", format!("{other:?}")),
    });
    out
}

pub const KERNEL_VECTOR: [i64; 11] = [1, -5, 7, -3, -4, 2, 1, -3, 5, -2, -1];

fn elimination() -> Vec<Check> {
    let m = build_matrix_m();
    let mut out = vec![Check::flag("matrix-matches-printed", m == printed_matrix_m())];
    let k = kernel(&m);
    out.push(Check::values("kernel-dimension", 1, k.len(), k.len() == 1));
    if let Some(v) = k.first() {
        let prim = primitive_integer_vector(v);
        out.push(Check::values(
            "kernel-vector",
            format!("{KERNEL_VECTOR:?}"),
            format!("{:?}", prim.iter().map(ToString::to_string).collect::<Vec<_>>()),
            prim == ints(&KERNEL_VECTOR),
        ));
        out.push(Check::flag("kernel-annihilates", m.mul_vec(v).iter().all(Zero::is_zero)));
    }
    match verify_la_lb_combination(30) {
        Ok(r) => {
            out.extend(r.checks().iter().map(|c| Check::identity(c)));
            out.push(Check::flag("ten-term-coefficients", r.coefficients_match));
        }
        Err(e) => out.push(Check::failed("shift-relations", e)),
    }
    let cp = charpoly_factorization_check();
    out.push(Check::values("charpoly-w", cp.w_product.clone(), cp.w_recurrence.clone(), cp.w_matches));
    out.push(Check::values("charpoly-domino", cp.domino_product.clone(), cp.domino_recurrence.clone(), cp.domino_matches));
    out.push(Check {
        actual: cp.tiling_quotient.clone(),
        ..Check::flag("charpoly-tiling-divides-w", cp.tiling_quotient.is_some())
    });
    out
}

/// `|asymptotic_ratio(n) - 1|` for each `n` in the range.
pub fn ratio_errors(range: std::ops::RangeInclusive<usize>) -> Result<Vec<BigRational>, String> {
    range.map(|n| asymptotic_ratio(n).map(|r| (r - BigRational::one()).abs()).map_err(|e| e.to_string())).collect()
}

fn closed_forms() -> Vec<Check> {
    let mut out = Vec::new();
    let b = binet_identity_check(100);
    out.push(Check { first_failure: b.first_failure.map(|n| n.to_string()), ..Check::flag("binet-100", b.passed()) });
    out.push(seq_check(
        "fibonacci-doubling-vs-recurrence-200",
        recurrence(&crate::recurrence::sequences::fibonacci(), 200),
        Ok((0..=200).map(|n| fibonacci(n as u64)).collect()),
    ));
    out.push(match collect(500, v_fibonacci_form) {
        Ok(_) => Check::flag("v-fibonacci-form-divisible-500", true),
        Err(e) => Check::failed("v-fibonacci-form-divisible-500", e),
    });
    let general = collect(50, w_domino_fibonacci_form);
    out.push(seq_check("w-domino-split-forms-50", general.clone(), collect(50, w_domino_split_form)));
    out.push(seq_check("w-domino-explicit-50", general.clone(), collect(50, w_domino_explicit)));
    out.push(seq_check("w-domino-ceiling-50", general.clone(), collect(50, |n| Ok::<_, String>(w_domino_ceiling(n)))));
    out.push(seq_check("w-domino-fibonacci-vs-sixth-order-50", recurrence(&domino_only_recurrence(), 50), general));

    let tol = BigRational::new(1.into(), BigInt::from(10).pow(6));
    out.push(match ratio_errors(20..=20) {
        Ok(e) => Check::values("asymptotic-ratio-20", format!("< {tol}"), approx_display(&e[0]), e[0] < tol),
        Err(e) => Check::failed("asymptotic-ratio-20", e),
    });
    out.push(match ratio_errors(10..=30) {
        Ok(e) => {
            let bad = e.windows(2).position(|w| w[1] >= w[0]);
            Check { first_failure: bad.map(|i| (i + 11).to_string()), ..Check::flag("asymptotic-ratio-decreasing", bad.is_none()) }
        }
        Err(e) => Check::failed("asymptotic-ratio-decreasing", e),
    });
    out
}

fn approx_display(x: &BigRational) -> String {
    // Scientific notation with three significant digits.
    if x.is_zero() {
        return "0".to_string();
    }
    let mut exp = 0i32;
    let mut m = x.abs();
    let ten = BigRational::from_integer(10.into());
    while m >= ten {
        m /= &ten;
        exp += 1;
    }
    while m < BigRational::one() {
        m *= &ten;
        exp -= 1;
    }
    let scaled = (m * BigRational::from_integer(100.into())).round().to_integer();
    let digits = scaled.to_string();
    format!("{}.{}e{exp}", &digits[..1], &digits[1..])
}

fn reference(id: &str, opts: &VerifyOptions) -> Result<BFile, OeisError> {
    match &opts.fetch_cache {
        #[cfg(feature = "net")]
        Some(dir) => crate::oeis::fetch_bfile(id, dir),
        #[cfg(not(feature = "net"))]
        Some(dir) => crate::oeis::fetch_bfile_with(id, dir, None).map(|r| r.0),
        None => load_fixture(id),
    }
}

/// Minimum run of matching terms demanded from each fixture.
pub const OEIS_MIN_MATCH: usize = 20;

fn oeis(opts: &VerifyOptions) -> Vec<Check> {
    let upto = 40;
    let tables = [
        ("v", "A001629", recurrence(&v_closed_recurrences().polynomial, upto)),
        ("r", "A030186", member(&tiling_system(), "r", upto)),
        ("w-domino", "A054454", recurrence(&domino_only_recurrence(), upto)),
        ("fib", "A000045", recurrence(&crate::recurrence::sequences::fibonacci(), upto)),
    ];
    tables
        .into_iter()
        .map(|(name, id, values)| {
            let label = format!("oeis-{id}-{name}");
            let values = match values {
                Ok(v) => v,
                Err(e) => return Check::failed(&label, e),
            };
            let bfile = match reference(id, opts) {
                Ok(b) => b,
                Err(e) => return Check::failed(&label, e),
            };
            let table = SequenceTable::new(name, values);
            match align_offset(&table, &bfile, -5..=5) {
                Some(r) => Check::values(
                    &label,
                    format!(">= {OEIS_MIN_MATCH} terms"),
                    format!("{} terms at shift {}", r.matched, r.shift),
                    r.matched >= OEIS_MIN_MATCH,
                ),
                None => {
                    let detail = compare_prefix(&table, &bfile, 0).map_or_else(|e| e.to_string(), |r| format!("{r:?}"));
                    Check::failed(&label, format!("no aligned match; {detail}"))
                }
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_suites_pass() {
        for suite in [Suite::Lemmas, Suite::Elimination, Suite::ClosedForms, Suite::Oeis] {
            for c in run_suite(suite, &VerifyOptions::default()) {
                assert!(c.passed, "{c:?}");
            }
        }
    }

    #[test]
    fn sequence_check_reports_position() {
        let c = Check::sequences("x", &ints(&[1, 2, 3]), &ints(&[1, 2, 4]));
        assert_eq!((c.first_failure.as_deref(), c.expected.as_deref(), c.actual.as_deref()), (Some("2"), Some("3"), Some("4")));
        assert!(!Check::sequences("x", &ints(&[1]), &ints(&[1, 2])).passed);
    }

    #[test]
    fn suite_names() {
        assert_eq!("closed-forms".parse::<Suite>(), Ok(Suite::ClosedForms));
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn scientific_display() {
        assert_eq!(approx_display(&BigRational::new(1234.into(), 1_000_000.into())), "1.23e-3");
    }
}

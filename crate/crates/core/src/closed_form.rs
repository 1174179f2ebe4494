//! Fibonacci closed forms evaluated exactly in the field Q(√5).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosedFormError {
    #[error("closed form at n = {n}: numerator is not divisible by {divisor}")]
    NonIntegralStep { n: usize, divisor: u32 },
    #[error("closed form at n = {n}: radical part {residue} does not cancel")]
    RadicalResidue { n: usize, residue: BigRational },
    #[error("closed form at n = {n}: value {value} is not an integer")]
    NonIntegerValue { n: usize, value: BigRational },
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// `a + b√5` with rational `a`, `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QSqrt5 {
    pub a: BigRational,
    pub b: BigRational,
}

impl QSqrt5 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QSqrt5 { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        QSqrt5::new(rat(a), rat(b))
    }

    pub fn rational(a: BigRational) -> Self {
        QSqrt5::new(a, BigRational::zero())
    }

    pub fn integer(a: impl Into<BigInt>) -> Self {
        QSqrt5::rational(BigRational::from_integer(a.into()))
    }

    pub fn zero() -> Self {
        QSqrt5::default()
    }

    pub fn one() -> Self {
        QSqrt5::from_ints(1, 0)
    }

    pub fn sqrt5() -> Self {
        QSqrt5::from_ints(0, 1)
    }

    /// The golden ratio `(1 + √5) / 2`.
    pub fn alpha() -> Self {
        let h = BigRational::new(1.into(), 2.into());
        QSqrt5::new(h.clone(), h)
    }

    /// `(1 - √5) / 2`.
    pub fn beta() -> Self {
        QSqrt5::alpha().conjugate()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        QSqrt5::new(self.a.clone(), -&self.b)
    }

    /// `a² - 5b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - rat(5) * &self.b * &self.b
    }

    /// `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(QSqrt5::new(&self.a / &n, -&self.b / &n))
    }

    pub fn checked_div(&self, o: &QSqrt5) -> Option<Self> {
        o.inverse().map(|inv| self * &inv)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = QSqrt5::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact sign of `a + b√5`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (x, Ordering::Equal) => x,
            (Ordering::Equal, y) => y,
            (x, y) if x == y => x,
            // Opposite signs: the term with the larger square wins.
            (x, _) => match (&self.a * &self.a).cmp(&(rat(5) * &self.b * &self.b)) {
                Ordering::Greater => x,
                Ordering::Less => x.reverse(),
                Ordering::Equal => Ordering::Equal,
            },
        }
    }

    pub fn floor(&self) -> BigInt {
        // b√5 = ±sqrt(5b²) and floor(sqrt(t)) = isqrt(floor(t)).
        let s = (rat(5) * &self.b * &self.b).floor().to_integer().sqrt();
        let s = if self.b.is_negative() { -s } else { s };
        let mut m = self.a.floor().to_integer() + s;
        while self.cmp_integer(&m) == Ordering::Less {
            m -= 1;
        }
        while self.cmp_integer(&(&m + 1)) != Ordering::Less {
            m += 1;
        }
        m
    }

    pub fn ceil(&self) -> BigInt {
        let f = self.floor();
        if self.cmp_integer(&f) == Ordering::Equal {
            f
        } else {
            f + 1
        }
    }

    pub fn cmp_integer(&self, m: &BigInt) -> Ordering {
        (self - &QSqrt5::integer(m.clone())).signum()
    }

    /// Rational value within `10^-digits` of the true value.
    pub fn approximate(&self, digits: u32) -> BigRational {
        if self.b.is_zero() {
            return self.a.clone();
        }
        // Extra digits absorb the size of b.
        let extra = self.b.abs().ceil().to_integer().to_string().len() as u32 + 1;
        let scale = BigInt::from(10).pow(digits + extra);
        let root = (BigInt::from(5) * &scale * &scale).sqrt();
        &self.a + &self.b * BigRational::new(root, scale)
    }
}

impl Ord for QSqrt5 {
    fn cmp(&self, o: &Self) -> Ordering {
        (self - o).signum()
    }
}

impl PartialOrd for QSqrt5 {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Add for &QSqrt5 {
    type Output = QSqrt5;
    fn add(self, o: &QSqrt5) -> QSqrt5 {
        QSqrt5::new(&self.a + &o.a, &self.b + &o.b)
    }
}

impl Sub for &QSqrt5 {
    type Output = QSqrt5;
    fn sub(self, o: &QSqrt5) -> QSqrt5 {
        QSqrt5::new(&self.a - &o.a, &self.b - &o.b)
    }
}

impl Mul for &QSqrt5 {
    type Output = QSqrt5;
    fn mul(self, o: &QSqrt5) -> QSqrt5 {
        QSqrt5::new(&self.a * &o.a + rat(5) * &self.b * &o.b, &self.a * &o.b + &self.b * &o.a)
    }
}

impl Div for &QSqrt5 {
    type Output = QSqrt5;
    /// # Panics
    /// On division by zero.
    fn div(self, o: &QSqrt5) -> QSqrt5 {
        self.checked_div(o).expect("division by zero in Q(sqrt 5)")
    }
}

impl Neg for &QSqrt5 {
    type Output = QSqrt5;
    fn neg(self) -> QSqrt5 {
        QSqrt5::new(-&self.a, -&self.b)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QSqrt5 {
            type Output = QSqrt5;
            fn $m(self, o: QSqrt5) -> QSqrt5 {
                (&self).$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for QSqrt5 {
    type Output = QSqrt5;
    fn neg(self) -> QSqrt5 {
        -&self
    }
}

impl fmt::Display for QSqrt5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sqrt5", self.b),
            _ if self.b.is_negative() => write!(f, "{} - {}*sqrt5", self.a, -&self.b),
            _ => write!(f, "{} + {}*sqrt5", self.a, self.b),
        }
    }
}

/// `(F_n, F_{n+1})` by fast doubling.
pub fn fibonacci_pair(n: u64) -> (BigInt, BigInt) {
    if n == 0 {
        return (BigInt::zero(), BigInt::one());
    }
    let (f, g) = fibonacci_pair(n / 2);
    // F_2k = F_k (2F_{k+1} - F_k), F_{2k+1} = F_k² + F_{k+1}²
    let even = &f * (BigInt::from(2) * &g - &f);
    let odd = &f * &f + &g * &g;
    if n.is_multiple_of(2) {
        (even, odd)
    } else {
        let next = &even + &odd;
        (odd, next)
    }
}

pub fn fibonacci(n: u64) -> BigInt {
    fibonacci_pair(n).0
}

fn exact_div(num: BigInt, d: u32, n: usize) -> Result<BigInt, ClosedFormError> {
    let (q, r) = num.div_rem(&BigInt::from(d));
    if r.is_zero() {
        Ok(q)
    } else {
        Err(ClosedFormError::NonIntegralStep { n, divisor: d })
    }
}

/// `5 v(n) = 2(n+2) F(n+1) + (n+1) F(n+2)`.
pub fn v_fibonacci_form(n: usize) -> Result<BigInt, ClosedFormError> {
    let (f1, f2) = fibonacci_pair(n as u64 + 1);
    exact_div(BigInt::from(2 * (n + 2)) * f1 + BigInt::from(n + 1) * f2, 5, n)
}

fn parity_term(n: usize) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        0
    }
}

/// `w(n) = (1 + (-1)^n)/2 + 3(1+n)F(n)/5 + 4n F(n+1)/5`, for every `n`.
pub fn w_domino_fibonacci_form(n: usize) -> Result<BigInt, ClosedFormError> {
    let (f0, f1) = fibonacci_pair(n as u64);
    let num = BigInt::from(5 * parity_term(n)) + BigInt::from(3 * (n + 1)) * f0 + BigInt::from(4 * n) * f1;
    exact_div(num, 5, n)
}

/// `5 w(2m) = 5 + (3+6m) F(2m) + 8m F(2m+1)`.
pub fn w_domino_even_form(m: usize) -> Result<BigInt, ClosedFormError> {
    let (f0, f1) = fibonacci_pair(2 * m as u64);
    exact_div(BigInt::from(5) + BigInt::from(3 + 6 * m) * f0 + BigInt::from(8 * m) * f1, 5, 2 * m)
}

/// `5 w(2m+1) = (6+6m) F(2m+1) + (4+8m) F(2m+2)`.
pub fn w_domino_odd_form(m: usize) -> Result<BigInt, ClosedFormError> {
    let (f1, f2) = fibonacci_pair(2 * m as u64 + 1);
    exact_div(BigInt::from(6 + 6 * m) * f1 + BigInt::from(4 + 8 * m) * f2, 5, 2 * m + 1)
}

/// The even or odd split form, whichever covers `n`.
pub fn w_domino_split_form(n: usize) -> Result<BigInt, ClosedFormError> {
    if n.is_multiple_of(2) {
        w_domino_even_form(n / 2)
    } else {
        w_domino_odd_form(n / 2)
    }
}

/// Coefficients of `A + B(-1)^n + (C + Dn)α^n + (E + Fn)β^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitFormCoeffs {
    pub a: QSqrt5,
    pub b: QSqrt5,
    pub c: QSqrt5,
    pub d: QSqrt5,
    pub e: QSqrt5,
    pub f: QSqrt5,
}

impl Default for ExplicitFormCoeffs {
    fn default() -> Self {
        let q = |a: i64, ad: i64, b: i64, bd: i64| {
            QSqrt5::new(BigRational::new(a.into(), ad.into()), BigRational::new(b.into(), bd.into()))
        };
        ExplicitFormCoeffs {
            a: q(1, 2, 0, 1),
            b: q(1, 2, 0, 1),
            c: q(0, 1, 3, 25),
            d: q(2, 5, 1, 5),
            e: q(0, 1, -3, 25),
            f: q(2, 5, -1, 5),
        }
    }
}

impl ExplicitFormCoeffs {
    /// `(C + Dn) α^n`, the part that dominates as `n` grows.
    pub fn dominant(&self, n: usize) -> QSqrt5 {
        let lin = &self.c + &(&self.d * &QSqrt5::integer(n));
        &lin * &QSqrt5::alpha().pow(n as u64)
    }

    pub fn eval(&self, n: usize) -> QSqrt5 {
        let sign = QSqrt5::integer(if n.is_multiple_of(2) { 1 } else { -1 });
        let lin = &self.e + &(&self.f * &QSqrt5::integer(n));
        let tail = &lin * &QSqrt5::beta().pow(n as u64);
        &(&(&self.a + &(&self.b * &sign)) + &self.dominant(n)) + &tail
    }
}

fn to_integer(n: usize, x: &QSqrt5) -> Result<BigInt, ClosedFormError> {
    if !x.b.is_zero() {
        return Err(ClosedFormError::RadicalResidue { n, residue: x.b.clone() });
    }
    if !x.a.is_integer() {
        return Err(ClosedFormError::NonIntegerValue { n, value: x.a.clone() });
    }
    Ok(x.a.to_integer())
}

/// The explicit form evaluated exactly; the `√5` parts must cancel.
pub fn w_domino_explicit(n: usize) -> Result<BigInt, ClosedFormError> {
    to_integer(n, &ExplicitFormCoeffs::default().eval(n))
}

/// `⌈(3√5/25 + (2+√5)n/5) α^n⌉`, by exact comparison with integers.
pub fn w_domino_ceiling(n: usize) -> BigInt {
    ExplicitFormCoeffs::default().dominant(n).ceil()
}

/// `((α^n - β^n)/√5, α^n + β^n)` as integers.
pub fn binet_terms(n: usize) -> Result<(BigInt, BigInt), ClosedFormError> {
    let an = QSqrt5::alpha().pow(n as u64);
    let bn = QSqrt5::beta().pow(n as u64);
    let f = &(&an - &bn) / &QSqrt5::sqrt5();
    let l = &an + &bn;
    Ok((to_integer(n, &f)?, to_integer(n, &l)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BinetReport {
    pub upto: usize,
    pub first_failure: Option<usize>,
}

impl BinetReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Checks `(α^n - β^n)/√5 = F(n)` and `α^n + β^n = 2F(n+1) - F(n)`.
pub fn binet_identity_check(upto: usize) -> BinetReport {
    let first_failure = (0..=upto).find(|&n| {
        let (f0, f1) = fibonacci_pair(n as u64);
        match binet_terms(n) {
            Ok((f, l)) => f != f0 || l != BigInt::from(2) * f1 - f0,
            Err(_) => true,
        }
    });
    BinetReport { upto, first_failure }
}

/// Decimal digits of precision in [`asymptotic_ratio`].
pub const RATIO_DIGITS: u32 = 40;

/// `w(n)` divided by `(1 + (-1)^n)/2 + (C + Dn)α^n`, as a rational within
/// `10^-40` of the exact quotient. The quotient itself lies in Q(√5).
pub fn asymptotic_ratio(n: usize) -> Result<BigRational, ClosedFormError> {
    let w = w_domino_fibonacci_form(n)?;
    let main = &QSqrt5::integer(parity_term(n)) + &ExplicitFormCoeffs::default().dominant(n);
    let ratio = &QSqrt5::integer(w) / &main;
    Ok(ratio.approximate(RATIO_DIGITS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn fibonacci_values() {
        let naive: Vec<BigInt> = (0..60)
            .scan((BigInt::zero(), BigInt::one()), |s, _| {
                let out = s.0.clone();
                *s = (s.1.clone(), &s.0 + &s.1);
                Some(out)
            })
            .collect();
        for (n, f) in naive.iter().enumerate() {
            assert_eq!(&fibonacci(n as u64), f);
        }
    }

    #[test]
    fn golden_ratio_relations() {
        let (a, b) = (QSqrt5::alpha(), QSqrt5::beta());
        assert_eq!(&a * &b, QSqrt5::integer(-1));
        assert_eq!(&a + &b, QSqrt5::one());
    }

    #[test]
    fn v_form_examples() {
        assert_eq!(v_fibonacci_form(3).unwrap(), BigInt::from(10));
        assert_eq!(v_fibonacci_form(0).unwrap(), BigInt::from(1));
        for n in 0..=500 {
            assert!(v_fibonacci_form(n).is_ok(), "n = {n}");
        }
    }

    #[test]
    fn domino_forms_examples() {
        assert_eq!(w_domino_odd_form(0).unwrap(), BigInt::from(2));
        assert_eq!(w_domino_even_form(1).unwrap(), BigInt::from(6));
        assert_eq!(w_domino_fibonacci_form(0).unwrap(), BigInt::from(1));
        assert_eq!(w_domino_explicit(0).unwrap(), BigInt::from(1));
        assert_eq!(w_domino_explicit(5).unwrap(), BigInt::from(50));
        assert_eq!(w_domino_ceiling(0), BigInt::from(1));
        assert_eq!(w_domino_ceiling(4), BigInt::from(26));
        for n in 0..=50 {
            let w = w_domino_fibonacci_form(n).unwrap();
            assert_eq!(w_domino_split_form(n).unwrap(), w, "n = {n}");
            assert_eq!(w_domino_explicit(n).unwrap(), w, "n = {n}");
            assert_eq!(w_domino_ceiling(n), w, "n = {n}");
        }
    }

    #[test]
    fn binet() {
        assert_eq!(binet_terms(0).unwrap(), (BigInt::from(0), BigInt::from(2)));
        assert_eq!(binet_terms(10).unwrap(), (BigInt::from(55), BigInt::from(123)));
        assert!(binet_identity_check(100).passed());
    }

    #[test]
    fn ratio_thresholds() {
        let one = BigRational::one();
        let tol = |k: i32| BigRational::new(1.into(), BigInt::from(10).pow(k as u32));
        assert!((asymptotic_ratio(5).unwrap() - &one).abs() < tol(2));
        assert!((asymptotic_ratio(20).unwrap() - &one).abs() < tol(8));
        assert!(asymptotic_ratio(1).is_ok());
    }

    #[test]
    fn floor_and_ceil_edges() {
        assert_eq!(QSqrt5::sqrt5().floor(), BigInt::from(2));
        assert_eq!((-QSqrt5::sqrt5()).floor(), BigInt::from(-3));
        assert_eq!(QSqrt5::integer(7).ceil(), BigInt::from(7));
        assert_eq!(QSqrt5::from_ints(-2, 1).ceil(), BigInt::from(1));
        assert_eq!(QSqrt5::from_ints(3, -1).floor(), BigInt::from(0));
    }

    fn small_rat() -> impl Strategy<Value = BigRational> {
        (-50i64..=50, 1i64..=12).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
    }

    fn element() -> impl Strategy<Value = QSqrt5> {
        (small_rat(), small_rat()).prop_map(|(a, b)| QSqrt5::new(a, b))
    }

    proptest! {
        #[test]
        fn field_laws(x in element(), y in element(), z in element()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inverse().unwrap(), QSqrt5::one());
            }
        }

        #[test]
        fn conjugation_and_norm(x in element(), y in element()) {
            prop_assert_eq!((&x * &y).conjugate(), &x.conjugate() * &y.conjugate());
            prop_assert_eq!((&x + &y).conjugate(), &x.conjugate() + &y.conjugate());
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        }

        #[test]
        fn floor_brackets_value(x in element()) {
            let f = x.floor();
            prop_assert_ne!(x.cmp_integer(&f), Ordering::Less);
            prop_assert_eq!(x.cmp_integer(&(&f + 1)), Ordering::Less);
            let c = x.ceil();
            prop_assert!(&c - &f <= BigInt::one());
            prop_assert_ne!(x.cmp_integer(&c), Ordering::Greater);
        }

        #[test]
        fn sign_matches_approximation(x in element()) {
            let approx = x.approximate(30);
            let eps = BigRational::new(1.into(), BigInt::from(10).pow(25));
            match x.signum() {
                Ordering::Greater => prop_assert!(approx > -eps),
                Ordering::Less => prop_assert!(approx < eps),
                Ordering::Equal => prop_assert!(approx.is_zero()),
            }
        }
    }
}

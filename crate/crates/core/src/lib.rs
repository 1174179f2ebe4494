//! Exact counts of shortest corner-to-corner walks across square/domino
//! tilings of `1 x n` and `2 x n` boards, by enumeration, by recurrence
//! systems and by Fibonacci closed forms.

pub mod closed_form;
pub mod elimination;
pub mod grid;
pub mod oeis;
pub mod recurrence;
pub mod svg;
pub mod verify;
pub mod walk;

pub use num_bigint::BigInt;

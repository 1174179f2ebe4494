//! Report and sequence-route plumbing behind the `tilewalk` binary.

pub mod report;
pub mod seq;

//! Parsing, JSON reports and the verification sweep behind the `biquad` binary.

pub mod analysis;
pub mod cli;
pub mod parse;
pub mod report;
pub mod verify;

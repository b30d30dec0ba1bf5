//! Text formats, reports and the command line for `subsums-core`.

pub mod cli;
pub mod parse;
pub mod report;

pub use parse::{parse_rational, parse_series, Series};

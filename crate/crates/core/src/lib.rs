//! Certified classification and finite-depth approximation of the sets of
//! subsums (achievement sets) of positive convergent series.
//!
//! The crate is `no_std` and needs only `alloc`. Text formats, JSON and
//! CSV output and the command line live in the `subsums` crate.

#![no_std]

extern crate alloc;

pub mod analysis;
pub mod classify;
pub mod cover;
pub mod enclosure;
mod error;
pub mod param;
pub mod series;
pub mod sumset;

pub use classify::{
    classify, classify_ferdinands_family, classify_multigeometric, classify_sine, kakeya_compare,
    kakeya_scan, Certificate, Classification, Conclusion, KakeyaOutcome, Label, ScanPattern,
    ScanSummary, ThresholdReport,
};
pub use cover::{enumerate_sums, gaps_of, outer_cover, CoverResult, Interval, IntervalUnion, PartialSums};
pub use enclosure::{jordan_bounds, Enclosure, Truth};
pub use error::Error;
pub use param::{Param, Rational};
pub use series::{SeriesKind, SeriesSpec};
pub use sumset::{sumset, sumset_meet_in_middle, SumsetInfo};
pub use analysis::{box_dimension_estimate, measure_estimate, sandwich_check, ChainTag, DimensionEstimate, SandwichReport};

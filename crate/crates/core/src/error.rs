use core::fmt;

use alloc::string::String;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A parameter lies outside its mathematical domain.
    Domain(&'static str),
    InvalidEnclosure { lo: f64, hi: f64 },
    DivisionByZero,
    /// A term index whose block value is not representable with full
    /// relative precision.
    IndexOverflow { exponent: u64 },
    /// Weight vector is not sorted nonincreasing.
    UnsortedWeights,
    /// Too many weights for exhaustive subset enumeration.
    SumsetGuard { m: usize, max: usize },
    /// Naive enumeration depth over its limit.
    DepthGuard { depth: usize, max: usize },
    /// Enumeration would produce more points than allowed.
    MemoryGuard { points: u128, max: usize },
    /// A theorem hypothesis does not hold.
    Hypothesis(String),
    /// Least-squares fit has no spread in the abscissa.
    DegenerateFit,
    /// Accumulated rounding exceeds the cover slack.
    Precision,
}

impl Error {
    /// True for resource limits rather than invalid input.
    pub fn is_guard(&self) -> bool {
        matches!(
            self,
            Error::SumsetGuard { .. }
                | Error::DepthGuard { .. }
                | Error::MemoryGuard { .. }
                | Error::IndexOverflow { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::InvalidEnclosure { lo, hi } => write!(f, "invalid enclosure [{lo}, {hi}]"),
            Error::DivisionByZero => write!(f, "division by a bracket containing zero"),
            Error::IndexOverflow { exponent } => write!(
                f,
                "term index too large: block power {exponent} leaves the representable range"
            ),
            Error::UnsortedWeights => write!(f, "weights must be sorted nonincreasing"),
            Error::SumsetGuard { m, max } => write!(
                f,
                "{m} weights exceed the exhaustive enumeration limit of {max}; \
                 use the meet-in-the-middle variant (--mitm)"
            ),
            Error::DepthGuard { depth, max } => {
                write!(f, "naive enumeration depth {depth} exceeds limit {max}")
            }
            Error::MemoryGuard { points, max } => write!(
                f,
                "enumeration would hold {points} points (limit {max}); \
                 reduce the depth or use a coarser dedup tolerance"
            ),
            Error::Hypothesis(msg) => write!(f, "hypothesis violated: {msg}"),
            Error::DegenerateFit => write!(f, "degenerate fit: all scales are equal"),
            Error::Precision => write!(f, "accumulated rounding exceeds the cover slack"),
        }
    }
}

impl core::error::Error for Error {}

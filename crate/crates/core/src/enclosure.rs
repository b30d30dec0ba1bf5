//! Certified brackets of real quantities.
//!
//! Sums, products and quotients are rounded outward to the neighbouring
//! float using the exact rounding error (two-sum and fused multiply-add
//! residuals), so exact results stay exact. Library functions (`sin`,
//! `pow`, `log`) are not correctly rounded; their results are widened by
//! [`SLACK_ULPS`] units in the last place instead. Neither touches the FPU
//! rounding mode.

use core::f64::consts::{FRAC_PI_2, PI};
use core::fmt;

use crate::error::Error;

/// Outward widening applied to library function results.
pub const SLACK_ULPS: u32 = 4;

/// Three-valued outcome of a comparison between brackets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Truth {
    True,
    False,
    Indeterminate,
}

impl Truth {
    pub fn is_true(self) -> bool {
        self == Truth::True
    }

    pub fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::False, _) | (_, Truth::False) => Truth::False,
            (Truth::True, Truth::True) => Truth::True,
            _ => Truth::Indeterminate,
        }
    }

    pub fn from_bool(b: bool) -> Truth {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }
}

pub(crate) fn down(mut v: f64) -> f64 {
    for _ in 0..SLACK_ULPS {
        v = v.next_down();
    }
    v
}

pub(crate) fn up(mut v: f64) -> f64 {
    for _ in 0..SLACK_ULPS {
        v = v.next_up();
    }
    v
}

/// A closed bracket `[lo, hi]` known to contain some real quantity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Enclosure {
    lo: f64,
    hi: f64,
}

impl Enclosure {
    pub fn new(lo: f64, hi: f64) -> Result<Self, Error> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::InvalidEnclosure { lo, hi });
        }
        Ok(Enclosure { lo, hi })
    }

    /// An exact value.
    pub const fn point(v: f64) -> Self {
        Enclosure { lo: v, hi: v }
    }

    /// `v` widened by the standard slack on both sides.
    pub fn around(v: f64) -> Self {
        Enclosure {
            lo: down(v),
            hi: up(v),
        }
    }

    pub(crate) const fn raw(lo: f64, hi: f64) -> Self {
        Enclosure { lo, hi }
    }

    /// An integer, exact when it fits in the mantissa.
    pub fn from_u64(k: u64) -> Self {
        let v = k as f64;
        if k < (1u64 << 53) {
            Enclosure::point(v)
        } else {
            Enclosure::around(v)
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn mid(&self) -> f64 {
        self.lo + (self.hi - self.lo) / 2.0
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// `(hi - lo) / max(|lo|, tiny)`.
    pub fn rel_width(&self) -> f64 {
        self.width() / libm::fabs(self.lo).max(f64::MIN_POSITIVE)
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn contains_enclosure(&self, other: &Enclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn add(self, o: Enclosure) -> Enclosure {
        Enclosure::raw(sum_lo(self.lo, o.lo), sum_hi(self.hi, o.hi))
    }

    pub fn sub(self, o: Enclosure) -> Enclosure {
        Enclosure::raw(sum_lo(self.lo, -o.hi), sum_hi(self.hi, -o.lo))
    }

    pub fn mul(self, o: Enclosure) -> Enclosure {
        self.combine(o, prod_bounds)
    }

    /// Division by a bracket that excludes zero.
    pub fn div(self, o: Enclosure) -> Result<Enclosure, Error> {
        if o.lo <= 0.0 && o.hi >= 0.0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.combine(o, quot_bounds))
    }

    fn combine(self, o: Enclosure, f: fn(f64, f64) -> (f64, f64)) -> Enclosure {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (a, b) in [(self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi)] {
            let (l, h) = f(a, b);
            lo = lo.min(l);
            hi = hi.max(h);
        }
        Enclosure::raw(lo, hi)
    }

    pub fn scale(self, k: u64) -> Enclosure {
        self.mul(Enclosure::from_u64(k))
    }

    /// Bracket of `max(a, b)`.
    pub fn max(self, o: Enclosure) -> Enclosure {
        Enclosure::raw(self.lo.max(o.lo), self.hi.max(o.hi))
    }

    /// Bracket of `min(a, b)`.
    pub fn min(self, o: Enclosure) -> Enclosure {
        Enclosure::raw(self.lo.min(o.lo), self.hi.min(o.hi))
    }

    /// Multiplies `lo` by `1 - r` and `hi` by `1 + r` (outward).
    pub fn widen_rel(self, r: f64) -> Enclosure {
        let lo = if self.lo >= 0.0 {
            down(self.lo * (1.0 - r))
        } else {
            down(self.lo * (1.0 + r))
        };
        let hi = if self.hi >= 0.0 {
            up(self.hi * (1.0 + r))
        } else {
            up(self.hi * (1.0 - r))
        };
        Enclosure::raw(lo, hi)
    }

    /// `self <= o` for every pair of members.
    pub fn le(&self, o: &Enclosure) -> Truth {
        if self.hi <= o.lo {
            Truth::True
        } else if self.lo > o.hi {
            Truth::False
        } else {
            Truth::Indeterminate
        }
    }

    pub fn lt(&self, o: &Enclosure) -> Truth {
        if self.hi < o.lo {
            Truth::True
        } else if self.lo >= o.hi {
            Truth::False
        } else {
            Truth::Indeterminate
        }
    }

    pub fn ge(&self, o: &Enclosure) -> Truth {
        o.le(self)
    }

    pub fn gt(&self, o: &Enclosure) -> Truth {
        o.lt(self)
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

/// π, two ulps wide.
pub fn pi() -> Enclosure {
    Enclosure::raw(PI.next_down(), PI.next_up())
}

/// Monotone bracket of `x^p` for `0 < x < 1`.
///
/// Fails with [`Error::IndexOverflow`] when the exponent is not exactly
/// representable or the result would lose relative precision near the
/// bottom of the double range.
pub fn pow(x: Enclosure, p: u64) -> Result<Enclosure, Error> {
    if p >= (1u64 << 53) {
        return Err(Error::IndexOverflow { exponent: p });
    }
    if x.lo == x.hi {
        if let Some(v) = exact_pow(x.lo, p) {
            if !(v >= POWER_FLOOR) {
                return Err(Error::IndexOverflow { exponent: p });
            }
            return Ok(Enclosure::point(v));
        }
    }
    let e = p as f64;
    let lo = libm::pow(x.lo, e);
    let hi = libm::pow(x.hi, e);
    if !(lo >= POWER_FLOOR) {
        return Err(Error::IndexOverflow { exponent: p });
    }
    Ok(Enclosure::raw(down(lo), up(hi)))
}

/// `x^p` by repeated squaring when every step is exact.
fn exact_pow(x: f64, mut p: u64) -> Option<f64> {
    let mul = |a: f64, b: f64| {
        let c = a * b;
        (c != 0.0 && libm::fma(a, b, -c) == 0.0).then_some(c)
    };
    let mut acc = 1.0;
    let mut base = x;
    loop {
        if p & 1 == 1 {
            acc = mul(acc, base)?;
        }
        p >>= 1;
        if p == 0 {
            return Some(acc);
        }
        base = mul(base, base)?;
    }
}

/// Below this the error terms of products and quotients may be inexact.
const EFT_FLOOR: f64 = 1e-280;

/// Floats just below and above `s + err`, where `err` is the exact
/// rounding error of `s`.
fn bracket(s: f64, err: f64) -> (f64, f64) {
    if err > 0.0 {
        (s, s.next_up())
    } else if err < 0.0 {
        (s.next_down(), s)
    } else {
        (s, s)
    }
}

fn sum_bounds(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    bracket(s, (a - (s - bb)) + (b - bb))
}

fn sum_lo(a: f64, b: f64) -> f64 {
    sum_bounds(a, b).0
}

fn sum_hi(a: f64, b: f64) -> f64 {
    sum_bounds(a, b).1
}

fn prod_bounds(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    if p != 0.0 && libm::fabs(p) < EFT_FLOOR {
        return (down(p), up(p));
    }
    bracket(p, libm::fma(a, b, -p))
}

fn quot_bounds(a: f64, b: f64) -> (f64, f64) {
    let q = a / b;
    if q != 0.0 && libm::fabs(q) < EFT_FLOOR || libm::fabs(a) < EFT_FLOOR && a != 0.0 {
        return (down(q), up(q));
    }
    // a - q b, exact; the true quotient is q + r / b
    let r = libm::fma(-q, b, a);
    let sign = if b > 0.0 { r } else { -r };
    bracket(q, sign)
}

/// Smallest magnitude accepted for a block value.
pub(crate) const POWER_FLOOR: f64 = 1e-290;

/// Bracket of `sin y` for `y` inside `(0, 1]`, intersecting the library
/// sine (widened) with the Jordan bracket `[2y/π, y]`.
pub fn sin(y: Enclosure) -> Enclosure {
    let two_over_pi_lo = 2.0 / pi().hi;
    let lo = down(libm::sin(y.lo)).max(down(y.lo * two_over_pi_lo));
    let hi = up(libm::sin(y.hi)).min(y.hi);
    if lo <= hi {
        Enclosure::raw(lo, hi)
    } else {
        Enclosure::raw(hi, lo)
    }
}

/// Jordan's bracket `[2x/π, x]` of `sin x`, valid on `(0, π/2)`.
pub fn jordan_bounds(x: f64) -> Result<Enclosure, Error> {
    if !(x > 0.0 && x < FRAC_PI_2) {
        return Err(Error::Domain("jordan bounds need 0 < x < pi/2"));
    }
    let lo = down(2.0 * x / pi().hi);
    Ok(Enclosure::raw(lo, x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_brackets_true_value() {
        let p = pi();
        // 3.14159265358979323846...
        assert!(p.lo() < PI || p.lo() == PI);
        assert!(p.hi() > PI);
        assert!(p.width() < 1e-15);
    }

    #[test]
    fn jordan_at_quarter_pi() {
        let b = jordan_bounds(core::f64::consts::FRAC_PI_4).unwrap();
        assert!((b.lo() - 0.5).abs() < 1e-15);
        assert_eq!(b.hi(), core::f64::consts::FRAC_PI_4);
        assert!(b.contains(core::f64::consts::FRAC_1_SQRT_2));
    }

    #[test]
    fn jordan_at_tenth() {
        let b = jordan_bounds(0.1).unwrap();
        assert!((b.lo() - 0.063_661_977_236_758_13).abs() < 1e-15);
        assert!(b.contains(0.099_833_416_646_828_15));
    }

    #[test]
    fn jordan_width_shrinks_linearly() {
        for e in 1..12 {
            let x = libm::pow(10.0, -(e as f64));
            let b = jordan_bounds(x).unwrap();
            let ratio = b.width() / x;
            assert!((ratio - (1.0 - 2.0 / PI)).abs() < 1e-12);
        }
    }

    #[test]
    fn jordan_domain() {
        assert!(jordan_bounds(0.0).is_err());
        assert!(jordan_bounds(-1.0).is_err());
        assert!(jordan_bounds(2.0).is_err());
    }

    #[test]
    fn comparisons_are_three_valued() {
        let a = Enclosure::new(1.0, 2.0).unwrap();
        let b = Enclosure::new(2.0, 3.0).unwrap();
        let c = Enclosure::new(1.5, 2.5).unwrap();
        assert_eq!(a.le(&b), Truth::True);
        assert_eq!(a.lt(&b), Truth::Indeterminate);
        assert_eq!(b.le(&a), Truth::Indeterminate);
        assert_eq!(a.le(&c), Truth::Indeterminate);
        assert_eq!(Enclosure::point(3.5).gt(&b), Truth::True);
        assert_eq!(Enclosure::point(0.5).ge(&a), Truth::False);
    }

    #[test]
    fn rejects_inverted() {
        assert!(Enclosure::new(2.0, 1.0).is_err());
        assert!(Enclosure::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn sin_bracket_contains_library_value() {
        for i in 1..1000 {
            let y = i as f64 / 1000.0;
            let s = sin(Enclosure::point(y));
            assert!(s.contains(libm::sin(y)));
            assert!(s.rel_width() < 1e-14);
        }
    }

    #[test]
    fn pow_underflow_is_an_error() {
        let x = Enclosure::point(0.5);
        assert!(pow(x, 900).is_ok());
        assert!(matches!(pow(x, 1000), Err(Error::IndexOverflow { .. })));
    }
}

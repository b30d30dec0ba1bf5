use num_traits::{One, Signed, Zero};

use crate::enclosure::{down, up, Enclosure, Truth};

pub type Rational = num_rational::Ratio<i128>;

/// A real parameter: a certified bracket, plus the exact rational when
/// the value was given as one.
#[derive(Clone, Debug, PartialEq)]
pub struct Param {
    exact: Option<Rational>,
    enclosure: Enclosure,
}

impl Param {
    pub fn exact(r: Rational) -> Param {
        Param {
            enclosure: rational_enclosure(&r),
            exact: Some(r),
        }
    }

    pub fn ratio(num: i128, den: i128) -> Param {
        Param::exact(Rational::new(num, den))
    }

    pub fn approx(enclosure: Enclosure) -> Param {
        Param {
            exact: None,
            enclosure,
        }
    }

    pub fn exact_value(&self) -> Option<&Rational> {
        self.exact.as_ref()
    }

    pub fn enclosure(&self) -> Enclosure {
        self.enclosure
    }

    /// Certified `0 < self < 1`.
    pub fn in_unit_interval(&self) -> bool {
        match &self.exact {
            Some(r) => r.is_positive() && *r < Rational::one(),
            None => self.enclosure.lo() > 0.0 && self.enclosure.hi() < 1.0,
        }
    }

    pub fn le_rational(&self, t: &Rational) -> Truth {
        match &self.exact {
            Some(r) => Truth::from_bool(r <= t),
            None => self.enclosure.le(&rational_enclosure(t)),
        }
    }

    pub fn lt_rational(&self, t: &Rational) -> Truth {
        match &self.exact {
            Some(r) => Truth::from_bool(r < t),
            None => self.enclosure.lt(&rational_enclosure(t)),
        }
    }

    pub fn ge_rational(&self, t: &Rational) -> Truth {
        match &self.exact {
            Some(r) => Truth::from_bool(r >= t),
            None => self.enclosure.ge(&rational_enclosure(t)),
        }
    }
}

fn is_power_of_two(v: i128) -> bool {
    v > 0 && (v & (v - 1)) == 0
}

/// Bracket of a rational; a point when the value is a double.
pub fn rational_enclosure(r: &Rational) -> Enclosure {
    let (n, d) = (*r.numer(), *r.denom());
    if d.is_zero() {
        return Enclosure::point(f64::NAN);
    }
    let limit = 1i128 << 53;
    let v = n as f64 / d as f64;
    if n.abs() < limit && is_power_of_two(d) {
        Enclosure::point(v)
    } else if n.abs() < limit && d < limit {
        // both exact, so the quotient is one rounding away
        Enclosure::point(n as f64)
            .div(Enclosure::point(d as f64))
            .expect("nonzero denominator")
    } else {
        Enclosure::raw(down(v), up(v))
    }
}

//! Series families and certified term/tail evaluation.
//!
//! Every family is a finite head of explicit terms followed by blocks
//! `p = 1, 2, ...`, where block `p` holds the terms `w_j * v(p)` for
//! `j = 0..m`:
//!
//! | family          | head      | weights  | `v(p)`         |
//! |-----------------|-----------|----------|----------------|
//! | sine            | empty     | `k`      | `sin(x^p)`     |
//! | multigeometric  | empty     | `k`      | `q^p`          |
//! | explicit prefix | the terms | `[1]`    | `t_L * rho^p`  |
//!
//! Tails are evaluated by summing terms backward from an anchor block
//! `H` blocks beyond the first remaining one, starting from a closed-form
//! bound on everything past the anchor. Anchors never move backward as
//! `n` grows and every anchor bound contains the chain that a later
//! anchor would produce, so `tail(n) ⊇ term(n+1) + tail(n+1)` holds for
//! the computed brackets, not only for the reals they enclose.

use alloc::vec;
use alloc::vec::Vec;

use crate::enclosure::{self, pi, Enclosure, POWER_FLOOR};
use crate::error::Error;
use crate::param::Param;

/// Largest number of exactly evaluated blocks in a tail.
pub const MAX_TAIL_BLOCKS: u64 = 256;

/// Target ratio between the anchor remainder and the first remaining term.
const TAIL_RELATIVE_TARGET: f64 = 1e-18;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesKind {
    Sine,
    Multigeometric,
    ExplicitPrefix,
}

#[derive(Clone, Debug, PartialEq)]
enum Family {
    Sine { k: Vec<u32>, x: Param },
    Multigeometric { k: Vec<u32>, q: Param },
    ExplicitPrefix { terms: Vec<Param>, ratio: Param },
}

/// A positive convergent series whose subsums are studied.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSpec {
    family: Family,
    weights: Vec<u64>,
    head: Vec<Enclosure>,
    /// `t_L` for the explicit family, 1 otherwise.
    scale: Enclosure,
    horizon: u64,
    floor_power: u64,
    anchor_slack: f64,
}

fn check_weights(k: &[u32]) -> Result<(), Error> {
    if k.is_empty() {
        return Err(Error::Domain("weight vector must be nonempty"));
    }
    if k.contains(&0) {
        return Err(Error::Domain("weights must be positive integers"));
    }
    Ok(())
}

impl SeriesSpec {
    /// `k_1 sin x + ... + k_m sin x + k_1 sin x^2 + ...`.
    ///
    /// Weights are stored as given; ordering is checked by the classifier.
    pub fn sine(k: Vec<u32>, x: Param) -> Result<SeriesSpec, Error> {
        check_weights(&k)?;
        if !x.in_unit_interval() {
            return Err(Error::Domain("x must lie in (0, 1)"));
        }
        SeriesSpec::build(Family::Sine { k, x })
    }

    /// `k_1 q + ... + k_m q + k_1 q^2 + ...`.
    ///
    /// The first block is scaled by `q`, so `k = (3, 2)`, `q = 1/4` is the
    /// Guthrie-Nymann series `3/4 + 2/4 + 3/16 + 2/16 + ...`.
    pub fn multigeometric(k: Vec<u32>, q: Param) -> Result<SeriesSpec, Error> {
        check_weights(&k)?;
        if !q.in_unit_interval() {
            return Err(Error::Domain("q must lie in (0, 1)"));
        }
        SeriesSpec::build(Family::Multigeometric { k, q })
    }

    /// The given terms, continued geometrically: `u_{L+j} = t_L * ratio^j`.
    pub fn explicit_prefix(terms: Vec<Param>, ratio: Param) -> Result<SeriesSpec, Error> {
        if terms.is_empty() {
            return Err(Error::Domain("prefix must be nonempty"));
        }
        if terms.iter().any(|t| t.enclosure().lo() <= 0.0) {
            return Err(Error::Domain("prefix terms must be positive"));
        }
        if !ratio.in_unit_interval() {
            return Err(Error::Domain("tail ratio must lie in (0, 1)"));
        }
        SeriesSpec::build(Family::ExplicitPrefix { terms, ratio })
    }

    fn build(family: Family) -> Result<SeriesSpec, Error> {
        let (weights, head, scale): (Vec<u64>, Vec<Enclosure>, Enclosure) = match &family {
            Family::Sine { k, .. } | Family::Multigeometric { k, .. } => (
                k.iter().map(|&w| w as u64).collect(),
                Vec::new(),
                Enclosure::point(1.0),
            ),
            Family::ExplicitPrefix { terms, .. } => {
                let head: Vec<Enclosure> = terms.iter().map(Param::enclosure).collect();
                let last = *head.last().expect("nonempty prefix");
                (vec![1], head, last)
            }
        };
        let mut spec = SeriesSpec {
            family,
            weights,
            head,
            scale,
            horizon: 1,
            floor_power: 1,
            anchor_slack: 0.0,
        };
        let r = spec.ratio().enclosure();
        let total: u64 = spec.weights.iter().sum();
        let w_min = *spec.weights.iter().min().expect("nonempty weights");

        // Blocks needed before the anchor remainder is negligible.
        let jordan = if spec.kind() == SeriesKind::Sine {
            core::f64::consts::FRAC_PI_2
        } else {
            1.0
        };
        let factor = total as f64 / w_min as f64 * jordan / (1.0 - r.hi());
        let mut h = 1;
        let mut rh = r.hi();
        while h < MAX_TAIL_BLOCKS && factor * rh > TAIL_RELATIVE_TARGET {
            h += 1;
            rh *= r.hi();
        }
        spec.horizon = h;

        // Largest block power whose value keeps full relative precision.
        let ln_r = libm::log(r.lo());
        let mut floor = libm::floor(libm::log(POWER_FLOOR * 1e10) / ln_r);
        if !(floor >= 1.0) {
            floor = 1.0;
        }
        let mut floor_power = (floor as u64).min(1u64 << 52);
        while floor_power > 1 && libm::pow(r.lo(), floor_power as f64) < POWER_FLOOR {
            floor_power -= 1;
        }
        spec.floor_power = floor_power;

        // Relative slack on anchor bounds; must dominate the rounding of
        // one block of the backward chain, scaled by 1/(1-r).
        let m = spec.weights.len() as f64;
        spec.anchor_slack = 256.0 * (m + 1.0) * f64::EPSILON / (1.0 - r.hi());
        Ok(spec)
    }

    pub fn kind(&self) -> SeriesKind {
        match self.family {
            Family::Sine { .. } => SeriesKind::Sine,
            Family::Multigeometric { .. } => SeriesKind::Multigeometric,
            Family::ExplicitPrefix { .. } => SeriesKind::ExplicitPrefix,
        }
    }

    /// `k` for the sine and multigeometric families, `[1]` otherwise.
    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// `K = k_1 + ... + k_m`.
    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    /// Terms per block.
    pub fn block_len(&self) -> usize {
        self.weights.len()
    }

    /// Number of explicit leading terms.
    pub fn head_len(&self) -> usize {
        self.head.len()
    }

    /// `x`, `q`, or the explicit tail ratio.
    pub fn ratio(&self) -> &Param {
        match &self.family {
            Family::Sine { x, .. } => x,
            Family::Multigeometric { q, .. } => q,
            Family::ExplicitPrefix { ratio, .. } => ratio,
        }
    }

    /// Blocks evaluated exactly past the first remaining one.
    pub fn tail_horizon(&self) -> u64 {
        self.horizon
    }

    /// Block value `v(p)`.
    pub fn block_value(&self, p: u64) -> Result<Enclosure, Error> {
        if p == 0 || p > self.floor_power {
            return Err(Error::IndexOverflow { exponent: p });
        }
        let r = self.ratio().enclosure();
        let power = enclosure::pow(r, p)?;
        Ok(match self.kind() {
            SeriesKind::Sine => enclosure::sin(power),
            SeriesKind::Multigeometric => power,
            SeriesKind::ExplicitPrefix => self.scale.mul(power),
        })
    }

    /// Bound on `W * sum_{p > last} v(p)`.
    fn remainder(&self, last: u64) -> Result<Enclosure, Error> {
        let r = self.ratio().enclosure();
        let one_minus = Enclosure::point(1.0).sub(r);
        let geo = enclosure::pow(r, last + 1)?.div(one_minus)?;
        let geo = match self.kind() {
            SeriesKind::Sine => {
                let two_over_pi = Enclosure::point(2.0).div(pi())?;
                let lower = geo.mul(two_over_pi);
                Enclosure::raw(lower.lo(), geo.hi())
            }
            SeriesKind::Multigeometric => geo,
            SeriesKind::ExplicitPrefix => self.scale.mul(geo),
        };
        Ok(geo.scale(self.total_weight()).widen_rel(self.anchor_slack))
    }

    /// Position of the 0-based term index `start` as (block power, offset),
    /// with head positions mapped to the start of block 1.
    fn locate(&self, start: u64) -> (u64, usize) {
        let l = self.head.len() as u64;
        if start < l {
            return (1, 0);
        }
        let m = self.weights.len() as u64;
        let rel = start - l;
        (rel / m + 1, (rel % m) as usize)
    }

    fn anchor(&self, p: u64) -> Result<u64, Error> {
        let end = (p + self.horizon).min(self.floor_power - 1);
        if end < p {
            return Err(Error::IndexOverflow { exponent: p });
        }
        Ok(end)
    }

    /// Certified bracket of the `n`-th term, `n >= 1`.
    pub fn term(&self, n: u64) -> Result<Enclosure, Error> {
        if n == 0 {
            return Err(Error::Domain("term indices start at 1"));
        }
        let l = self.head.len() as u64;
        if n <= l {
            return Ok(self.head[(n - 1) as usize]);
        }
        let (p, j) = self.locate(n - 1);
        Ok(self.block_value(p)?.scale(self.weights[j]))
    }

    /// Certified bracket of `r_n = sum_{i > n} u_i`; `tail(0)` is the sum.
    pub fn tail(&self, n: u64) -> Result<Enclosure, Error> {
        let l = self.head.len() as u64;
        let (p0, j0) = self.locate(n);
        let end = self.anchor(p0)?;
        let mut acc = self.remainder(end)?;
        for p in (p0..=end).rev() {
            let v = self.block_value(p)?;
            let first = if p == p0 { j0 } else { 0 };
            for &w in self.weights[first..].iter().rev() {
                acc = v.scale(w).add(acc);
            }
        }
        if n < l {
            for t in self.head[n as usize..].iter().rev() {
                acc = t.add(acc);
            }
        }
        Ok(acc)
    }

    /// `tail(0), ..., tail(upto)`, bit-identical to calling [`tail`]
    /// for each index, sharing block work between indices.
    ///
    /// [`tail`]: SeriesSpec::tail
    pub fn tails(&self, upto: u64) -> Result<Vec<Enclosure>, Error> {
        let l = self.head.len() as u64;
        let m = self.weights.len() as u64;
        let mut out = vec![Enclosure::point(0.0); upto as usize + 1];
        let (last_block, _) = self.locate(upto);
        let max_end = self.anchor(last_block)?;
        let values = (1..=max_end)
            .map(|p| self.block_value(p))
            .collect::<Result<Vec<_>, _>>()?;
        let value = |p: u64| values[(p - 1) as usize];

        for p in 1..=last_block {
            let end = self.anchor(p)?;
            let mut acc = self.remainder(end)?;
            for pp in (p + 1..=end).rev() {
                let v = value(pp);
                for &w in self.weights.iter().rev() {
                    acc = v.scale(w).add(acc);
                }
            }
            let v = value(p);
            for j in (0..m).rev() {
                acc = v.scale(self.weights[j as usize]).add(acc);
                let start = l + (p - 1) * m + j;
                if start <= upto {
                    out[start as usize] = acc;
                }
            }
            if p == 1 {
                for i in (0..l).rev() {
                    acc = self.head[i as usize].add(acc);
                    if i <= upto {
                        out[i as usize] = acc;
                    }
                }
            }
        }
        Ok(out)
    }
}

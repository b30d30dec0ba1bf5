//! Numerical estimators built on the outer covers, and the per-index
//! checker for the two comparison chains of a sandwiched series.

use alloc::vec::Vec;

use crate::cover::{outer_cover, CoverResult};
use crate::enclosure::{Enclosure, Truth};
use crate::error::Error;
use crate::series::{SeriesKind, SeriesSpec};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasureStep {
    pub depth: usize,
    pub upper_bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasureEstimate {
    pub steps: Vec<MeasureStep>,
    /// Drop between the last two bounds; `None` for a single step.
    pub last_decrement: Option<f64>,
}

impl MeasureEstimate {
    pub fn final_bound(&self) -> f64 {
        self.steps.last().map_or(f64::NAN, |s| s.upper_bound)
    }
}

/// Upper bounds on the Lebesgue measure of the set of subsums from the
/// covers at depths `0..=max_depth`.
pub fn measure_estimate(spec: &SeriesSpec, max_depth: usize) -> Result<MeasureEstimate, Error> {
    let steps = (0..=max_depth)
        .map(|depth| {
            Ok(MeasureStep {
                depth,
                upper_bound: outer_cover(spec, depth)?.cover.total_length(),
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let last_decrement = match steps.as_slice() {
        [.., a, b] => Some(a.upper_bound - b.upper_bound),
        _ => None,
    };
    Ok(MeasureEstimate {
        steps,
        last_decrement,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoxSample {
    pub depth: usize,
    pub eps: f64,
    pub boxes: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DimensionEstimate {
    /// Least-squares slope of `ln(boxes)` against `ln(1/eps)`.
    pub slope: f64,
    pub samples: Vec<BoxSample>,
}

/// Number of cells `[i eps, (i+1) eps)` meeting the cover.
pub fn box_count(cover: &CoverResult, eps: f64) -> u64 {
    let mut count = 0u64;
    let mut last: Option<u64> = None;
    for iv in cover.cover.intervals() {
        let first = libm::floor(iv.lo / eps) as u64;
        let end = libm::floor(iv.hi / eps) as u64;
        let start = match last {
            Some(l) if l >= first => l + 1,
            _ => first,
        };
        if end >= start {
            count += end - start + 1;
        }
        last = Some(last.map_or(end, |l| l.max(end)));
    }
    count
}

/// Box-counting estimate with cell size `eps = r_depth` at each depth.
pub fn box_dimension_estimate(spec: &SeriesSpec, depths: &[usize]) -> Result<DimensionEstimate, Error> {
    if depths.len() < 3 {
        return Err(Error::Domain("box dimension needs at least three depths"));
    }
    let samples = depths
        .iter()
        .map(|&depth| {
            let cover = outer_cover(spec, depth)?;
            let eps = cover.tail_hi;
            Ok(BoxSample {
                depth,
                eps,
                boxes: box_count(&cover, eps),
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let xs: Vec<f64> = samples.iter().map(|s| -libm::log(s.eps)).collect();
    let ys: Vec<f64> = samples.iter().map(|s| libm::log(s.boxes as f64)).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if !(sxx > 0.0) {
        return Err(Error::DegenerateFit);
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Ok(DimensionEstimate {
        slope: sxy / sxx,
        samples,
    })
}

/// Which of the two comparison chains holds at an index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChainTag {
    /// `a_n <= c_n <= b_n <= r^a_n <= r^c_n <= r^b_n`
    LeqChain,
    /// `r^a_n < r^c_n < r^b_n < a_n < c_n < b_n`
    GtChain,
    Neither,
}

impl ChainTag {
    pub fn as_str(self) -> &'static str {
        match self {
            ChainTag::LeqChain => "LeqChain",
            ChainTag::GtChain => "GtChain",
            ChainTag::Neither => "Neither",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SandwichReport {
    pub horizon: u64,
    /// Indices where one of the chains is certified.
    pub chain_holds_at: Vec<u64>,
    /// First index where neither chain is certified.
    pub chain_fails_at: Option<u64>,
    /// Tag per index `1..=horizon`.
    pub which_chain: Vec<ChainTag>,
    /// `a_n <= c_n <= b_n` per index.
    pub terms_ordered: Vec<Truth>,
}

/// How two series compare termwise and tailwise by construction, before
/// looking at any bracket.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Structural {
    Same,
    /// `sin y < y` with identical weights and ratio.
    SineBelowGeometric,
    None,
}

fn structural(lower: &SeriesSpec, upper: &SeriesSpec) -> Structural {
    if lower == upper {
        return Structural::Same;
    }
    if lower.kind() == SeriesKind::Sine
        && upper.kind() == SeriesKind::Multigeometric
        && lower.weights() == upper.weights()
        && lower.ratio() == upper.ratio()
    {
        return Structural::SineBelowGeometric;
    }
    Structural::None
}

fn le(x: Enclosure, y: Enclosure, s: Structural) -> Truth {
    match s {
        Structural::None => x.le(&y),
        _ => Truth::True,
    }
}

fn lt(x: Enclosure, y: Enclosure, s: Structural) -> Truth {
    match s {
        Structural::SineBelowGeometric => Truth::True,
        Structural::Same => Truth::False,
        Structural::None => x.lt(&y),
    }
}

fn all_true(ts: &[Truth]) -> bool {
    ts.iter().all(|t| t.is_true())
}

/// Tests both chains at every `n <= horizon`. Reports only; draws no
/// conclusion about the sets.
pub fn sandwich_check(
    a: &SeriesSpec,
    c: &SeriesSpec,
    b: &SeriesSpec,
    horizon: u64,
) -> Result<SandwichReport, Error> {
    let mut report = SandwichReport {
        horizon,
        chain_holds_at: Vec::new(),
        chain_fails_at: None,
        which_chain: Vec::new(),
        terms_ordered: Vec::new(),
    };
    if horizon == 0 {
        return Ok(report);
    }
    let (ra, rc, rb) = (a.tails(horizon)?, c.tails(horizon)?, b.tails(horizon)?);
    let (ac, cb) = (structural(a, c), structural(c, b));
    for n in 1..=horizon {
        let i = n as usize;
        let (an, cn, bn) = (a.term(n)?, c.term(n)?, b.term(n)?);
        let (ran, rcn, rbn) = (ra[i], rc[i], rb[i]);
        let ordered = le(an, cn, ac).and(le(cn, bn, cb));
        let leq = all_true(&[
            ordered,
            bn.le(&ran),
            le(ran, rcn, ac),
            le(rcn, rbn, cb),
        ]);
        let gt = all_true(&[
            lt(ran, rcn, ac),
            lt(rcn, rbn, cb),
            rbn.lt(&an),
            lt(an, cn, ac),
            lt(cn, bn, cb),
        ]);
        let tag = if leq {
            ChainTag::LeqChain
        } else if gt {
            ChainTag::GtChain
        } else {
            ChainTag::Neither
        };
        if tag == ChainTag::Neither {
            report.chain_fails_at.get_or_insert(n);
        } else {
            report.chain_holds_at.push(n);
        }
        report.which_chain.push(tag);
        report.terms_ordered.push(ordered);
    }
    Ok(report)
}

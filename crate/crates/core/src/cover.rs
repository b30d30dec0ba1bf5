//! Finite-depth outer covers of the set of subsums.
//!
//! Every subsum is a depth-`N` partial sum plus something in `[0, r_N]`,
//! so the union of `[s, s + r_N]` over the depth-`N` partial sums `s`
//! contains the whole set, and these covers shrink to it as `N` grows.
//!
//! Partial sums are doubles. Sums closer than `2^-46 * span` are merged
//! into the smallest of the group; every cover interval carries enough
//! slack to absorb the merge drift and the rounding of the sums, and the
//! slack is arranged so that the cover at depth `N + 1` is contained in
//! the cover at depth `N` for the computed endpoints themselves.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::series::SeriesSpec;
use crate::sumset::{prefix_sumset, sumset, sumset_meet_in_middle, MAX_EXHAUSTIVE_WEIGHTS};

/// Relative dedup tolerance.
pub const DEDUP_REL: f64 = 1.0 / (1u64 << 46) as f64;
/// Relative slack absorbing midpoint and rounding error.
pub const SLACK_REL: f64 = 1.0 / (1u64 << 40) as f64;
/// Largest point set held in memory.
pub const MAX_POINTS: usize = 100_000_000;
/// Largest depth for exhaustive `2^N` enumeration.
pub const MAX_NAIVE_DEPTH: usize = 30;
/// Largest cover depth.
pub const MAX_DEPTH: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Open-interval intersection test.
    pub fn meets_open(&self, lo: f64, hi: f64) -> bool {
        self.lo < hi && lo < self.hi
    }
}

/// Sorted closed intervals with positive separation.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct IntervalUnion {
    intervals: Vec<Interval>,
}

impl IntervalUnion {
    /// Sorts and merges; touching or overlapping intervals are joined.
    pub fn from_intervals(mut v: Vec<Interval>) -> IntervalUnion {
        v.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        IntervalUnion::from_sorted(v)
    }

    fn from_sorted(v: Vec<Interval>) -> IntervalUnion {
        let mut out: Vec<Interval> = Vec::with_capacity(v.len());
        for iv in v {
            match out.last_mut() {
                Some(last) if iv.lo <= last.hi => last.hi = last.hi.max(iv.hi),
                _ => out.push(iv),
            }
        }
        IntervalUnion { intervals: out }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Sum of widths, rounded up, and never above the hull length.
    pub fn total_length(&self) -> f64 {
        let (Some(first), Some(last)) = (self.intervals.first(), self.intervals.last()) else {
            return 0.0;
        };
        let sum = self
            .intervals
            .iter()
            .fold(0.0, |acc, iv| (acc + iv.width().next_up()).next_up());
        let hull = last.hi - first.lo;
        let hull = if first.lo == 0.0 { hull } else { hull.next_up() };
        sum.min(hull)
    }

    pub fn contains_point(&self, v: f64) -> bool {
        let i = self.intervals.partition_point(|iv| iv.hi < v);
        i < self.intervals.len() && self.intervals[i].lo <= v
    }

    /// Every interval of `self` lies inside one interval of `other`.
    pub fn is_subset_of(&self, other: &IntervalUnion) -> bool {
        let mut j = 0;
        for iv in &self.intervals {
            while j < other.intervals.len() && other.intervals[j].hi < iv.hi {
                j += 1;
            }
            if j == other.intervals.len() || !other.intervals[j].contains(iv) {
                return false;
            }
        }
        true
    }

    /// Maximal open intervals of `(lo, hi)` missed by the union.
    pub fn complement_within(&self, lo: f64, hi: f64) -> Vec<Interval> {
        let mut gaps = Vec::new();
        let mut cursor = lo;
        for iv in &self.intervals {
            if iv.lo > cursor {
                gaps.push(Interval {
                    lo: cursor,
                    hi: iv.lo.min(hi),
                });
            }
            cursor = cursor.max(iv.hi);
            if cursor >= hi {
                break;
            }
        }
        if cursor < hi {
            gaps.push(Interval { lo: cursor, hi });
        }
        gaps
    }
}

/// Distinct partial sums at some depth, as doubles.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialSums {
    /// Sorted, deduplicated.
    pub values: Vec<f64>,
    /// Bound on the distance from a computed sum to the exact partial
    /// sum it represents, before merge drift.
    pub error_bound: f64,
    /// Merge tolerance.
    pub tolerance: f64,
    /// Number of dedup passes; each can move a representative down by at
    /// most `tolerance`.
    pub levels: usize,
}

fn dedup_sorted(v: &mut Vec<f64>, tol: f64) {
    if v.is_empty() {
        return;
    }
    let mut w = 0;
    for r in 1..v.len() {
        if v[r] - v[w] > tol {
            w += 1;
            v[w] = v[r];
        }
    }
    v.truncate(w + 1);
}

fn convolve(points: &[f64], values: &[f64], tol: f64) -> Result<Vec<f64>, Error> {
    let n = points.len() as u128 * values.len() as u128;
    if n > MAX_POINTS as u128 {
        return Err(Error::MemoryGuard {
            points: n,
            max: MAX_POINTS,
        });
    }
    let mut out = Vec::with_capacity(n as usize);
    for &v in values {
        out.extend(points.iter().map(|&s| s + v));
    }
    out.sort_unstable_by(f64::total_cmp);
    dedup_sorted(&mut out, tol);
    Ok(out)
}

fn weight_sums(k: &[u64]) -> Result<Vec<u64>, Error> {
    Ok(if k.len() > MAX_EXHAUSTIVE_WEIGHTS {
        sumset_meet_in_middle(k)?.sigma
    } else {
        sumset(k)?.sigma
    })
}

/// Distinct partial sums `sum_{n <= depth} eps_n u_n`, built block by
/// block: each block contributes `σ v(p)` for `σ` in the subset sums of
/// the weights (truncated for a final partial block).
pub fn enumerate_sums(spec: &SeriesSpec, depth: usize) -> Result<PartialSums, Error> {
    let span = spec.tail(0)?.hi();
    let tol = DEDUP_REL * span;
    let mut points = vec![0.0f64];
    let mut levels = 0;
    let mut err = 0.0;

    let head = spec.head_len().min(depth);
    for n in 1..=head {
        let t = spec.term(n as u64)?;
        err += t.width();
        points = convolve(&points, &[0.0, t.mid()], tol)?;
        levels += 1;
    }

    let k = spec.weights();
    let m = k.len();
    let rest = depth - head;
    let (full, partial) = (rest / m, rest % m);
    let sigma = if full > 0 { weight_sums(k)? } else { Vec::new() };
    let blocks = full + usize::from(partial > 0);
    for b in 0..blocks {
        let p = b as u64 + 1;
        let v = spec.block_value(p)?;
        let owned;
        let sums: &[u64] = if b < full {
            &sigma
        } else {
            owned = prefix_sumset(k, partial);
            &owned
        };
        let max_sigma = *sums.last().expect("0 is always a subset sum");
        err += v.scale(max_sigma).width();
        let values: Vec<f64> = sums
            .iter()
            .map(|&s| if s == 0 { 0.0 } else { v.scale(s).mid() })
            .collect();
        points = convolve(&points, &values, tol)?;
        levels += 1;
    }
    err += (levels as f64 + 1.0) * 2.0 * span * f64::EPSILON;
    Ok(PartialSums {
        values: points,
        error_bound: err,
        tolerance: tol,
        levels,
    })
}

/// All `2^depth` partial sums from term midpoints, deduplicated once.
pub fn enumerate_sums_naive(spec: &SeriesSpec, depth: usize) -> Result<PartialSums, Error> {
    if depth > MAX_NAIVE_DEPTH {
        return Err(Error::DepthGuard {
            depth,
            max: MAX_NAIVE_DEPTH,
        });
    }
    if (1u128 << depth) > MAX_POINTS as u128 {
        return Err(Error::MemoryGuard {
            points: 1u128 << depth,
            max: MAX_POINTS,
        });
    }
    let span = spec.tail(0)?.hi();
    let tol = DEDUP_REL * span;
    let mut sums = Vec::with_capacity(1usize << depth);
    sums.push(0.0f64);
    let mut err = 0.0;
    for n in 1..=depth {
        let t = spec.term(n as u64)?;
        err += t.width();
        let len = sums.len();
        for i in 0..len {
            sums.push(sums[i] + t.mid());
        }
    }
    sums.sort_unstable_by(f64::total_cmp);
    dedup_sorted(&mut sums, tol);
    err += (depth as f64 + 1.0) * 2.0 * span * f64::EPSILON;
    Ok(PartialSums {
        values: sums,
        error_bound: err,
        tolerance: tol,
        levels: usize::from(depth > 0),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoverResult {
    pub depth: usize,
    pub cover: IntervalUnion,
    pub point_count: usize,
    /// Upper end of the bracket of `r_depth`.
    pub tail_hi: f64,
    /// Upper end of the bracket of the total sum.
    pub span: f64,
    pub gaps: Vec<Interval>,
}

/// Outer cover at `depth`: the merge of `[s, s + r_depth]` over all
/// partial sums, widened by the rounding slack and clipped to
/// `[0, total]`.
pub fn outer_cover(spec: &SeriesSpec, depth: usize) -> Result<CoverResult, Error> {
    if depth > MAX_DEPTH {
        return Err(Error::DepthGuard {
            depth,
            max: MAX_DEPTH,
        });
    }
    let sums = enumerate_sums(spec, depth)?;
    let span = spec.tail(0)?.hi();
    let tail_hi = spec.tail(depth as u64)?.hi();
    let slack = SLACK_REL * span;
    if sums.error_bound > slack / 2.0 {
        return Err(Error::Precision);
    }
    let tol = sums.tolerance;
    let below = slack + tol;
    // Decreases by at least r_N - r_{N+1} + 2 tol per step; covers up to
    // `levels * tol` of merge drift.
    let above = slack + tail_hi + (2 * (2 * MAX_DEPTH - depth)) as f64 * tol;

    let raw: Vec<Interval> = sums
        .values
        .iter()
        .map(|&s| Interval {
            lo: (s - below).max(0.0),
            hi: (s + above).min(span),
        })
        .collect();
    let cover = IntervalUnion::from_sorted(raw);
    let gaps = cover.complement_within(0.0, span);
    Ok(CoverResult {
        depth,
        point_count: sums.values.len(),
        tail_hi,
        span,
        gaps,
        cover,
    })
}

/// Open gaps of the cover inside `[0, span]`; each misses the whole set.
pub fn gaps_of(result: &CoverResult) -> Vec<Interval> {
    result.cover.complement_within(0.0, result.span)
}

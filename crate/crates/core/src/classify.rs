//! Threshold classification of achievement sets.
//!
//! Labels are only emitted from certified comparisons. A comparison that
//! cannot be decided at the available precision never produces a label;
//! it is recorded in the notes and the weaker conclusion is reported.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One};

use crate::enclosure::{pi, Enclosure, Truth};
use crate::error::Error;
use crate::param::{rational_enclosure, Param, Rational};
use crate::series::{SeriesKind, SeriesSpec};
use crate::sumset::{sumset, sumset_meet_in_middle, SumsetInfo, MAX_EXHAUSTIVE_WEIGHTS};

/// Horizon of the supplementary term-versus-tail scan attached to
/// undecided classifications.
pub const EVIDENCE_HORIZON: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Interval,
    FiniteUnionOfIntervals,
    CantorSet,
    Cantorval,
    ContainsInterval,
    NotFiniteUnion,
    Unknown,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Interval => "Interval",
            Label::FiniteUnionOfIntervals => "FiniteUnionOfIntervals",
            Label::CantorSet => "CantorSet",
            Label::Cantorval => "Cantorval",
            Label::ContainsInterval => "ContainsInterval",
            Label::NotFiniteUnion => "NotFiniteUnion",
            Label::Unknown => "Unknown",
        }
    }

    pub fn parse(s: &str) -> Option<Label> {
        [
            Label::Interval,
            Label::FiniteUnionOfIntervals,
            Label::CantorSet,
            Label::Cantorval,
            Label::ContainsInterval,
            Label::NotFiniteUnion,
            Label::Unknown,
        ]
        .into_iter()
        .find(|l| l.as_str() == s)
    }
}

/// What a single certified inequality establishes about the set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Conclusion {
    IsInterval,
    ContainsInterval,
    NotFiniteUnion,
    CantorSet,
}

impl Conclusion {
    fn conflicts_with(self, other: Conclusion) -> bool {
        use Conclusion::*;
        matches!(
            (self, other),
            (IsInterval, NotFiniteUnion)
                | (NotFiniteUnion, IsInterval)
                | (IsInterval, CantorSet)
                | (CantorSet, IsInterval)
                | (CantorSet, ContainsInterval)
                | (ContainsInterval, CantorSet)
        )
    }
}

/// A certified inequality `lhs op rhs` and the theorem it feeds.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub theorem: &'static str,
    pub inequality: &'static str,
    pub lhs: Enclosure,
    pub rhs: Enclosure,
    pub conclusion: Conclusion,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub label: Label,
    pub certificates: Vec<Certificate>,
    pub notes: Vec<String>,
}

impl Classification {
    fn unknown() -> Classification {
        Classification {
            label: Label::Unknown,
            certificates: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// No two certificates establish incompatible facts.
    pub fn is_consistent(&self) -> bool {
        self.certificates.iter().all(|a| {
            self.certificates
                .iter()
                .all(|b| !a.conclusion.conflicts_with(b.conclusion))
        })
    }
}

/// Threshold values for the sine family.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdReport {
    /// `d_j = (π/2) k_j - k_{j+1} - ... - k_m`
    pub d_list: Vec<Enclosure>,
    pub d: Enclosure,
    /// `l_j = (2/π) k_j - k_{j+1} - ... - k_m`
    pub l_list: Vec<Enclosure>,
    pub l: Enclosure,
    /// `d / (K + d)`
    pub t_interval: Enclosure,
    /// `2 k_m / (K π + 2 k_m)`
    pub t_not_finite_union: Enclosure,
    /// `π / (2 n* + π)`
    pub t_contains_interval: Enclosure,
    /// `l / (K + l)`
    pub t_cantor: Enclosure,
    pub sumset: SumsetInfo,
}

fn check_sorted(k: &[u64]) -> Result<(), Error> {
    if k.windows(2).all(|w| w[0] >= w[1]) {
        Ok(())
    } else {
        Err(Error::UnsortedWeights)
    }
}

fn weights_sumset(k: &[u64]) -> Result<SumsetInfo, Error> {
    if k.len() > MAX_EXHAUSTIVE_WEIGHTS {
        sumset_meet_in_middle(k)
    } else {
        sumset(k)
    }
}

/// `[f(lo).lo, f(hi).hi]` for a nondecreasing `f` evaluated on points.
fn monotone<F>(v: Enclosure, f: F) -> Result<Enclosure, Error>
where
    F: Fn(Enclosure) -> Result<Enclosure, Error>,
{
    let lo = f(Enclosure::point(v.lo()))?.lo();
    let hi = f(Enclosure::point(v.hi()))?.hi();
    Enclosure::new(lo, hi)
}

/// Threshold values for a sine series with sorted weights.
pub fn sine_thresholds(spec: &SeriesSpec) -> Result<ThresholdReport, Error> {
    if spec.kind() != SeriesKind::Sine {
        return Err(Error::Domain("sine thresholds need a sine series"));
    }
    let k = spec.weights();
    check_sorted(k)?;
    let total = spec.total_weight();
    let big_k = Enclosure::from_u64(total);
    let half_pi = pi().mul(Enclosure::point(0.5));
    let two_over_pi = Enclosure::point(2.0).div(pi())?;

    let mut rest = total;
    let mut d_list = Vec::with_capacity(k.len());
    let mut l_list = Vec::with_capacity(k.len());
    for &w in k {
        rest -= w;
        let after = Enclosure::from_u64(rest);
        d_list.push(half_pi.scale(w).sub(after));
        l_list.push(two_over_pi.scale(w).sub(after));
    }
    let d = d_list.iter().copied().reduce(Enclosure::max).expect("m >= 1");
    let l = l_list.iter().copied().reduce(Enclosure::min).expect("m >= 1");

    let over_k_plus = |v: Enclosure| v.div(big_k.add(v));
    let t_interval = monotone(d, over_k_plus)?;
    let t_cantor = monotone(l, over_k_plus)?;

    let k_m = *k.last().expect("m >= 1");
    let two_km = Enclosure::from_u64(2 * k_m);
    // decreasing in π
    let nfu = |p: Enclosure| two_km.div(big_k.mul(p).add(two_km));
    let t_not_finite_union = Enclosure::new(
        nfu(Enclosure::point(pi().hi()))?.lo(),
        nfu(Enclosure::point(pi().lo()))?.hi(),
    )?;

    let info = weights_sumset(k)?;
    let two_n_star = Enclosure::from_u64(2 * info.n_star);
    let t_contains_interval = monotone(pi(), |p| p.div(two_n_star.add(p)))?;

    Ok(ThresholdReport {
        d_list,
        d,
        l_list,
        l,
        t_interval,
        t_not_finite_union,
        t_contains_interval,
        t_cantor,
        sumset: info,
    })
}

struct Check {
    truth: Truth,
    cert: Certificate,
}

fn check_ge(x: Enclosure, t: Enclosure, theorem: &'static str, ineq: &'static str, c: Conclusion) -> Check {
    Check {
        truth: x.ge(&t),
        cert: Certificate {
            theorem,
            inequality: ineq,
            lhs: x,
            rhs: t,
            conclusion: c,
        },
    }
}

fn check_le(x: Enclosure, t: Enclosure, theorem: &'static str, ineq: &'static str, c: Conclusion) -> Check {
    Check {
        truth: x.le(&t),
        cert: Certificate {
            theorem,
            inequality: ineq,
            lhs: x,
            rhs: t,
            conclusion: c,
        },
    }
}

fn note_indeterminate(notes: &mut Vec<String>, checks: &[&Check]) {
    for c in checks {
        if c.truth == Truth::Indeterminate {
            notes.push(format!(
                "indeterminate comparison {} ({}): lhs {} vs rhs {}; conclusion withheld",
                c.cert.inequality, c.cert.theorem, c.cert.lhs, c.cert.rhs
            ));
        }
    }
}

fn scan_note(spec: &SeriesSpec) -> String {
    match kakeya_scan(spec, EVIDENCE_HORIZON) {
        Ok(s) => format!(
            "heuristic term-vs-tail scan over n = 1..{}: {} leq, {} gt, {} indeterminate; pattern {}",
            s.horizon,
            s.leq,
            s.gt,
            s.indeterminate,
            s.pattern.describe()
        ),
        Err(e) => format!("term-vs-tail scan unavailable: {e}"),
    }
}

/// Combines the four threshold checks shared by the sine and
/// multigeometric families into a label.
///
/// `window_id` names the certificate pair when both interval-containment
/// and not-finite-union hold.
fn decide(
    spec: &SeriesSpec,
    interval: Option<&Check>,
    contains: &Check,
    not_finite: &Check,
    cantor: &Check,
    window_id: &'static str,
) -> Classification {
    let mut out = Classification::unknown();
    let mut all: Vec<&Check> = Vec::new();
    if let Some(c) = interval {
        all.push(c);
    }
    all.extend([contains, not_finite, cantor]);
    note_indeterminate(&mut out.notes, &all);

    let a = interval.map_or(Truth::False, |c| c.truth);
    let window = contains.truth.and(not_finite.truth);

    let label = if a.is_true() {
        if window != Truth::False {
            Label::Unknown
        } else {
            Label::Interval
        }
    } else if window.is_true() {
        if a != Truth::False {
            Label::Unknown
        } else {
            Label::Cantorval
        }
    } else if cantor.truth.is_true() {
        Label::CantorSet
    } else if not_finite.truth.is_true() {
        Label::NotFiniteUnion
    } else if contains.truth.is_true() {
        Label::ContainsInterval
    } else {
        Label::Unknown
    };

    if label == Label::Unknown && (a.is_true() || window.is_true()) {
        out.notes.push(String::from(
            "both the interval threshold and the cantorval window could apply; no label emitted",
        ));
    }

    for c in all.iter().filter(|c| c.truth.is_true()) {
        let mut cert = c.cert.clone();
        if label == Label::Cantorval
            && (core::ptr::eq(*c, contains) || core::ptr::eq(*c, not_finite))
        {
            cert.theorem = window_id;
        }
        out.certificates.push(cert);
    }
    if label == Label::Unknown {
        // near-certificates are kept only in the notes
        for cert in out.certificates.drain(..) {
            out.notes.push(format!(
                "near-certificate {} ({}): lhs {} vs rhs {}",
                cert.inequality, cert.theorem, cert.lhs, cert.rhs
            ));
        }
        out.notes.push(scan_note(spec));
    }

    out.label = label;
    if !out.is_consistent() {
        out.label = Label::Unknown;
        out.certificates.clear();
        out.notes
            .push(String::from("conflicting certificates discarded; precision too low"));
    }
    out
}

/// Classifies a sine series from its threshold inequalities.
pub fn classify_sine(spec: &SeriesSpec) -> Result<Classification, Error> {
    let t = sine_thresholds(spec)?;
    let x = spec.ratio().enclosure();
    let interval = check_ge(
        x,
        t.t_interval,
        "sine.interval",
        "x >= d/(K+d)",
        Conclusion::IsInterval,
    );
    let contains = check_ge(
        x,
        t.t_contains_interval,
        "sine.contains_interval",
        "x >= pi/(2*n_star+pi)",
        Conclusion::ContainsInterval,
    );
    let not_finite = check_le(
        x,
        t.t_not_finite_union,
        "sine.not_finite_union",
        "x <= 2*k_m/(K*pi+2*k_m)",
        Conclusion::NotFiniteUnion,
    );
    let cantor = check_le(
        x,
        t.t_cantor,
        "sine.cantor",
        "x <= l/(K+l)",
        Conclusion::CantorSet,
    );
    let mut out = decide(
        spec,
        Some(&interval),
        &contains,
        &not_finite,
        &cantor,
        "sine.cantorval_window",
    );
    if contains.truth.is_true() {
        out.notes.push(format!(
            "(n0, n_star) = ({}, {}) is the maximal run of consecutive subset sums",
            t.sumset.n0, t.sumset.n_star
        ));
    }
    Ok(out)
}

fn param_check(
    q: &Param,
    t: &Rational,
    strict_upper: bool,
    lower: bool,
    theorem: &'static str,
    ineq: &'static str,
    c: Conclusion,
) -> Check {
    let truth = match (lower, strict_upper) {
        (true, _) => q.ge_rational(t),
        (false, true) => q.lt_rational(t),
        (false, false) => q.le_rational(t),
    };
    Check {
        truth,
        cert: Certificate {
            theorem,
            inequality: ineq,
            lhs: q.enclosure(),
            rhs: rational_enclosure(t),
            conclusion: c,
        },
    }
}

/// Classifies a multigeometric series.
pub fn classify_multigeometric(spec: &SeriesSpec) -> Result<Classification, Error> {
    if spec.kind() != SeriesKind::Multigeometric {
        return Err(Error::Domain("expected a multigeometric series"));
    }
    let k = spec.weights();
    check_sorted(k)?;
    let info = weights_sumset(k)?;
    let total = spec.total_weight() as i128;
    let k_m = *k.last().expect("m >= 1") as i128;
    let q = spec.ratio();

    let contains = param_check(
        q,
        &Rational::new(1, info.n_star as i128 + 1),
        false,
        true,
        "mgs.contains_interval",
        "q >= 1/(n_star+1)",
        Conclusion::ContainsInterval,
    );
    let not_finite = param_check(
        q,
        &Rational::new(k_m, total + k_m),
        true,
        false,
        "mgs.not_finite_union",
        "q < k_m/(K+k_m)",
        Conclusion::NotFiniteUnion,
    );
    let cantor = param_check(
        q,
        &Rational::new(1, info.card_sigma as i128),
        true,
        false,
        "mgs.cantor",
        "q < 1/card(Sigma)",
        Conclusion::CantorSet,
    );
    let mut out = decide(spec, None, &contains, &not_finite, &cantor, "mgs.cantorval_window");
    if contains.truth.is_true() {
        out.notes.push(format!(
            "(n0, n_star) = ({}, {}) is the maximal run of consecutive subset sums",
            info.n0, info.n_star
        ));
    }
    Ok(out)
}

/// Weights `(a+2nd, a+(2n-2)d, ..., a+2d, a, d)` of the two-parameter
/// Cantorval family, after checking `n >= 4` and `2nd < a < (2n+2)d`.
pub fn ferdinands_weights(a: u64, d: u64, n: u64) -> Result<Vec<u64>, Error> {
    if n < 4 {
        return Err(Error::Hypothesis(format!("n >= 4 fails for n = {n}")));
    }
    if d == 0 {
        return Err(Error::Hypothesis(String::from("d must be positive")));
    }
    if !(2 * n * d < a) {
        return Err(Error::Hypothesis(format!(
            "2nd < a fails: 2*{n}*{d} = {} is not below a = {a}",
            2 * n * d
        )));
    }
    if !(a < (2 * n + 2) * d) {
        return Err(Error::Hypothesis(format!(
            "a < (2n+2)d fails: a = {a} is not below {}",
            (2 * n + 2) * d
        )));
    }
    let mut w: Vec<u64> = (0..=n).rev().map(|i| a + 2 * i * d).collect();
    w.push(d);
    Ok(w)
}

/// Tests `1/(2n+2) <= q < min(d/a, (a-d)/((n+2)a + (n^2+n)d))`.
pub fn classify_ferdinands_family(a: u64, d: u64, n: u64, q: &Param) -> Result<Classification, Error> {
    let weights = ferdinands_weights(a, d, n)?;
    if !q.in_unit_interval() {
        return Err(Error::Domain("q must lie in (0, 1)"));
    }
    let (ai, di, ni) = (a as i128, d as i128, n as i128);
    let lower = Rational::new(1, 2 * ni + 2);
    let upper = Rational::new(di, ai).min(Rational::new(ai - di, (ni + 2) * ai + (ni * ni + ni) * di));
    let lo = param_check(
        q,
        &lower,
        false,
        true,
        "ferdinands.cantorval_window",
        "q >= 1/(2n+2)",
        Conclusion::ContainsInterval,
    );
    let hi = param_check(
        q,
        &upper,
        true,
        false,
        "ferdinands.cantorval_window",
        "q < min(d/a, (a-d)/((n+2)a+(n^2+n)d))",
        Conclusion::NotFiniteUnion,
    );
    let mut out = Classification::unknown();
    out.notes.push(format!("weights {weights:?}"));
    note_indeterminate(&mut out.notes, &[&lo, &hi]);
    if lo.truth.and(hi.truth).is_true() {
        out.label = Label::Cantorval;
        out.certificates.push(lo.cert);
        out.certificates.push(hi.cert);
    }
    Ok(out)
}

/// Dispatches on the series family. Explicit prefixes have no threshold
/// theorems and always come back `Unknown` with scan evidence.
pub fn classify(spec: &SeriesSpec) -> Result<Classification, Error> {
    match spec.kind() {
        SeriesKind::Sine => classify_sine(spec),
        SeriesKind::Multigeometric => classify_multigeometric(spec),
        SeriesKind::ExplicitPrefix => {
            let mut out = Classification::unknown();
            out.notes.push(scan_note(spec));
            Ok(out)
        }
    }
}

/// Outcome of comparing the `n`-th term with the tail after it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KakeyaOutcome {
    TermLeqTail,
    TermGtTail,
    Indeterminate,
}

impl KakeyaOutcome {
    pub fn as_str(self) -> &'static str {
        match self {
            KakeyaOutcome::TermLeqTail => "TermLeqTail",
            KakeyaOutcome::TermGtTail => "TermGtTail",
            KakeyaOutcome::Indeterminate => "Indeterminate",
        }
    }
}

fn compare_brackets(term: Enclosure, tail: Enclosure) -> KakeyaOutcome {
    if term.hi() <= tail.lo() {
        KakeyaOutcome::TermLeqTail
    } else if term.lo() > tail.hi() {
        KakeyaOutcome::TermGtTail
    } else {
        KakeyaOutcome::Indeterminate
    }
}

/// For a multigeometric series the comparison `a_n <= r_n` reduces to
/// `k_j <= (k_{j+1} + ... + k_m) + K q/(1-q)`, independent of the block.
fn multigeometric_compare(spec: &SeriesSpec, n: u64) -> KakeyaOutcome {
    let k = spec.weights();
    let m = k.len() as u64;
    let j = ((n - 1) % m) as usize;
    let rest: u64 = k[j + 1..].iter().sum();
    let total = spec.total_weight();
    let q = spec.ratio();
    if let Some(r) = q.exact_value() {
        let exact = Rational::one()
            .checked_sub(r)
            .and_then(|den| r.checked_div(&den))
            .and_then(|g| g.checked_mul(&Rational::from_integer(total as i128)))
            .and_then(|g| g.checked_add(&Rational::from_integer(rest as i128)));
        if let Some(rhs) = exact {
            let kj = Rational::from_integer(k[j] as i128);
            return if kj <= rhs {
                KakeyaOutcome::TermLeqTail
            } else {
                KakeyaOutcome::TermGtTail
            };
        }
    }
    let qe = q.enclosure();
    let rhs = qe
        .div(Enclosure::point(1.0).sub(qe))
        .map(|g| g.scale(total).add(Enclosure::from_u64(rest)));
    match rhs {
        Ok(rhs) => compare_brackets(Enclosure::from_u64(k[j]), rhs),
        Err(_) => KakeyaOutcome::Indeterminate,
    }
}

/// Compares `a_n` with `r_n`, `n >= 1`.
pub fn kakeya_compare(spec: &SeriesSpec, n: u64) -> Result<KakeyaOutcome, Error> {
    if n == 0 {
        return Err(Error::Domain("term indices start at 1"));
    }
    if spec.kind() == SeriesKind::Multigeometric {
        return Ok(multigeometric_compare(spec, n));
    }
    Ok(compare_brackets(spec.term(n)?, spec.tail(n)?))
}

/// Eventual behaviour observed over the second half of a scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScanPattern {
    EventuallyLeq,
    EventuallyGt,
    /// `TermGtTail` exactly at the listed 1-based positions within each
    /// block of `period` terms.
    PeriodicMixed { period: usize, gt_positions: Vec<usize> },
    /// Some comparison in the window was undecided.
    Inconclusive,
    Irregular,
}

impl ScanPattern {
    pub fn describe(&self) -> String {
        match self {
            ScanPattern::EventuallyLeq => String::from("eventually-all-leq (interval evidence)"),
            ScanPattern::EventuallyGt => String::from("eventually-all-gt (cantor evidence)"),
            ScanPattern::PeriodicMixed {
                period,
                gt_positions,
            } => format!("periodic-mixed: gt at positions {gt_positions:?} mod {period}"),
            ScanPattern::Inconclusive => String::from("inconclusive"),
            ScanPattern::Irregular => String::from("irregular"),
        }
    }
}

/// Heuristic summary of `kakeya_compare` over `n = 1..=horizon`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanSummary {
    pub horizon: u64,
    pub leq: usize,
    pub gt: usize,
    pub indeterminate: usize,
    pub outcomes: Vec<KakeyaOutcome>,
    pub pattern: ScanPattern,
}

pub fn kakeya_scan(spec: &SeriesSpec, horizon: u64) -> Result<ScanSummary, Error> {
    if horizon == 0 {
        return Err(Error::Domain("scan horizon must be at least 1"));
    }
    let outcomes: Vec<KakeyaOutcome> = if spec.kind() == SeriesKind::Multigeometric {
        (1..=horizon).map(|n| multigeometric_compare(spec, n)).collect()
    } else {
        let tails = spec.tails(horizon)?;
        (1..=horizon)
            .map(|n| Ok(compare_brackets(spec.term(n)?, tails[n as usize])))
            .collect::<Result<_, Error>>()?
    };
    let count = |o: KakeyaOutcome| outcomes.iter().filter(|&&x| x == o).count();
    let pattern = eventual_pattern(spec, &outcomes);
    Ok(ScanSummary {
        horizon,
        leq: count(KakeyaOutcome::TermLeqTail),
        gt: count(KakeyaOutcome::TermGtTail),
        indeterminate: count(KakeyaOutcome::Indeterminate),
        outcomes,
        pattern,
    })
}

fn eventual_pattern(spec: &SeriesSpec, outcomes: &[KakeyaOutcome]) -> ScanPattern {
    let horizon = outcomes.len();
    let start = horizon / 2 + 1;
    let window = &outcomes[start - 1..];
    if window.contains(&KakeyaOutcome::Indeterminate) {
        return ScanPattern::Inconclusive;
    }
    if window.iter().all(|&o| o == KakeyaOutcome::TermLeqTail) {
        return ScanPattern::EventuallyLeq;
    }
    if window.iter().all(|&o| o == KakeyaOutcome::TermGtTail) {
        return ScanPattern::EventuallyGt;
    }
    let m = spec.block_len();
    let head = spec.head_len();
    if m < 2 || start <= head {
        return ScanPattern::Irregular;
    }
    let position = |n: usize| (n - head - 1) % m + 1;
    let mut class: Vec<Option<KakeyaOutcome>> = alloc::vec![None; m + 1];
    for (i, &o) in window.iter().enumerate() {
        let pos = position(start + i);
        match class[pos] {
            None => class[pos] = Some(o),
            Some(prev) if prev != o => return ScanPattern::Irregular,
            _ => {}
        }
    }
    let gt_positions = (1..=m)
        .filter(|&p| class[p] == Some(KakeyaOutcome::TermGtTail))
        .collect();
    ScanPattern::PeriodicMixed {
        period: m,
        gt_positions,
    }
}

//! Subset sums of a weight vector.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;

/// Largest weight vector enumerated exhaustively by [`sumset`].
pub const MAX_EXHAUSTIVE_WEIGHTS: usize = 24;

/// Largest weight vector accepted by [`sumset_meet_in_middle`].
pub const MAX_SPLIT_WEIGHTS: usize = 48;

/// The set `Σ` of all subset sums of `k` and its longest run of
/// consecutive positive integers `n0, n0 + 1, ..., n0 + n_star`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumsetInfo {
    pub sigma: Vec<u64>,
    pub card_sigma: usize,
    pub n0: u64,
    pub n_star: u64,
}

impl SumsetInfo {
    fn from_sorted(sigma: Vec<u64>) -> SumsetInfo {
        let (n0, n_star) = longest_positive_run(&sigma);
        SumsetInfo {
            card_sigma: sigma.len(),
            sigma,
            n0,
            n_star,
        }
    }

    pub fn contains(&self, v: u64) -> bool {
        self.sigma.binary_search(&v).is_ok()
    }
}

/// Longest run of consecutive positive integers in a sorted, deduplicated
/// list, as `(start, length - 1)`. Ties go to the smallest start.
fn longest_positive_run(sorted: &[u64]) -> (u64, u64) {
    let mut best = (0u64, 0u64);
    let mut best_len = 0u64;
    let mut i = 0;
    while i < sorted.len() {
        if sorted[i] == 0 {
            i += 1;
            continue;
        }
        let start = sorted[i];
        let mut j = i;
        while j + 1 < sorted.len() && sorted[j + 1] == sorted[j] + 1 {
            j += 1;
        }
        let len = (j - i + 1) as u64;
        if len > best_len {
            best_len = len;
            best = (start, len - 1);
        }
        i = j + 1;
    }
    best
}

fn subset_sums(k: &[u64]) -> Vec<u64> {
    let mut sums = Vec::with_capacity(1usize << k.len());
    sums.push(0u64);
    for &w in k {
        let len = sums.len();
        for i in 0..len {
            sums.push(sums[i] + w);
        }
    }
    sums.sort_unstable();
    sums.dedup();
    sums
}

fn check(k: &[u64]) -> Result<(), Error> {
    if k.is_empty() {
        return Err(Error::Domain("weight vector must be nonempty"));
    }
    if k.contains(&0) {
        return Err(Error::Domain("weights must be positive integers"));
    }
    Ok(())
}

/// Exact `Σ` by enumerating all `2^m` subsets.
pub fn sumset(k: &[u64]) -> Result<SumsetInfo, Error> {
    check(k)?;
    if k.len() > MAX_EXHAUSTIVE_WEIGHTS {
        return Err(Error::SumsetGuard {
            m: k.len(),
            max: MAX_EXHAUSTIVE_WEIGHTS,
        });
    }
    Ok(SumsetInfo::from_sorted(subset_sums(k)))
}

/// Exact `Σ` from the sums of two halves of `k`, deduplicated before
/// they are combined.
pub fn sumset_meet_in_middle(k: &[u64]) -> Result<SumsetInfo, Error> {
    check(k)?;
    if k.len() > MAX_SPLIT_WEIGHTS {
        return Err(Error::SumsetGuard {
            m: k.len(),
            max: MAX_SPLIT_WEIGHTS,
        });
    }
    let (left, right) = k.split_at(k.len() / 2);
    let a = subset_sums(left);
    let b = subset_sums(right);
    let total: u64 = k.iter().sum();
    let sigma = if total < (1 << 26) {
        let mut seen = vec![false; total as usize + 1];
        for &x in &a {
            for &y in &b {
                seen[(x + y) as usize] = true;
            }
        }
        seen.iter()
            .enumerate()
            .filter_map(|(v, &s)| s.then_some(v as u64))
            .collect()
    } else {
        let mut all: Vec<u64> = a.iter().flat_map(|&x| b.iter().map(move |&y| x + y)).collect();
        all.sort_unstable();
        all.dedup();
        all
    };
    Ok(SumsetInfo::from_sorted(sigma))
}

/// Subset sums of the first `r` weights; the truncated `Σ` for a partial
/// final block.
pub(crate) fn prefix_sumset(k: &[u64], r: usize) -> Vec<u64> {
    subset_sums(&k[..r])
}

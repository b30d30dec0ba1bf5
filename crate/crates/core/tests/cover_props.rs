use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subsums_core::cover::enumerate_sums_naive;
use subsums_core::{enumerate_sums, gaps_of, outer_cover, Error, Param, SeriesSpec};

fn sine(k: &[u32], num: i128, den: i128) -> SeriesSpec {
    SeriesSpec::sine(k.to_vec(), Param::ratio(num, den)).unwrap()
}

fn mgs(k: &[u32], num: i128, den: i128) -> SeriesSpec {
    SeriesSpec::multigeometric(k.to_vec(), Param::ratio(num, den)).unwrap()
}

fn fixtures() -> Vec<SeriesSpec> {
    vec![
        sine(&[2, 1], 1, 2),
        sine(&[8, 7, 6, 5, 4], 1, 15),
        sine(&[4, 1], 1, 10),
        mgs(&[3, 2], 1, 4),
        mgs(&[3, 2], 1, 10),
    ]
}

fn random_specs(count: usize) -> Vec<SeriesSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..count)
        .map(|i| {
            let m = rng.gen_range(1..=5);
            let mut k: Vec<u32> = (0..m).map(|_| rng.gen_range(1..=12)).collect();
            k.sort_unstable_by(|a, b| b.cmp(a));
            let num = rng.gen_range(5..=60);
            if i % 2 == 0 {
                sine(&k, num, 100)
            } else {
                mgs(&k, num, 100)
            }
        })
        .collect()
}

fn assert_nested_with_persistent_gaps(s: &SeriesSpec, max_depth: usize) {
    let mut prev = outer_cover(s, 0).unwrap();
    for depth in 1..=max_depth {
        let next = outer_cover(s, depth).unwrap();
        assert!(next.cover.is_subset_of(&prev.cover), "{s:?} depth {depth}");
        for g in &prev.gaps {
            assert!(
                next.gaps.iter().any(|h| h.lo <= g.lo && g.hi <= h.hi),
                "{s:?} depth {depth}: gap {g:?} lost"
            );
        }
        assert!(next.cover.total_length() <= prev.cover.total_length());
        prev = next;
    }
}

#[test]
fn blockwise_matches_naive() {
    for s in random_specs(20) {
        for depth in [0, 1, 3, 7, 11, 16] {
            let fast = enumerate_sums(&s, depth).unwrap();
            let slow = enumerate_sums_naive(&s, depth).unwrap();
            assert_eq!(fast.values.len(), slow.values.len(), "{s:?} depth {depth}");
            let tol = fast.tolerance + fast.error_bound + slow.error_bound;
            for (a, b) in fast.values.iter().zip(&slow.values) {
                assert!((a - b).abs() <= tol, "{s:?} depth {depth}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn nesting_and_gap_persistence() {
    for s in fixtures().iter().chain(&random_specs(20)) {
        assert_nested_with_persistent_gaps(s, 16);
    }
}

#[test]
fn covers_contain_both_ends() {
    for s in fixtures().iter().chain(&random_specs(20)) {
        let total = s.tail(0).unwrap().mid();
        for depth in [0, 1, 5, 12] {
            let c = outer_cover(s, depth).unwrap();
            let iv = c.cover.intervals();
            assert!(iv[0].lo <= 0.0 && 0.0 <= iv[0].hi);
            let last = iv.last().unwrap();
            assert!(last.lo <= total && total <= last.hi, "{s:?} depth {depth}");
            for i in iv {
                assert!(i.width() >= c.tail_hi);
            }
            assert!(c.cover.total_length() <= c.span);
            assert_eq!(c.gaps, gaps_of(&c));
        }
    }
}

#[test]
fn sorted_and_disjoint() {
    for s in random_specs(10) {
        let c = outer_cover(&s, 12).unwrap();
        for w in c.cover.intervals().windows(2) {
            assert!(w[0].lo <= w[0].hi && w[0].hi < w[1].lo);
        }
    }
}

#[test]
fn interval_spec_is_one_interval() {
    let s = sine(&[2, 1], 1, 2);
    for depth in [1, 4, 9, 16, 20] {
        let c = outer_cover(&s, depth).unwrap();
        assert_eq!(c.cover.len(), 1, "depth {depth}");
        assert!(c.gaps.is_empty());
    }
}

#[test]
fn cantor_spec_never_merges() {
    let s = sine(&[4, 1], 1, 10);
    let sums = enumerate_sums(&s, 16).unwrap();
    assert_eq!(sums.values.len(), 65536);
    assert_eq!(enumerate_sums_naive(&s, 16).unwrap().values.len(), 65536);
    let c = outer_cover(&s, 8).unwrap();
    assert_eq!(c.cover.len(), 256);
    assert_eq!(c.gaps.len(), 255);
}

#[test]
fn depth_zero_is_origin() {
    for s in fixtures() {
        assert_eq!(enumerate_sums(&s, 0).unwrap().values, vec![0.0]);
    }
}

#[test]
fn guards() {
    let s = sine(&[1], 1, 2);
    assert!(matches!(enumerate_sums_naive(&s, 31), Err(Error::DepthGuard { .. })));
    assert!(matches!(outer_cover(&s, 65), Err(Error::DepthGuard { .. })));
    assert!(matches!(enumerate_sums_naive(&s, 27), Err(Error::MemoryGuard { .. })));
    // 2^20 distinct sums per block, so the second block is past the budget
    let k: Vec<u32> = (0..20).rev().map(|i| 1 << i).collect();
    let s = sine(&k, 1, 2);
    assert!(matches!(outer_cover(&s, 40), Err(Error::MemoryGuard { .. })));
}

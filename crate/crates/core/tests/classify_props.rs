use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subsums_core::classify::sine_thresholds;
use subsums_core::{
    classify_ferdinands_family, classify_multigeometric, classify_sine, kakeya_compare, kakeya_scan,
    sumset, sumset_meet_in_middle, Enclosure, KakeyaOutcome, Label, Param, ScanPattern, SeriesSpec,
};

fn sine(k: &[u32], num: i128, den: i128) -> SeriesSpec {
    SeriesSpec::sine(k.to_vec(), Param::ratio(num, den)).unwrap()
}

fn mgs(k: &[u32], num: i128, den: i128) -> SeriesSpec {
    SeriesSpec::multigeometric(k.to_vec(), Param::ratio(num, den)).unwrap()
}

/// Independent subset-sum oracle: walk every bitmask.
fn naive_sums(k: &[u64]) -> Vec<u64> {
    let m = k.len();
    let mut out: Vec<u64> = (0u32..1 << m)
        .map(|mask| (0..m).filter(|i| mask >> i & 1 == 1).map(|i| k[i]).sum())
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Longest run of consecutive positive integers, scanning every start.
fn naive_run(sums: &[u64]) -> (u64, u64) {
    let set: std::collections::BTreeSet<u64> = sums.iter().copied().collect();
    let mut best = (0, 0);
    let mut best_len = 0;
    for &s in sums.iter().filter(|&&s| s > 0) {
        let mut len = 0;
        while set.contains(&(s + len)) {
            len += 1;
        }
        if len > best_len {
            best_len = len;
            best = (s, len - 1);
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sumset_matches_oracle(k in prop::collection::vec(1u64..60, 1..12)) {
        let info = sumset(&k).unwrap();
        let sums = naive_sums(&k);
        prop_assert_eq!(&info.sigma, &sums);
        prop_assert_eq!(info.card_sigma, sums.len());
        prop_assert_eq!((info.n0, info.n_star), naive_run(&sums));
        prop_assert!(info.contains(0) && info.contains(k.iter().sum()));
        prop_assert!(info.card_sigma <= 1 << k.len());
        prop_assert!(info.n0 >= 1);
        prop_assert_eq!(sumset_meet_in_middle(&k).unwrap(), info);
    }

    #[test]
    fn classification_is_consistent(
        k in prop::collection::vec(1u32..50, 1..8),
        num in 1i128..1000,
    ) {
        let mut k = k;
        k.sort_unstable_by(|a, b| b.cmp(a));
        let c = classify_sine(&sine(&k, num, 1000)).unwrap();
        prop_assert!(c.is_consistent());
        let has = |t: &str| c.certificates.iter().any(|x| x.theorem == t);
        prop_assert!(!(has("sine.interval") && has("sine.cantor")));
        let c = classify_multigeometric(&mgs(&k, num, 1000)).unwrap();
        prop_assert!(c.is_consistent());
    }
}

fn random_sorted(rng: &mut ChaCha8Rng) -> Vec<u32> {
    let m = rng.gen_range(1..=8);
    let mut k: Vec<u32> = (0..m).map(|_| rng.gen_range(1..=50)).collect();
    k.sort_unstable_by(|a, b| b.cmp(a));
    k
}

#[test]
fn threshold_ordering() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut strict = 0;
    for _ in 0..1000 {
        let k = random_sorted(&mut rng);
        let t = sine_thresholds(&sine(&k, 1, 2)).unwrap();
        // l <= l_m always, and the map l -> l/(K+l) is increasing
        assert!(t.t_cantor.lo() <= t.t_not_finite_union.hi(), "{k:?}");
        let l_m = *t.l_list.last().unwrap();
        if t.l.hi() < l_m.lo() {
            assert!(t.t_cantor.hi() < t.t_not_finite_union.lo(), "{k:?}");
            strict += 1;
        } else {
            // the minimum sits at j = m, and both thresholds are 2k_m/(Kπ+2k_m)
            assert!(t.t_cantor.width() < 1e-14 && t.t_not_finite_union.width() < 1e-14);
        }
    }
    assert!(strict > 0);
}

#[test]
fn threshold_definitions() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pi = std::f64::consts::PI;
    for _ in 0..200 {
        let k = random_sorted(&mut rng);
        let t = sine_thresholds(&sine(&k, 1, 3)).unwrap();
        let big_k: u32 = k.iter().sum();
        for j in 0..k.len() {
            let rest: u32 = k[j + 1..].iter().sum();
            let d = pi / 2.0 * k[j] as f64 - rest as f64;
            let l = 2.0 / pi * k[j] as f64 - rest as f64;
            assert!((t.d_list[j].mid() - d).abs() <= 1e-12 * big_k as f64);
            assert!((t.l_list[j].mid() - l).abs() <= 1e-12 * big_k as f64);
        }
    }
}

/// Weights with `k_j > (π/2)(k_{j+1} + ... + k_m)`, so that `l > 0`.
fn cantor_capable(rng: &mut ChaCha8Rng) -> Vec<u32> {
    let m = rng.gen_range(1..=5);
    let mut k = vec![rng.gen_range(1..=5u32)];
    for _ in 1..m {
        let rest: u32 = k.iter().sum();
        let floor = (std::f64::consts::FRAC_PI_2 * rest as f64).ceil() as u32;
        k.push(floor + rng.gen_range(0..=5));
    }
    k.reverse();
    k
}

/// Longest horizon up to 10^3 whose blocks stay in range.
fn scan_longest(s: &SeriesSpec) -> subsums_core::ScanSummary {
    [1000, 500, 200, 100, 50]
        .into_iter()
        .find_map(|h| kakeya_scan(s, h).ok())
        .expect("horizon 50 in range")
}

#[test]
fn interval_and_cantor_scans() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let (mut intervals, mut cantors) = (0, 0);
    for i in 0..400 {
        let k = if i % 2 == 0 {
            random_sorted(&mut rng)
        } else {
            cantor_capable(&mut rng)
        };
        let t = sine_thresholds(&sine(&k, 1, 2)).unwrap();
        for (lo, hi) in [(t.t_interval.hi(), 0.999), (0.01, t.t_cantor.lo())] {
            if !(lo < hi) {
                continue;
            }
            let x = rng.gen_range(lo..hi);
            let s = SeriesSpec::sine(k.clone(), Param::approx(Enclosure::point(x))).unwrap();
            let c = classify_sine(&s).unwrap();
            match c.label {
                Label::Interval => {
                    let scan = kakeya_scan(&s, 1000).unwrap();
                    assert_eq!(scan.gt, 0, "{k:?} x = {x}");
                    intervals += 1;
                }
                Label::CantorSet => {
                    let scan = scan_longest(&s);
                    assert_eq!(scan.leq, 0, "{k:?} x = {x}");
                    cantors += 1;
                }
                _ => {}
            }
        }
    }
    assert!(intervals > 50 && cantors > 50, "{intervals} {cantors}");
}

#[test]
fn interval_is_monotone_in_x() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let k = random_sorted(&mut rng);
        let labels: Vec<Label> = (1..100)
            .map(|i| classify_sine(&sine(&k, i, 100)).unwrap().label)
            .collect();
        if let Some(first) = labels.iter().position(|&l| l == Label::Interval) {
            assert!(labels[first..].iter().all(|&l| l == Label::Interval), "{k:?}");
        }
    }
}

#[test]
fn sine_examples() {
    let c = classify_sine(&sine(&[2, 1], 1, 2)).unwrap();
    assert_eq!(c.label, Label::Interval);
    let cert = &c.certificates[0];
    let pi = std::f64::consts::PI;
    assert!(cert.rhs.contains((pi - 1.0) / (pi + 2.0)) || (cert.rhs.mid() - (pi - 1.0) / (pi + 2.0)).abs() < 1e-15);

    let c = classify_sine(&sine(&[8, 7, 6, 5, 4], 1, 15)).unwrap();
    assert_eq!(c.label, Label::Cantorval);
    let lower = pi / (44.0 + pi);
    let upper = 8.0 / (30.0 * pi + 8.0);
    let rhs: Vec<f64> = c.certificates.iter().map(|x| x.rhs.mid()).collect();
    assert!(rhs.iter().any(|v| (v - lower).abs() < 1e-14));
    assert!(rhs.iter().any(|v| (v - upper).abs() < 1e-14));

    let c = classify_sine(&sine(&[4, 1], 1, 10)).unwrap();
    assert_eq!(c.label, Label::CantorSet);
}

#[test]
fn multigeometric_examples() {
    let c = classify_multigeometric(&mgs(&[3, 2], 1, 4)).unwrap();
    assert_eq!(c.label, Label::NotFiniteUnion);
    let c = classify_multigeometric(&mgs(&[3, 2], 1, 10)).unwrap();
    assert_eq!(c.label, Label::CantorSet);
    let c = classify_multigeometric(&mgs(&[1], 1, 2)).unwrap();
    assert_eq!(c.label, Label::Unknown);
    assert!(c.notes.iter().any(|n| n.contains("64") && n.contains("leq")), "{:?}", c.notes);
}

#[test]
fn ferdinands_examples() {
    let c = classify_ferdinands_family(9, 1, 4, &Param::ratio(1, 10)).unwrap();
    assert_eq!(c.label, Label::Cantorval);
    let c = classify_ferdinands_family(9, 1, 4, &Param::ratio(1, 8)).unwrap();
    assert_eq!(c.label, Label::Unknown);
    assert!(classify_ferdinands_family(8, 1, 4, &Param::ratio(1, 10)).is_err());
}

#[test]
fn kakeya_examples() {
    let gn = mgs(&[3, 2], 1, 4);
    assert_eq!(kakeya_compare(&gn, 1).unwrap(), KakeyaOutcome::TermLeqTail);
    assert_eq!(kakeya_compare(&gn, 2).unwrap(), KakeyaOutcome::TermGtTail);
    let scan = kakeya_scan(&gn, 20).unwrap();
    for (i, o) in scan.outcomes.iter().enumerate() {
        let want = if i % 2 == 0 {
            KakeyaOutcome::TermLeqTail
        } else {
            KakeyaOutcome::TermGtTail
        };
        assert_eq!(*o, want);
    }
    assert!(matches!(scan.pattern, ScanPattern::PeriodicMixed { period: 2, .. }));

    let scan = kakeya_scan(&sine(&[2, 1], 1, 2), 50).unwrap();
    assert_eq!(scan.leq, 50);
    assert_eq!(scan.pattern, ScanPattern::EventuallyLeq);
    let scan = kakeya_scan(&sine(&[4, 1], 1, 10), 50).unwrap();
    assert_eq!(scan.gt, 50);
    assert_eq!(scan.pattern, ScanPattern::EventuallyGt);
}

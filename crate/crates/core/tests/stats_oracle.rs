use finstudio_core::stats::{summarize, CodedResponses, SurveySummary};
use proptest::prelude::*;

/// Expands the tallies and computes everything the obvious way.
fn brute_force(pairs: &[(u32, u64)]) -> [f64; 5] {
    let mut xs: Vec<f64> = pairs
        .iter()
        .flat_map(|&(code, count)| std::iter::repeat_n(code as f64, count as usize))
        .collect();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len();
    let median = if n % 2 == 1 { xs[n / 2] } else { (xs[n / 2 - 1] + xs[n / 2]) / 2.0 };
    let mean = xs.iter().sum::<f64>() / n as f64;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n as f64;
    [xs[0], xs[n - 1], median, mean, var.sqrt()]
}

fn as_array(s: SurveySummary) -> [f64; 5] {
    [s.minimum, s.maximum, s.median, s.mean, s.std_dev]
}

fn tallies() -> impl Strategy<Value = Vec<(u32, u64)>> {
    prop::collection::vec((1u32..8, 0u64..40), 1..6)
        .prop_filter("non-empty", |v| v.iter().map(|p| p.1).sum::<u64>() > 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn agrees_with_brute_force(pairs in tallies()) {
        let got = as_array(summarize(&CodedResponses::from_pairs(pairs.clone())).unwrap());
        let want = brute_force(&pairs);
        for (g, w) in got.iter().zip(want) {
            prop_assert!((g - w).abs() < 1e-9, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn ordered_and_non_negative(pairs in tallies()) {
        let s = summarize(&CodedResponses::from_pairs(pairs)).unwrap();
        prop_assert!(s.minimum <= s.median && s.median <= s.maximum);
        prop_assert!(s.minimum <= s.mean + 1e-12 && s.mean <= s.maximum + 1e-12);
        prop_assert!(s.std_dev >= 0.0);
    }

    #[test]
    fn zero_spread_iff_single_code(pairs in tallies()) {
        let s = summarize(&CodedResponses::from_pairs(pairs.clone())).unwrap();
        let mut codes: Vec<u32> = pairs.iter().filter(|p| p.1 > 0).map(|p| p.0).collect();
        codes.sort();
        codes.dedup();
        prop_assert_eq!(s.std_dev < 1e-12, codes.len() == 1);
    }

    #[test]
    fn split_and_shuffle_invariant(pairs in tallies(), split in 0u64..40, seed in any::<u64>()) {
        let base = summarize(&CodedResponses::from_pairs(pairs.clone())).unwrap();
        let mut pieces = Vec::new();
        for (code, count) in pairs {
            let cut = split.min(count);
            pieces.push((code, cut));
            pieces.push((code, count - cut));
        }
        let k = (seed as usize) % pieces.len();
        pieces.rotate_left(k);
        pieces.reverse();
        prop_assert_eq!(summarize(&CodedResponses::from_pairs(pieces)).unwrap(), base);
    }

    #[test]
    fn shifting_codes(pairs in tallies(), c in 1u32..50) {
        let a = summarize(&CodedResponses::from_pairs(pairs.clone())).unwrap();
        let b = summarize(&CodedResponses::from_pairs(pairs.iter().map(|&(x, n)| (x + c, n)))).unwrap();
        let c = c as f64;
        prop_assert!((b.minimum - a.minimum - c).abs() < 1e-9);
        prop_assert!((b.maximum - a.maximum - c).abs() < 1e-9);
        prop_assert!((b.median - a.median - c).abs() < 1e-9);
        prop_assert!((b.mean - a.mean - c).abs() < 1e-9);
        prop_assert!((b.std_dev - a.std_dev).abs() < 1e-9);
    }
}

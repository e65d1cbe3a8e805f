use num_rational::Ratio;
use proptest::prelude::*;

use rudin_shapiro::autocorr::aperiodic_table_fast;
use rudin_shapiro::seq::rs_sequence;
use rudin_shapiro::stats::{
    conjecture_table, ell_hits, max_shift, merit_factor, merit_factor_exact, merit_factor_l4, merit_series,
    sum_squares_ratio_exact, Criterion,
};

fn direct_sidelobes(m: u32) -> i128 {
    let s: Vec<i128> = rs_sequence(m).unwrap().terms().iter().map(|&t| t as i128).collect();
    (1..s.len()).map(|k| (0..s.len() - k).map(|i| s[i] * s[i + k]).sum::<i128>()).map(|c| c * c).sum()
}

#[test]
fn merit_factor_from_direct_sums() {
    for m in 1..=10 {
        let n = 1i128 << m;
        assert_eq!(merit_factor_exact(m).unwrap(), Ratio::new(n * n, 2 * direct_sidelobes(m)), "m={m}");
    }
}

#[test]
fn ratio_times_merit_is_three() {
    for r in merit_series(20).unwrap() {
        assert!(r.product_is_three, "m={}", r.m);
    }
    for m in 1..=20 {
        assert_eq!(
            merit_factor_exact(m).unwrap() * sum_squares_ratio_exact(m).unwrap(),
            Ratio::from_integer(3)
        );
    }
}

#[test]
fn merit_approaches_three() {
    let gaps: Vec<f64> = (8..=20).map(|m| (merit_factor(m).unwrap() - 3.0).abs()).collect();
    assert!(gaps.iter().all(|g| *g < 0.5));
    assert!(gaps.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn quadrature_agrees_with_exact_merit() {
    for m in 1..=10 {
        let exact = merit_factor(m).unwrap();
        let q: f64 = merit_factor_l4(m, 1 << (m + 3)).unwrap();
        assert!((q - exact).abs() <= 1e-6 * exact, "m={m}");
    }
}

#[test]
fn maximizers_are_unique_through_sixteen() {
    let rows = conjecture_table(16, Criterion::Absolute).unwrap();
    assert_eq!(rows.len(), 14);
    assert!(rows.iter().all(|r| r.unique));
    assert_eq!(ell_hits(&rows), vec![4, 6, 11, 16]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn maximizer_matches_a_linear_scan(m in 1u32..=14, signed in any::<bool>()) {
        let criterion = if signed { Criterion::Signed } else { Criterion::Absolute };
        let t = aperiodic_table_fast(m).unwrap();
        let score = |v: i64| if signed { v } else { v.abs() };
        let best = (1..t.seq_len()).map(|k| score(t.get(k))).max().unwrap();
        let first = (1..t.seq_len()).find(|&k| score(t.get(k)) == best).unwrap();
        let count = (1..t.seq_len()).filter(|&k| score(t.get(k)) == best).count();
        let r = max_shift(m, criterion).unwrap();
        prop_assert_eq!(r.k_star, first as u64);
        prop_assert_eq!(r.unique, count == 1);
        prop_assert_eq!(r.k_star % 2, 1);
    }
}

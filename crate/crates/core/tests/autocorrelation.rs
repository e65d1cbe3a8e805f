use proptest::prelude::*;

use rudin_shapiro::autocorr::{
    aperiodic_table_fast, periodic_from_aperiodic, periodic_from_pair_sum, periodic_table, verify_even_zero,
    AperiodicLadder, CorrKind, Method,
};
use rudin_shapiro::seq::{generalized_sequence, rs_sequence, rudin_shapiro_pattern};

/// Golay-Shapiro pair by concatenation: `P' = P Q`, `Q' = P (-Q)`.
fn concat_pair(m: u32) -> Vec<i64> {
    let (mut p, mut q) = (vec![1i64], vec![1i64]);
    for _ in 0..m {
        let np: Vec<i64> = p.iter().chain(&q).copied().collect();
        let nq: Vec<i64> = p.iter().copied().chain(q.iter().map(|x| -x)).collect();
        p = np;
        q = nq;
    }
    p
}

fn aperiodic(s: &[i64], k: usize) -> i64 {
    (0..s.len().saturating_sub(k)).map(|i| s[i] * s[i + k]).sum()
}

fn periodic(s: &[i64], k: usize) -> i64 {
    let n = s.len();
    (0..n).map(|i| s[i] * s[(i + k) % n]).sum()
}

/// Index form of the generalized recursion: `a(2^i + j) = (-1)^{j + f(i)} a(2^i - j - 1)`.
fn generalized_term(f: &[bool], n: usize) -> i64 {
    if n == 0 {
        return 1;
    }
    let i = usize::BITS - 1 - n.leading_zeros();
    let j = n - (1 << i);
    let sign = if (j % 2 == 1) ^ f[i as usize] { -1 } else { 1 };
    sign * generalized_term(f, (1 << i) - j - 1)
}

#[test]
fn sequences_match_the_concatenation_construction() {
    for m in 0..=12 {
        let want = concat_pair(m);
        let got: Vec<i64> = rs_sequence(m).unwrap().terms().iter().map(|&t| t as i64).collect();
        assert_eq!(got, want, "m={m}");
    }
}

#[test]
fn fast_tables_match_direct_sums_through_twelve() {
    let ladder: Vec<_> = AperiodicLadder::new().take(13).collect();
    for (m, c) in ladder.iter().enumerate() {
        let s = concat_pair(m as u32);
        let n = s.len();
        let aper: Vec<i64> = (0..=n).map(|k| aperiodic(&s, k)).collect();
        assert_eq!(c.values(), &aper[..], "aperiodic m={m}");
        let per: Vec<i64> = (0..n).map(|k| periodic(&s, k)).collect();
        assert_eq!(periodic_table(m as u32).unwrap().values(), &per[..], "periodic m={m}");
        assert_eq!(periodic_from_pair_sum(c).values(), &per[..], "pair sum m={m}");
    }
}

#[test]
fn structural_periodic_formula_matches_direct_sums() {
    let ladder: Vec<_> = AperiodicLadder::new().take(13).collect();
    for m in 3..=12u32 {
        let s = concat_pair(m);
        let p = periodic_from_aperiodic(m, &ladder[m as usize - 2]);
        assert_eq!(p.kind(), CorrKind::Periodic);
        for k in 0..s.len() {
            assert_eq!(p.get(k), periodic(&s, k), "m={m} k={k}");
        }
    }
}

#[test]
fn even_shifts_vanish_through_fourteen() {
    let fast = verify_even_zero(14, Method::Fast).unwrap();
    assert!(fast.passed(), "{:?}", fast.violations.first());
    let naive = verify_even_zero(10, Method::Naive).unwrap();
    assert!(naive.passed());
    assert_eq!(naive.shifts_checked, verify_even_zero(10, Method::Fast).unwrap().shifts_checked);
}

#[test]
fn generalized_family_matches_index_recursion() {
    for m in 0..=9u32 {
        for bits in 0..1u32 << m {
            let f: Vec<bool> = (0..m).map(|i| bits >> i & 1 == 1).collect();
            let got = generalized_sequence(m, &f).unwrap();
            for (n, &t) in got.terms().iter().enumerate() {
                assert_eq!(t as i64, generalized_term(&f, n), "m={m} f={f:?} n={n}");
            }
        }
    }
    for m in 0..=12 {
        assert_eq!(generalized_sequence(m, &rudin_shapiro_pattern(m)).unwrap(), rs_sequence(m).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn peak_and_shift_symmetry(m in 0u32..=14) {
        let c = aperiodic_table_fast(m).unwrap();
        let n = c.seq_len();
        prop_assert_eq!(c.get(0), n as i64);
        prop_assert_eq!(c.get(n), 0);
        let p = periodic_table(m).unwrap();
        prop_assert_eq!(p.get(0), n as i64);
        for k in 1..n {
            prop_assert_eq!(p.get(k), p.get(n - k));
            prop_assert_eq!(p.get(k), c.get(k) + c.get(n - k));
        }
    }

    #[test]
    fn sidelobe_energy_matches_direct_sums(m in 0u32..=12) {
        let c = aperiodic_table_fast(m).unwrap();
        let s = concat_pair(m);
        let direct: i128 = (1..=s.len()).map(|k| aperiodic(&s, k) as i128).map(|v| v * v).sum();
        prop_assert_eq!(c.sidelobe_energy(), direct);
    }

    #[test]
    fn sampled_shifts_match_direct_sums(m in 13u32..=15, k in 0usize..1 << 15) {
        let c = aperiodic_table_fast(m).unwrap();
        let s = concat_pair(m);
        let k = k % (s.len() + 1);
        prop_assert_eq!(c.get(k), aperiodic(&s, k));
    }
}

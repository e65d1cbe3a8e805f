use proptest::prelude::*;

use rudin_shapiro::autocorr::AperiodicLadder;
use rudin_shapiro::linalg::Vec3;
use rudin_shapiro::matrec::{
    interval_label, nearest_third, normal_form, shift_chain, v_direct, v_product, Interval, Letter, A, B, M,
    SEED,
};
use rudin_shapiro::specbounds::{lower_bound_asymptotics, lower_bound_value};
use rudin_shapiro::IntMat3;

fn tables(m_max: u32) -> Vec<std::sync::Arc<rudin_shapiro::autocorr::AutocorrTable>> {
    AperiodicLadder::new().take(m_max as usize + 1).collect()
}

#[test]
fn product_and_normal_form_reproduce_every_odd_shift() {
    let t = tables(12);
    let mut cases = 0;
    for m in 3..=12u32 {
        for k in (1..1u64 << m).step_by(2) {
            let direct = v_direct(&t[m as usize], &t[m as usize - 1], k).unwrap();
            assert_eq!(v_product(m, k).unwrap(), direct, "product m={m} k={k}");
            let nf = normal_form(m, k).unwrap();
            assert_eq!(nf.word.len(), m as usize - 2);
            let word = nf.word.iter().fold(IntMat3::identity(), |acc, l| acc * l.matrix());
            assert_eq!(A.pow(nf.delta as u32) * word * SEED, direct, "normal form m={m} k={k}");
            assert!(direct.iter().all(|x| x.unsigned_abs() <= 1 << m));
            cases += 1;
        }
    }
    assert_eq!(cases, (3..=12).map(|m| 1 << (m - 1)).sum::<usize>());
}

#[test]
fn chains_obey_the_adjacency_law_and_reflection_rule() {
    for m in 3..=14u32 {
        for k in (1..1u64 << m).step_by(2) {
            let chain = shift_chain(k, m).unwrap();
            assert!(chain.adjacency_ok(), "m={m} k={k}");
            assert_eq!(chain.links.len(), m as usize - 2);
            for w in chain.links.windows(2) {
                let (hi, lo) = (w[0], w[1]);
                assert_eq!(lo.shift % 2, 1);
                let kept = matches!(hi.label, Interval::S1 | Interval::S2);
                assert_eq!(kept, lo.shift == hi.shift, "m={m} k={k} level={}", hi.level);
                if !kept {
                    assert_eq!(lo.shift, (1 << hi.level) - hi.shift);
                }
            }
        }
    }
}

#[test]
fn nearest_third_stays_in_the_third_quarter() {
    for m in 3..=20 {
        let ell = nearest_third(m);
        let chain = shift_chain(ell, m).unwrap();
        assert!(chain.links.iter().all(|l| l.label == Interval::S3), "m={m}");
    }
}

#[test]
fn lower_bound_formula_matches_tables() {
    let t = tables(20);
    for m in 3..=20u32 {
        let v = lower_bound_value(m).unwrap();
        assert_eq!(v, t[m as usize].get(nearest_third(m) as usize), "m={m}");
        assert_ne!(v, 0);
    }
}

#[test]
fn lower_bound_splits_along_eigenvalues() {
    // f(n) = alpha (-lambda)^n + 2 Re(beta (-nu)^n), so the remainder is
    // bounded by 2 |beta| |nu|^n.
    let a = lower_bound_asymptotics::<f64>();
    for n in 1..=38u32 {
        let f = lower_bound_value(n + 2).unwrap() as f64;
        let dominant = a.alpha * (-a.lambda).powi(n as i32);
        assert!((f - dominant).abs() <= a.oscillation_bound(n) * (1.0 + 1e-9) + 1e-9, "n={n}");
        assert!((a.predict(n) - f).abs() <= 1e-9 * f.abs().max(1.0), "n={n}");
    }
}

fn reference_normal_form(m: u32, k: u64) -> (u8, Vec<Letter>) {
    // Expand T_m ... T_3 A^c into M, A, B symbols and regroup greedily.
    let chain = shift_chain(k, m).unwrap();
    let mut syms = Vec::new();
    for f in chain.factors() {
        if f.leading_a() {
            syms.push('A');
        }
        syms.push('M');
        if f.trailing_b() {
            syms.push('B');
        }
    }
    if chain.seed_swapped() {
        syms.push('A');
    }
    let delta = (syms[0] == 'A') as u8;
    let rest: String = syms[delta as usize..].iter().collect();
    let letters = rest
        .split('M')
        .skip(1)
        .map(|x| match x {
            "A" => Letter::MA,
            "B" => Letter::MB,
            other => panic!("group M{other}"),
        })
        .collect();
    (delta, letters)
}

proptest! {
    #[test]
    fn normal_form_matches_symbolic_regrouping(m in 3u32..=40, k in any::<u64>()) {
        let k = (k % (1 << m)) | 1;
        let nf = normal_form(m, k).unwrap();
        let (delta, letters) = reference_normal_form(m, k);
        prop_assert_eq!(nf.delta, delta);
        prop_assert_eq!(nf.word, letters);
    }

    #[test]
    fn labels_are_quarter_indices(m in 3u32..=40, k in any::<u64>()) {
        let k = (k % (1 << m)) | 1;
        let quarter = k / (1 << (m - 2));
        let want = [Interval::S1, Interval::S2, Interval::S3, Interval::S4][quarter as usize];
        prop_assert_eq!(interval_label(k, m).unwrap(), want);
    }

    #[test]
    fn products_of_forty_factors_fit_in_i64(word in prop::collection::vec(0usize..3, 1..=40)) {
        let letters = [M, A, B];
        let mut p = IntMat3::identity();
        for &i in &word {
            p = p.checked_mul(&letters[i]).unwrap();
        }
        prop_assert!(p.entries().all(|x| x.unsigned_abs() < 1 << 62));
    }
}

#[test]
fn seed_swap_tracks_the_last_label() {
    for m in 3..=10u32 {
        for k in (1..1u64 << m).step_by(2) {
            let chain = shift_chain(k, m).unwrap();
            let swapped = matches!(chain.links.last().unwrap().label, Interval::S2 | Interval::S3);
            assert_eq!(chain.seed_swapped(), swapped);
        }
    }
    assert_eq!(A * SEED, Vec3([-1, 1, 1]));
}

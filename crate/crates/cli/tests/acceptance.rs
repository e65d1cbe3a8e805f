//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails. Tolerances and runtime limits are pinned below.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rudin_shapiro::autocorr::{
    aperiodic_table_naive, periodic_from_aperiodic, periodic_table, periodic_table_naive, verify_even_zero,
    AperiodicLadder, Method,
};
use rudin_shapiro::jsr::{bnb_bracket, invariant_polytope};
use rudin_shapiro::matrec::{nearest_third, normal_form, v_direct, v_product};
use rudin_shapiro::seq::rs_sequence;
use rudin_shapiro::specbounds::{
    diagonalization_residual, eigen_constants, lower_bound_value, max_ratio_from_table, verify_lemma4,
    Diagonalized,
};
use rudin_shapiro::stats::{conjecture_table, merit_factor_l4, merit_series, Criterion};
use rudin_shapiro::Family;

const LAMBDA_SLACK: f64 = 1e-9;
const LEMMA4_TOL: f64 = 1e-9;
const RATIO_CAP: f64 = 0.6601;
const RATIO_CAP_EQ_TOL: f64 = 1e-4;
const LOWER_RATIO_FLOOR: f64 = 0.1;
const MERIT_WINDOW: f64 = 0.5;
const L4_REL_TOL: f64 = 1e-6;
const BNB_DEPTH: usize = 12;
const BNB_RATIO_MAX: f64 = 1.05;
const POLY_TOL: f64 = 1e-8;
const POLY_MAX_ROUNDS: usize = 10;
const POLY_VERTICES: (usize, usize) = (24, 36);
const CUBIC_TOL: f64 = 1e-12;
const GAMMA_SQ_TOL: f64 = 1e-9;
const DIAG_REL_TOL: f64 = 1e-6;
const PUBLISHED_GAPS: [u64; 14] = [2, 0, 8, 0, 34, 2, 22, 8, 0, 34, 86, 136, 18, 0];

type Check = (&'static str, Duration, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn sequence_fidelity() -> Verdict {
    let published: [&[i8]; 3] = [&[1, 1], &[1, 1, 1, -1], &[1, 1, 1, -1, 1, 1, -1, 1]];
    let mut bad = Vec::new();
    for (m, want) in (1..=3).zip(published) {
        let out = Command::new(env!("CARGO_BIN_EXE_rscorr"))
            .args(["gen", "--m", &m.to_string(), "--format", "ints"])
            .output()
            .expect("binary runs");
        let got: Vec<i8> = String::from_utf8_lossy(&out.stdout)
            .split_whitespace()
            .map(|t| t.parse().expect("integer term"))
            .collect();
        if !out.status.success() || got != want {
            bad.push(m);
        }
    }
    verdict(bad.is_empty(), format!("m=1..3 mismatches={bad:?}"))
}

fn oracle_equivalence() -> Verdict {
    let mut bad = Vec::new();
    let mut shifts = 0;
    for c in AperiodicLadder::new().take(13) {
        let m = c.order();
        let seq = rs_sequence(m).expect("order in range");
        let p = periodic_table(m).expect("order in range");
        shifts += c.values().len() + p.values().len();
        if *c != aperiodic_table_naive(&seq) || p != periodic_table_naive(&seq) {
            bad.push(m);
        }
    }
    verdict(bad.is_empty(), format!("m=0..12 shifts={shifts} mismatched orders={bad:?}"))
}

fn even_shift_zeros() -> Verdict {
    let r = verify_even_zero(14, Method::Fast).expect("order in range");
    verdict(r.passed(), format!("m<=14 even shifts={} nonzero={}", r.shifts_checked, r.violations.len()))
}

fn decomposition() -> Verdict {
    let t: Vec<_> = AperiodicLadder::new().take(13).collect();
    let (mut cases, mut bad) = (0, 0);
    for m in 3..=12u32 {
        for k in (1..1u64 << m).step_by(2) {
            cases += 1;
            let direct = v_direct(&t[m as usize], &t[m as usize - 1], k).expect("valid shift");
            let nf_ok = normal_form(m, k).is_ok_and(|nf| nf.apply_seed() == direct);
            if v_product(m, k).ok() != Some(direct) || !nf_ok {
                bad += 1;
            }
        }
    }
    verdict(bad == 0, format!("3<=m<=12 odd shifts={cases} mismatches={bad}"))
}

fn periodic_formula() -> Verdict {
    let t: Vec<_> = AperiodicLadder::new().take(13).collect();
    let mut bad = Vec::new();
    for m in 3..=12u32 {
        let naive = periodic_table_naive(&rs_sequence(m).expect("order in range"));
        if periodic_from_aperiodic(m, &t[m as usize - 2]) != naive {
            bad.push(m);
        }
    }
    verdict(bad.is_empty(), format!("3<=m<=12 mismatched orders={bad:?}"))
}

fn norm_bounds() -> Verdict {
    let r = verify_lemma4(LEMMA4_TOL).expect("norms computable");
    let worst = r.cases.iter().min_by(|a, b| a.margin.total_cmp(&b.margin)).expect("cases");
    verdict(
        r.passed(),
        format!(
            "cases={} failures={} tol={LEMMA4_TOL:e} worst={} margin={:.3e}",
            r.summary.cases, r.summary.failures, worst.check, worst.margin
        ),
    )
}

fn growth_ratios() -> Verdict {
    let lambda = eigen_constants::<f64>().lambda;
    let mut over = Vec::new();
    let mut m4 = f64::NAN;
    let mut low = Vec::new();
    for c in AperiodicLadder::new().take(25).skip(1) {
        let m = c.order();
        let r = max_ratio_from_table(&c, lambda);
        if m == 4 {
            m4 = r;
            if (r - RATIO_CAP).abs() > RATIO_CAP_EQ_TOL {
                over.push((m, r));
            }
        } else if r > RATIO_CAP {
            over.push((m, r));
        }
        if m >= 3 {
            let v = lower_bound_value(m).expect("fits in i64");
            debug_assert_eq!(v, c.get(nearest_third(m) as usize));
            let lr = v.unsigned_abs() as f64 / lambda.powi(m as i32);
            if v == 0 || lr < LOWER_RATIO_FLOOR {
                low.push((m, format!("{lr:.4}")));
            }
        }
    }
    verdict(
        over.is_empty() && low.is_empty(),
        format!(
            "m<=24 ratio(m=4)={m4:.6} above {RATIO_CAP}: {over:?}; |C_m(l_m)|/lambda^m below {LOWER_RATIO_FLOOR}: {low:?}"
        ),
    )
}

fn conjecture_table_gaps() -> Verdict {
    let rows = conjecture_table(16, Criterion::Absolute).expect("order in range");
    let gaps: Vec<u64> = rows.iter().map(|r| r.abs_gap).collect();
    let diffs: Vec<String> = rows
        .iter()
        .zip(PUBLISHED_GAPS)
        .filter(|(r, g)| r.abs_gap != *g)
        .map(|(r, g)| format!("m={} k*={} gap={} published={g}", r.m, r.k_star, r.abs_gap))
        .collect();
    let unique = rows.iter().all(|r| r.unique);
    verdict(gaps == PUBLISHED_GAPS && unique, format!("m=3..16 unique={unique} differences={diffs:?}"))
}

fn merit_factor() -> Verdict {
    let series = merit_series(20).expect("order in range");
    let product_ok = series.iter().all(|r| r.product_is_three);
    let window_ok = series.iter().filter(|r| r.m >= 8).all(|r| (r.merit_factor - 3.0).abs() < MERIT_WINDOW);
    let mut worst = 0.0f64;
    for r in series.iter().filter(|r| r.m <= 10) {
        let q: f64 = merit_factor_l4(r.m, 1 << (r.m + 3)).expect("enough points");
        worst = worst.max((q - r.merit_factor).abs() / r.merit_factor);
    }
    verdict(
        product_ok && window_ok && worst <= L4_REL_TOL,
        format!("product=3 for m=1..20: {product_ok}; |F-3|<{MERIT_WINDOW} for 8..20: {window_ok}; L4 rel err {worst:.2e}"),
    )
}

fn joint_spectral_radius() -> Verdict {
    let lambda = eigen_constants::<f64>().lambda;
    let f = Family::rudin_shapiro_pair();
    let b = bnb_bracket(&f, BNB_DEPTH, 1.0).expect("depth within cap");
    let bracket_ok =
        b.lower <= lambda + LAMBDA_SLACK && b.upper >= lambda - LAMBDA_SLACK && b.ratio() <= BNB_RATIO_MAX;
    let poly = invariant_polytope(&f, &f.word(&[0]), POLY_MAX_ROUNDS, POLY_TOL);
    let (poly_ok, poly_detail) = match &poly {
        Ok(run) => {
            let n = run.polytope.vertex_count();
            let ok = run.max_violation <= POLY_TOL && (POLY_VERTICES.0..=POLY_VERTICES.1).contains(&n);
            (ok, format!("rounds={} vertices={n} violation={:.1e}", run.rounds, run.max_violation))
        }
        Err(e) => (false, e.to_string()),
    };
    verdict(
        bracket_ok && poly_ok,
        format!(
            "depth {BNB_DEPTH} [{:.10}, {:.10}] ratio={:.4}; polytope {poly_detail}",
            b.lower,
            b.upper,
            b.ratio()
        ),
    )
}

fn eigenstructure() -> Verdict {
    let k = eigen_constants::<f64>();
    let (rl, rn) = k.cubic_residuals();
    let vieta = (k.root_sum() + 1.0).abs().max((k.root_product() - 4.0).abs());
    let gamma_sq = k.gamma.norm_sqr();
    let mut worst = 0.0f64;
    for which in Diagonalized::ALL {
        for j in 1..=30 {
            let r = diagonalization_residual::<f64>(which, j).expect("j within range");
            worst = worst.max(r / k.lambda.powi(j as i32));
        }
    }
    verdict(
        rl.max(rn) <= CUBIC_TOL && vieta <= CUBIC_TOL && (gamma_sq - 236.0).abs() <= GAMMA_SQ_TOL && worst <= DIAG_REL_TOL,
        format!(
            "cubic residual {:.1e}; Vieta {vieta:.1e}; |gamma|^2={gamma_sq:.10}; max residual/lambda^j {worst:.1e}",
            rl.max(rn)
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Check; 11] = [
        ("sequence fidelity", Duration::from_secs(1), sequence_fidelity),
        ("oracle equivalence", Duration::from_secs(120), oracle_equivalence),
        ("even-shift zeros", Duration::from_secs(30), even_shift_zeros),
        ("matrix decomposition", Duration::from_secs(60), decomposition),
        ("periodic formula", Duration::from_secs(120), periodic_formula),
        ("norm bound constants", Duration::from_secs(5), norm_bounds),
        ("growth ratios", Duration::from_secs(300), growth_ratios),
        ("maximizer table", Duration::from_secs(30), conjecture_table_gaps),
        ("merit factor", Duration::from_secs(120), merit_factor),
        ("joint spectral radius", Duration::from_secs(60), joint_spectral_radius),
        ("eigenstructure", Duration::from_secs(1), eigenstructure),
    ];
    let mut failed = Vec::new();
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = check();
        let elapsed = start.elapsed();
        let pass = v.pass && elapsed <= *limit;
        println!(
            "{} {:>2} {name}: {} [{:.3}s, limit {}s]",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            v.detail,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
        if !pass {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}

//! Merit factors, the sum-of-squares asymptotic, and the search for the
//! shift of largest autocorrelation.

use std::fmt::Write as _;

use num_complex::Complex;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::autocorr::{aperiodic_table_fast, AperiodicLadder, AutocorrTable};
use crate::error::{Error, Result};
use crate::format::{fmt_sig, ser_sig};
use crate::matrec::nearest_third;
use crate::scalar::{real_of, Real};
use crate::seq::{rs_sequence, MAX_ORDER};

/// `sum_{k >= 1} C(k)^2` in exact integers.
pub fn sidelobe_sum(table: &AutocorrTable) -> i128 {
    table.sidelobe_energy()
}

/// `n^2 / (2 sum_{k>=1} C(k)^2)` as an exact fraction.
pub fn merit_factor_of(table: &AutocorrTable) -> Result<Ratio<i128>> {
    let n = table.seq_len() as i128;
    let sum = sidelobe_sum(table);
    if sum == 0 {
        return Err(Error::Degenerate("sequence has no sidelobes"));
    }
    Ok(Ratio::new(n * n, 2 * sum))
}

/// `(sum_{k>=1} C(k)^2) / (4^m / 6)` as an exact fraction.
pub fn sum_squares_ratio_of(table: &AutocorrTable) -> Ratio<i128> {
    let n = table.seq_len() as i128;
    Ratio::new(6 * sidelobe_sum(table), n * n)
}

fn checked_table(m: u32) -> Result<AutocorrTable> {
    if m == 0 {
        return Err(Error::OrderTooSmall { m, min: 1 });
    }
    aperiodic_table_fast(m)
}

pub fn merit_factor_exact(m: u32) -> Result<Ratio<i128>> {
    merit_factor_of(&checked_table(m)?)
}

pub fn merit_factor(m: u32) -> Result<f64> {
    Ok(ratio_to_f64(&merit_factor_exact(m)?))
}

pub fn sum_squares_ratio_exact(m: u32) -> Result<Ratio<i128>> {
    Ok(sum_squares_ratio_of(&checked_table(m)?))
}

pub fn sum_squares_ratio(m: u32) -> Result<f64> {
    Ok(ratio_to_f64(&sum_squares_ratio_exact(m)?))
}

pub fn ratio_to_f64(r: &Ratio<i128>) -> f64 {
    r.to_f64().expect("ratio of i128 converts to f64")
}

/// Merit factor through the `L^4` norm on the unit circle:
/// `n^2 / (||q||_4^4 - n^2)`, with the norm taken by the trapezoid rule on
/// `points` equally spaced nodes.
///
/// The rule is exact once `points >= 2^{m+2}`, since `|q|^4` is a
/// trigonometric polynomial of degree below that.
pub fn merit_factor_l4<T: Real>(m: u32, points: usize) -> Result<T> {
    let required = 1usize << (m + 2);
    if points < required {
        return Err(Error::InsufficientQuadrature { points, required });
    }
    let seq = rs_sequence(m)?;
    let terms = seq.terms();
    let tau = T::PI() + T::PI();
    let twiddles: Vec<Complex<T>> = (0..points)
        .map(|j| Complex::from_polar(T::one(), tau * real_of::<T, usize>(j) / real_of::<T, usize>(points)))
        .collect();
    let mut acc = T::zero();
    for node in 0..points {
        let mut z = Complex::new(T::zero(), T::zero());
        let mut idx = 0usize;
        for &a in terms {
            if a > 0 {
                z = z + twiddles[idx];
            } else {
                z = z - twiddles[idx];
            }
            idx += node;
            if idx >= points {
                idx -= points;
            }
        }
        acc = acc + z.norm_sqr() * z.norm_sqr();
    }
    let l4 = acc / real_of::<T, usize>(points);
    let n2 = real_of::<T, usize>(terms.len() * terms.len());
    Ok(n2 / (l4 - n2))
}

/// One row of the merit-factor series.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeritRecord {
    pub m: u32,
    pub sidelobe_sum: i128,
    #[serde(serialize_with = "ser_sig")]
    pub merit_factor: f64,
    #[serde(serialize_with = "ser_sig")]
    pub sum_squares_ratio: f64,
    /// Whether `sum_squares_ratio * merit_factor == 3` in exact arithmetic.
    pub product_is_three: bool,
}

pub fn merit_series(m_max: u32) -> Result<Vec<MeritRecord>> {
    check_cap(m_max)?;
    AperiodicLadder::new()
        .take(m_max as usize + 1)
        .skip(1)
        .map(|t| {
            let mf = merit_factor_of(&t)?;
            let ssr = sum_squares_ratio_of(&t);
            Ok(MeritRecord {
                m: t.order(),
                sidelobe_sum: sidelobe_sum(&t),
                merit_factor: ratio_to_f64(&mf),
                sum_squares_ratio: ratio_to_f64(&ssr),
                product_is_three: mf * ssr == Ratio::from_integer(3),
            })
        })
        .collect()
}

pub fn merit_csv(records: &[MeritRecord]) -> String {
    let mut out = String::from("m,sidelobe_sum,merit_factor,sum_squares_ratio\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.m,
            r.sidelobe_sum,
            fmt_sig(r.merit_factor),
            fmt_sig(r.sum_squares_ratio)
        );
    }
    out
}

/// How shifts are ranked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Criterion {
    /// Largest `|C_m(k)|`.
    #[default]
    Absolute,
    /// Largest signed `C_m(k)`.
    Signed,
}

/// The maximizing shift of one order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MaxShiftRecord {
    pub m: u32,
    pub k_star: u64,
    pub value: i64,
    /// `false` when another shift attains the same score; `k_star` is then
    /// the smallest one.
    pub unique: bool,
    pub ell: u64,
    pub abs_gap: u64,
    #[serde(serialize_with = "ser_sig")]
    pub ratio: f64,
}

impl MaxShiftRecord {
    /// `3 k* / 2^{m+1}`.
    pub fn conjecture_ratio(&self) -> f64 {
        3.0 * self.k_star as f64 / 2f64.powi(self.m as i32 + 1)
    }
}

/// Scans shifts `1..2^m` for the maximal score.
pub fn max_shift_from_table(table: &AutocorrTable, criterion: Criterion) -> Result<MaxShiftRecord> {
    let m = table.order();
    if m == 0 {
        return Err(Error::OrderTooSmall { m, min: 1 });
    }
    let score = |v: i64| match criterion {
        Criterion::Absolute => v.abs(),
        Criterion::Signed => v,
    };
    let mut best: Option<(usize, i64)> = None;
    let mut unique = true;
    for (k, &v) in table.values().iter().enumerate().take(table.seq_len()).skip(1) {
        match best {
            Some((_, b)) if score(v) < score(b) => {}
            Some((_, b)) if score(v) == score(b) => unique = false,
            _ => {
                best = Some((k, v));
                unique = true;
            }
        }
    }
    let (k_star, value) = best.expect("order >= 1 has a nonzero shift");
    let ell = nearest_third(m);
    let k_star = k_star as u64;
    Ok(MaxShiftRecord {
        m,
        k_star,
        value,
        unique,
        ell,
        abs_gap: k_star.abs_diff(ell),
        ratio: k_star as f64 / ell as f64,
    })
}

pub fn max_shift(m: u32, criterion: Criterion) -> Result<MaxShiftRecord> {
    max_shift_from_table(&checked_table(m)?, criterion)
}

fn check_cap(m_max: u32) -> Result<()> {
    if m_max > MAX_ORDER {
        Err(Error::OrderTooLarge { m: m_max, cap: MAX_ORDER })
    } else {
        Ok(())
    }
}

/// Records for `m = 3..=m_max`.
pub fn conjecture_table(m_max: u32, criterion: Criterion) -> Result<Vec<MaxShiftRecord>> {
    if m_max < 3 {
        return Err(Error::OrderTooSmall { m: m_max, min: 3 });
    }
    check_cap(m_max)?;
    AperiodicLadder::new()
        .take(m_max as usize + 1)
        .skip(3)
        .map(|t| max_shift_from_table(&t, criterion))
        .collect()
}

pub fn table_csv(records: &[MaxShiftRecord]) -> String {
    let mut out = String::from("m,k_star,value,unique,ell,abs_gap,ratio\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.m,
            r.k_star,
            r.value,
            r.unique,
            r.ell,
            r.abs_gap,
            fmt_sig(r.ratio)
        );
    }
    out
}

/// `(m, 3 k*_m / 2^{m+1})` for `m = 3..=m_max`.
pub fn ratio_sequence(m_max: u32) -> Result<Vec<(u32, f64)>> {
    Ok(conjecture_table(m_max, Criterion::Absolute)?.iter().map(|r| (r.m, r.conjecture_ratio())).collect())
}

/// Orders in `3..=m_max` whose maximizing shift is exactly `l_m`.
pub fn ell_hits(records: &[MaxShiftRecord]) -> Vec<u32> {
    records.iter().filter(|r| r.abs_gap == 0).map(|r| r.m).collect()
}

/// `k,abs_C` rows for every shift `0..=2^m`.
pub fn plot_csv(table: &AutocorrTable) -> String {
    let mut out = String::from("k,abs_C\n");
    for (k, v) in table.values().iter().enumerate() {
        let _ = writeln!(out, "{k},{}", v.abs());
    }
    out
}

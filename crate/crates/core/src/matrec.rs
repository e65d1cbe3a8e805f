//! The 3x3 integer matrix recurrence behind the aperiodic autocorrelations.
//!
//! For odd `k` the vector `v_m = (C_m(k), C_m(2^m - k), C_{m-1}(k_{m-1}))`
//! satisfies `v_m = T v_{m-1}` with `T` one of `MB`, `M`, `AM`, `AMB`
//! depending on which quarter of `[0, 2^m]` holds `k`. Unrolling down to
//! order 2 expresses `v_m` as a product of those factors applied to
//! `(1, -1, 1)`, and regrouping turns the product into a word over
//! `{MA, MB}`.

use std::fmt;

use serde::Serialize;

use crate::autocorr::{AperiodicLadder, AutocorrTable};
use crate::error::{Error, Result};
use crate::linalg::{Mat3, Vec3};
use crate::seq::MAX_ORDER;
use crate::{IntMat3, IntVec3};

pub const M: IntMat3 = Mat3([[0, 1, 2], [0, -1, 2], [1, 0, 0]]);
/// Swaps the first two coordinates.
pub const A: IntMat3 = Mat3([[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
/// Drops the third coordinate.
pub const B: IntMat3 = Mat3([[1, 0, 0], [0, 1, 0], [0, 0, 0]]);
/// Reverses the coordinates; an involutive isometry.
pub const S: IntMat3 = Mat3([[0, 0, 1], [0, 1, 0], [1, 0, 0]]);

/// Starting vector `(1, -1, 1)`.
pub const SEED: IntVec3 = Vec3([1, -1, 1]);

pub fn ma() -> IntMat3 {
    M * A
}

pub fn mb() -> IntMat3 {
    M * B
}

/// Open quarter intervals `S1 = (0, q)`, ..., `S4 = (3q, 4q)` of `[0, 2^m]`
/// with `q = 2^{m-2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Interval {
    S1,
    S2,
    S3,
    S4,
}

impl Interval {
    /// Whether the shift carries over unchanged to the next lower order.
    pub fn keeps_shift(self) -> bool {
        matches!(self, Interval::S1 | Interval::S2)
    }

    pub fn factor(self) -> Factor {
        match self {
            Interval::S1 => Factor::MB,
            Interval::S2 => Factor::M,
            Interval::S3 => Factor::AM,
            Interval::S4 => Factor::AMB,
        }
    }
}

/// One step of the recurrence, `A^a M B^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Factor {
    MB,
    M,
    AM,
    AMB,
}

impl Factor {
    /// Exponent of the leading `A`.
    pub fn leading_a(self) -> bool {
        matches!(self, Factor::AM | Factor::AMB)
    }

    /// Exponent of the trailing `B`.
    pub fn trailing_b(self) -> bool {
        matches!(self, Factor::MB | Factor::AMB)
    }

    pub fn matrix(self) -> IntMat3 {
        match self {
            Factor::MB => M * B,
            Factor::M => M,
            Factor::AM => A * M,
            Factor::AMB => A * M * B,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The eight admissible consecutive pairs `(T_i, T_{i-1})`.
pub const ADMISSIBLE_PAIRS: [(Factor, Factor); 8] = [
    (Factor::MB, Factor::MB),
    (Factor::MB, Factor::M),
    (Factor::M, Factor::AM),
    (Factor::M, Factor::AMB),
    (Factor::AM, Factor::AM),
    (Factor::AM, Factor::AMB),
    (Factor::AMB, Factor::MB),
    (Factor::AMB, Factor::M),
];

pub fn t_factor(label: Interval) -> IntMat3 {
    label.factor().matrix()
}

/// Letters of the normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Letter {
    MA,
    MB,
}

impl Letter {
    pub fn matrix(self) -> IntMat3 {
        match self {
            Letter::MA => ma(),
            Letter::MB => mb(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Letter::MA => "MA",
            Letter::MB => "MB",
        }
    }
}

fn validate_shift(k: u64, m: u32) -> Result<()> {
    if m < 3 {
        return Err(Error::OrderTooSmall { m, min: 3 });
    }
    if m > 62 {
        return Err(Error::OrderTooLarge { m, cap: 62 });
    }
    if k == 0 || k >= 1u64 << m {
        return Err(Error::ShiftOutOfRange { k, m });
    }
    if k.is_multiple_of(2) {
        return Err(Error::EvenShift { k });
    }
    Ok(())
}

/// The quarter interval of `[0, 2^m]` holding the odd shift `k`.
pub fn interval_label(k: u64, m: u32) -> Result<Interval> {
    validate_shift(k, m)?;
    Ok(match k >> (m - 2) {
        0 => Interval::S1,
        1 => Interval::S2,
        2 => Interval::S3,
        _ => Interval::S4,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChainLink {
    pub level: u32,
    pub shift: u64,
    pub label: Interval,
}

/// Shifts `k_m, k_{m-1}, ..., k_3` with their interval labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftChain {
    pub order: u32,
    pub links: Vec<ChainLink>,
}

impl ShiftChain {
    /// The factors `T_m, ..., T_3`, leftmost first.
    pub fn factors(&self) -> impl Iterator<Item = Factor> + '_ {
        self.links.iter().map(|l| l.label.factor())
    }

    /// Whether the order-2 vector is `A (1,-1,1)` rather than `(1,-1,1)`.
    pub fn seed_swapped(&self) -> bool {
        let last = self.links.last().expect("chain is non-empty");
        matches!(last.label, Interval::S2 | Interval::S3)
    }

    /// Whether every consecutive factor pair is admissible.
    pub fn adjacency_ok(&self) -> bool {
        let f: Vec<Factor> = self.factors().collect();
        f.windows(2).all(|w| ADMISSIBLE_PAIRS.contains(&(w[0], w[1])))
    }
}

/// Follows `k_{i-1} = k_i` on the lower half and `2^i - k_i` on the upper
/// half, from level `m` down to level 3.
pub fn shift_chain(k: u64, m: u32) -> Result<ShiftChain> {
    validate_shift(k, m)?;
    let mut links = Vec::with_capacity(m as usize - 2);
    let mut shift = k;
    for level in (3..=m).rev() {
        let label = interval_label(shift, level)?;
        links.push(ChainLink { level, shift, label });
        if !label.keeps_shift() {
            shift = (1u64 << level) - shift;
        }
    }
    Ok(ShiftChain { order: m, links })
}

/// The order-2 starting vector selected by the level-3 label.
pub fn initial_vector(chain: &ShiftChain) -> IntVec3 {
    if chain.seed_swapped() {
        A * SEED
    } else {
        SEED
    }
}

/// `(C_m(k), C_m(2^m - k), C_{m-1}(k_{m-1}))` read from the tables.
pub fn v_direct(c_m: &AutocorrTable, c_prev: &AutocorrTable, k: u64) -> Result<IntVec3> {
    let m = c_m.order();
    validate_shift(k, m)?;
    assert_eq!(c_prev.order() + 1, m, "tables must be of consecutive orders");
    let half = 1u64 << (m - 1);
    let k_prev = if k <= half { k } else { (1u64 << m) - k };
    Ok(Vec3([c_m.get(k as usize), c_m.get(((1u64 << m) - k) as usize), c_prev.get(k_prev as usize)]))
}

/// [`v_direct`] with the two tables built on the spot.
pub fn v_direct_for(m: u32, k: u64) -> Result<IntVec3> {
    validate_shift(k, m)?;
    if m > MAX_ORDER {
        return Err(Error::OrderTooLarge { m, cap: MAX_ORDER });
    }
    let tables: Vec<_> = AperiodicLadder::new().skip(m as usize - 1).take(2).collect();
    v_direct(&tables[1], &tables[0], k)
}

/// `T_m ... T_3 A^c (1,-1,1)` along the shift chain.
pub fn v_product(m: u32, k: u64) -> Result<IntVec3> {
    let chain = shift_chain(k, m)?;
    Ok(chain.factors().collect::<Vec<_>>().iter().rev().fold(initial_vector(&chain), |v, f| f.matrix() * v))
}

/// `A^delta (X_m ... X_3) (1,-1,1)` with every `X_i` in `{MA, MB}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalForm {
    #[serde(rename = "m")]
    pub order: u32,
    #[serde(rename = "k")]
    pub shift: u64,
    pub delta: u8,
    pub word: Vec<Letter>,
}

impl NormalForm {
    /// `A^delta` times the word product.
    pub fn matrix(&self) -> IntMat3 {
        let word = self.word.iter().fold(IntMat3::identity(), |acc, l| acc * l.matrix());
        A.pow(self.delta as u32) * word
    }

    pub fn apply_seed(&self) -> IntVec3 {
        self.matrix() * SEED
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("normal form serializes")
    }
}

/// Regroups `A^{a_m} M B^{b_m} A^{a_{m-1}} M ... M B^{b_3} A^c` as
/// `A^{a_m} (M X_m) ... (M X_3)` with `X_i = B^{b_i} A^{a_{i-1}}` and
/// `a_2 = c`. Each `X_i` must be exactly one of `A`, `B`.
pub fn normal_form(m: u32, k: u64) -> Result<NormalForm> {
    let chain = shift_chain(k, m)?;
    let factors: Vec<Factor> = chain.factors().collect();
    let mut next_a: Vec<bool> = factors.iter().skip(1).map(|f| f.leading_a()).collect();
    next_a.push(chain.seed_swapped());
    let word = factors
        .iter()
        .zip(next_a)
        .map(|(f, a_next)| match (f.trailing_b(), a_next) {
            (true, false) => Ok(Letter::MB),
            (false, true) => Ok(Letter::MA),
            (true, true) => Err(Error::NormalFormBroken("MBA".into())),
            (false, false) => Err(Error::NormalFormBroken("M".into())),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NormalForm { order: m, shift: k, delta: factors[0].leading_a() as u8, word })
}

/// Nearest integer to `2^{m+1} / 3` (never a tie).
pub fn nearest_third(m: u32) -> u64 {
    assert!((1..=61).contains(&m), "order {m} outside 1..=61");
    let num = 1u128 << (m + 1);
    ((2 * num + 3) / 6) as u64
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma6Row {
    pub m: u32,
    /// `floor`/`ceil` form checked for odd/even `m`.
    pub lhs: u128,
    pub rhs: u128,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma6Report {
    pub rows: Vec<Lemma6Row>,
}

impl Lemma6Report {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// For odd `m`: `floor(2^{m+1}/3) = 2^{m+1} - ceil(2^{m+2}/3)`;
/// for even `m`: `ceil(2^{m+1}/3) = 2^{m+1} - floor(2^{m+2}/3)`.
pub fn lemma6_check(m_max: u32) -> Lemma6Report {
    assert!(m_max <= 120, "m_max {m_max} overflows u128");
    let rows = (1..=m_max)
        .map(|m| {
            let x = 1u128 << (m + 1);
            let y = 1u128 << (m + 2);
            let (lhs, rhs) = if m % 2 == 1 { (x / 3, x - y.div_ceil(3)) } else { (x.div_ceil(3), x - y / 3) };
            Lemma6Row { m, lhs, rhs, pass: lhs == rhs }
        })
        .collect();
    Lemma6Report { rows }
}

/// Comparison of the two closed forms offered for `v_m` at `k = nearest_third(m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NearestThirdRow {
    pub m: u32,
    pub ell: u64,
    pub v_direct: IntVec3,
    /// `(AM)^{m-3} (-1, 1, -1)`.
    pub short_form: IntVec3,
    /// First entry of `(AM)^{m-2} (-1, 1, 1)`.
    pub long_form_first: i64,
    pub short_form_matches: bool,
    pub long_form_matches: bool,
    pub all_s3: bool,
}

pub fn nearest_third_row(c_m: &AutocorrTable, c_prev: &AutocorrTable) -> Result<NearestThirdRow> {
    let m = c_m.order();
    let ell = nearest_third(m);
    let v = v_direct(c_m, c_prev, ell)?;
    let am = A * M;
    let short_form = am.checked_pow(m - 3)? * Vec3([-1, 1, -1]);
    let long_form_first = (am.checked_pow(m - 2)? * Vec3([-1, 1, 1]))[0];
    let all_s3 = shift_chain(ell, m)?.links.iter().all(|l| l.label == Interval::S3);
    Ok(NearestThirdRow {
        m,
        ell,
        v_direct: v,
        short_form,
        long_form_first,
        short_form_matches: short_form == v,
        long_form_matches: long_form_first == v[0],
        all_s3,
    })
}

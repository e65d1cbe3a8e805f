//! Aperiodic and periodic autocorrelations of Rudin-Shapiro sequences.
//!
//! Two routes are kept side by side: the direct `O(n)`-per-shift sums, and
//! the structural recurrence that builds the order-`m` aperiodic table from
//! the tables of orders `m-1` and `m-2` in `O(2^m)`. The periodic table
//! follows from the order-`m-2` aperiodic table alone.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::seq::{rs_sequence_capped, BinarySeq, MAX_ORDER};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CorrKind {
    Aperiodic,
    Periodic,
}

/// How a table is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Naive,
    Fast,
}

/// Every autocorrelation value of one sequence, indexed by shift.
///
/// Aperiodic tables hold shifts `0..=2^m`, periodic tables `0..2^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutocorrTable {
    order: u32,
    kind: CorrKind,
    values: Vec<i64>,
}

impl AutocorrTable {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn kind(&self) -> CorrKind {
        self.kind
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn seq_len(&self) -> usize {
        1 << self.order
    }

    /// Value at shift `k`; aperiodic shifts past the end are zero and
    /// periodic shifts wrap.
    pub fn get(&self, k: usize) -> i64 {
        match self.kind {
            CorrKind::Aperiodic => self.values.get(k).copied().unwrap_or(0),
            CorrKind::Periodic => self.values[k % self.values.len()],
        }
    }

    /// `k,value` CSV with a header row.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.values.len() * 8 + 8);
        out.push_str("k,value\n");
        for (k, v) in self.values.iter().enumerate() {
            let _ = writeln!(out, "{k},{v}");
        }
        out
    }

    /// `C_<m>.csv` or `P_<m>.csv`.
    pub fn file_name(&self) -> String {
        let prefix = match self.kind {
            CorrKind::Aperiodic => 'C',
            CorrKind::Periodic => 'P',
        };
        format!("{prefix}_{}.csv", self.order)
    }

    /// Sum of squares over shifts `1..=2^m` (aperiodic) or `1..2^m` (periodic).
    pub fn sidelobe_energy(&self) -> i128 {
        self.values[1..].iter().map(|&v| (v as i128) * (v as i128)).sum()
    }
}

/// `sum_i s_i s_{i+k}` with zero padding.
pub fn aperiodic_naive(s: &[i8], k: usize) -> i64 {
    if k >= s.len() {
        return 0;
    }
    s[..s.len() - k].iter().zip(&s[k..]).map(|(&a, &b)| (a as i64) * (b as i64)).sum()
}

/// `sum_i s_i s_{(i+k) mod n}`.
pub fn periodic_naive(s: &[i8], k: usize) -> i64 {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let k = k % n;
    (0..n).map(|i| (s[i] as i64) * (s[(i + k) % n] as i64)).sum()
}

pub fn aperiodic_table_naive(seq: &BinarySeq) -> AutocorrTable {
    let values = (0..=seq.len()).map(|k| aperiodic_naive(seq.terms(), k)).collect();
    AutocorrTable { order: seq.order(), kind: CorrKind::Aperiodic, values }
}

pub fn periodic_table_naive(seq: &BinarySeq) -> AutocorrTable {
    let values = (0..seq.len()).map(|k| periodic_naive(seq.terms(), k)).collect();
    AutocorrTable { order: seq.order(), kind: CorrKind::Periodic, values }
}

fn check_order(m: u32) -> Result<()> {
    if m > MAX_ORDER {
        Err(Error::OrderTooLarge { m, cap: MAX_ORDER })
    } else {
        Ok(())
    }
}

fn naive_small(m: u32) -> AutocorrTable {
    aperiodic_table_naive(&rs_sequence_capped(m, MAX_ORDER).expect("small order"))
}

/// Order-`m` aperiodic table from the tables of orders `m-1` and `m-2`
/// (`m >= 3`). Odd shifts in the four quarter intervals use
///
/// ```text
/// (0, q):    C_m(k) =  C_{m-1}(h-k)
/// (q, 2q):   C_m(k) =  C_{m-1}(h-k) + 2 C_{m-2}(h-k)
/// (2q, 3q):  C_m(k) = -C_{m-1}(k-h) + 2 C_{m-2}(k-h)
/// (3q, 4q):  C_m(k) = -C_{m-1}(k-h)
/// ```
///
/// with `h = 2^{m-1}`, `q = 2^{m-2}`. Even shifts other than zero vanish.
fn aperiodic_step(m: u32, prev: &AutocorrTable, prev2: &AutocorrTable) -> AutocorrTable {
    debug_assert!(m >= 3 && prev.order + 1 == m && prev2.order + 2 == m);
    let n = 1usize << m;
    let h = n / 2;
    let q = n / 4;
    let c1 = prev.values();
    let c2 = prev2.values();
    let mut values = vec![0i64; n + 1];
    values[0] = n as i64;
    for k in (1..n).step_by(2) {
        values[k] = match k / q {
            0 => c1[h - k],
            1 => c1[h - k] + 2 * c2[h - k],
            2 => -c1[k - h] + 2 * c2[k - h],
            _ => -c1[k - h],
        };
    }
    AutocorrTable { order: m, kind: CorrKind::Aperiodic, values }
}

/// Aperiodic tables for orders `0, 1, 2, ...`, each built from the previous
/// two. Only the last two tables are retained between steps.
#[derive(Debug)]
pub struct AperiodicLadder {
    next: u32,
    cap: u32,
    prev: Option<Arc<AutocorrTable>>,
    prev2: Option<Arc<AutocorrTable>>,
}

impl AperiodicLadder {
    pub fn new() -> Self {
        Self::with_cap(MAX_ORDER)
    }

    pub fn with_cap(cap: u32) -> Self {
        Self { next: 0, cap, prev: None, prev2: None }
    }
}

impl Default for AperiodicLadder {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for AperiodicLadder {
    type Item = Arc<AutocorrTable>;

    fn next(&mut self) -> Option<Self::Item> {
        let m = self.next;
        if m > self.cap {
            return None;
        }
        let table = match (&self.prev, &self.prev2) {
            (Some(p), Some(p2)) if m >= 3 => aperiodic_step(m, p, p2),
            _ => naive_small(m),
        };
        let table = Arc::new(table);
        self.prev2 = self.prev.take();
        self.prev = Some(Arc::clone(&table));
        self.next += 1;
        Some(table)
    }
}

/// Order-`m` aperiodic table by the structural recurrence.
pub fn aperiodic_table_fast(m: u32) -> Result<AutocorrTable> {
    check_order(m)?;
    let last = AperiodicLadder::new().nth(m as usize).expect("ladder reaches m");
    Ok(Arc::try_unwrap(last).unwrap_or_else(|shared| (*shared).clone()))
}

/// Periodic table of order `m` from the aperiodic table of order `m-2`:
/// zero on the outer quarters and at even shifts, `4 C_{m-2}(|h-k|)` on
/// odd shifts of the middle two quarters.
pub fn periodic_from_aperiodic(m: u32, c_m2: &AutocorrTable) -> AutocorrTable {
    assert!(m >= 3 && c_m2.order() + 2 == m && c_m2.kind() == CorrKind::Aperiodic);
    let n = 1usize << m;
    let h = n / 2;
    let q = n / 4;
    let mut values = vec![0i64; n];
    values[0] = n as i64;
    for k in (1..n).step_by(2) {
        if (q..3 * q).contains(&k) {
            values[k] = 4 * c_m2.get(h.abs_diff(k));
        }
    }
    AutocorrTable { order: m, kind: CorrKind::Periodic, values }
}

/// Order-`m` periodic table; orders below 3 are computed directly.
pub fn periodic_table(m: u32) -> Result<AutocorrTable> {
    check_order(m)?;
    if m < 3 {
        return Ok(periodic_table_naive(&rs_sequence_capped(m, MAX_ORDER)?));
    }
    let c_m2 = aperiodic_table_fast(m - 2)?;
    Ok(periodic_from_aperiodic(m, &c_m2))
}

/// Periodic values as sums of two aperiodic values: `P(k) = C(k) + C(n-k)`.
pub fn periodic_from_pair_sum(c: &AutocorrTable) -> AutocorrTable {
    assert_eq!(c.kind(), CorrKind::Aperiodic);
    let n = c.seq_len();
    let values = (0..n).map(|k| if k == 0 { n as i64 } else { c.get(k) + c.get(n - k) }).collect();
    AutocorrTable { order: c.order(), kind: CorrKind::Periodic, values }
}

/// One nonzero even-shift value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EvenShiftViolation {
    pub m: u32,
    pub kind: CorrKind,
    pub k: usize,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvenZeroReport {
    pub m_max: u32,
    pub shifts_checked: usize,
    pub violations: Vec<EvenShiftViolation>,
}

impl EvenZeroReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that both tables vanish at every even shift `2 <= k < 2^m` for all
/// orders `m <= m_max`.
pub fn verify_even_zero(m_max: u32, method: Method) -> Result<EvenZeroReport> {
    check_order(m_max)?;
    let mut report = EvenZeroReport { m_max, shifts_checked: 0, violations: Vec::new() };
    let scan = |t: &AutocorrTable, report: &mut EvenZeroReport| {
        for k in (2..t.seq_len()).step_by(2) {
            report.shifts_checked += 1;
            let value = t.get(k);
            if value != 0 {
                report.violations.push(EvenShiftViolation { m: t.order(), kind: t.kind(), k, value });
            }
        }
    };
    match method {
        Method::Naive => {
            for m in 0..=m_max {
                let seq = rs_sequence_capped(m, MAX_ORDER)?;
                scan(&aperiodic_table_naive(&seq), &mut report);
                scan(&periodic_table_naive(&seq), &mut report);
            }
        }
        Method::Fast => {
            let tables: Vec<_> = AperiodicLadder::new().take(m_max as usize + 1).collect();
            for (m, c) in tables.iter().enumerate() {
                scan(c, &mut report);
                let p = if m >= 3 {
                    periodic_from_aperiodic(m as u32, &tables[m - 2])
                } else {
                    periodic_table_naive(&rs_sequence_capped(m as u32, MAX_ORDER)?)
                };
                scan(&p, &mut report);
            }
        }
    }
    Ok(report)
}

//! Rudin-Shapiro sequences, the generalized family built from a sign
//! pattern `f`, and evaluation of the associated polynomial on the unit
//! circle.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest order accepted by default. A sequence of order `m` has `2^m`
/// one-byte terms.
pub const MAX_ORDER: u32 = 30;

/// A `±1` sequence of length `2^m` starting with `+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinarySeq {
    order: u32,
    terms: Vec<i8>,
}

/// Text encodings for [`BinarySeq`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeqFormat {
    /// `+ + + -`
    Symbols,
    /// `1 1 1 -1`
    Ints,
    /// `+++-`
    Compact,
}

impl BinarySeq {
    /// Validates and wraps raw terms.
    pub fn from_terms(terms: Vec<i8>) -> Result<Self> {
        if !terms.len().is_power_of_two() {
            return Err(Error::InvalidSequence("length is not a power of two"));
        }
        if terms.iter().any(|&t| t != 1 && t != -1) {
            return Err(Error::InvalidSequence("entries must be +1 or -1"));
        }
        if terms[0] != 1 {
            return Err(Error::InvalidSequence("first entry must be +1"));
        }
        Ok(Self { order: terms.len().trailing_zeros(), terms })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &[i8] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn render(&self, format: SeqFormat) -> String {
        let sym = |t: i8| if t > 0 { "+" } else { "-" };
        match format {
            SeqFormat::Symbols => self.terms.iter().map(|&t| sym(t)).collect::<Vec<_>>().join(" "),
            SeqFormat::Ints => self.terms.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" "),
            SeqFormat::Compact => self.terms.iter().map(|&t| sym(t)).collect(),
        }
    }

    /// `sum_j a_j e^{i j theta}` by Horner's rule.
    pub fn eval_on_circle<T: Real>(&self, theta: T) -> Complex<T> {
        let z = Complex::from_polar(T::one(), theta);
        self.terms.iter().rev().fold(Complex::new(T::zero(), T::zero()), |acc, &a| {
            acc * z + Complex::new(if a > 0 { T::one() } else { -T::one() }, T::zero())
        })
    }
}

fn check_order(m: u32, cap: u32) -> Result<()> {
    if m > cap {
        Err(Error::OrderTooLarge { m, cap })
    } else {
        Ok(())
    }
}

/// `(-1)^t` where `t` counts the (overlapping) pairs of adjacent set bits in `i`.
#[inline]
pub fn rs_term(i: u64) -> i8 {
    if (i & (i >> 1)).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The order-`m` Rudin-Shapiro sequence, capped at [`MAX_ORDER`].
pub fn rs_sequence(m: u32) -> Result<BinarySeq> {
    rs_sequence_capped(m, MAX_ORDER)
}

pub fn rs_sequence_capped(m: u32, cap: u32) -> Result<BinarySeq> {
    check_order(m, cap)?;
    let terms = (0..1u64 << m).map(rs_term).collect();
    Ok(BinarySeq { order: m, terms })
}

/// The sign pattern that reproduces the Rudin-Shapiro sequences:
/// `f(0) = 0`, `f(odd) = 0`, `f(even > 0) = 1`.
pub fn rudin_shapiro_pattern(m: u32) -> Vec<bool> {
    (0..m).map(|i| i > 0 && i % 2 == 0).collect()
}

/// Parses a pattern such as `"001"`; character `i` is `f(i)`.
pub fn parse_pattern(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::InvalidPattern(format!("unexpected character {other:?} in {s:?}"))),
        })
        .collect()
}

/// Sequence of the generalized family:
/// `a_0 = 1`, `a_{2^i + j} = (-1)^{j + f(i)} a_{2^i - j - 1}` for
/// `0 <= j < 2^i`, `0 <= i < m`.
pub fn generalized_sequence(m: u32, f: &[bool]) -> Result<BinarySeq> {
    generalized_sequence_capped(m, f, MAX_ORDER)
}

pub fn generalized_sequence_capped(m: u32, f: &[bool], cap: u32) -> Result<BinarySeq> {
    check_order(m, cap)?;
    if f.len() != m as usize {
        return Err(Error::InvalidPattern(format!("pattern has {} entries, order {m} needs {m}", f.len())));
    }
    let mut terms = Vec::with_capacity(1 << m);
    terms.push(1i8);
    for (i, &fi) in f.iter().enumerate() {
        let half = 1usize << i;
        for j in 0..half {
            let sign = if (j % 2 == 1) ^ fi { -1 } else { 1 };
            terms.push(sign * terms[half - j - 1]);
        }
    }
    Ok(BinarySeq { order: m, terms })
}

/// Value of the order-`m` Shapiro polynomial at `e^{i theta}`.
pub fn shapiro_eval<T: Real>(m: u32, theta: T) -> Result<Complex<T>> {
    Ok(rs_sequence(m)?.eval_on_circle(theta))
}

use serde::Serialize;

use super::{MatrixFamily, ProductWord};
use crate::error::{Error, Result};
use crate::format::round_sig;
use crate::linalg::{spectral_norm, spectral_radius, Mat3};
use crate::scalar::{real_of, Real};

/// Deepest search accepted; the lower bound enumerates every word, so the
/// cost doubles per level.
pub const BNB_DEPTH_CAP: usize = 22;

/// Per-length statistics of the norm sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelStat<T> {
    pub length: usize,
    /// `max ||Pi||` over words of this length.
    pub max_norm: T,
    /// `max_norm^{1/length}`.
    pub bound: T,
    /// Leaves reached after pruning.
    pub visited: u64,
}

/// Lower and upper estimates of the joint spectral radius.
#[derive(Clone, Debug, PartialEq)]
pub struct JsrBracket<T> {
    pub depth: usize,
    pub lower: T,
    pub upper: T,
    pub witness: ProductWord<T>,
    pub witness_names: Vec<String>,
    pub levels: Vec<LevelStat<T>>,
}

impl<T: Real> JsrBracket<T> {
    pub fn ratio(&self) -> T {
        self.upper / self.lower
    }

    pub fn to_json(&self) -> serde_json::Value {
        let f = |x: T| round_sig(x.to_f64().expect("finite bound"));
        serde_json::json!({
            "depth": self.depth,
            "lower": f(self.lower),
            "upper": f(self.upper),
            "witness": self.witness_names,
        })
    }
}

/// Brackets the joint spectral radius with words of length up to `depth`.
///
/// The lower bound is the largest `rho(Pi)^{1/|w|}` over all words. The upper
/// bound is the smallest `(max_{|w| = L} ||Pi||)^{1/L}` over `L <= depth`,
/// with norms taken after conjugating the family by `diag(1, 1, norm_scale)`.
/// A prefix `w` is dropped when `||Pi(w)|| c^{L - |w|}` cannot beat the
/// running level maximum, `c` being the largest single-letter norm.
/// Letters are explored in family order, so results are reproducible.
pub fn bnb_bracket<T: Real>(family: &MatrixFamily<T>, depth: usize, norm_scale: T) -> Result<JsrBracket<T>> {
    if depth == 0 {
        return Err(Error::Degenerate("depth must be at least 1"));
    }
    if depth > BNB_DEPTH_CAP {
        return Err(Error::DepthTooLarge { depth, cap: BNB_DEPTH_CAP });
    }
    let scaled = family.rescaled(norm_scale)?;

    let mut best = (T::neg_infinity(), Vec::new());
    let mut letters = Vec::with_capacity(depth);
    lower_search(family.matrices(), &Mat3::identity(), depth, &mut letters, &mut best)?;

    let mats = scaled.matrices();
    let letter_norms: Vec<T> = mats.iter().map(spectral_norm).collect::<Result<_>>()?;
    let c = letter_norms.iter().copied().fold(T::zero(), T::max);
    let mut levels = Vec::with_capacity(depth);
    for length in 1..=depth {
        let mut state = LevelState { max_norm: T::zero(), visited: 0 };
        upper_search(mats, &Mat3::identity(), T::one(), length, c, &mut state)?;
        levels.push(LevelStat {
            length,
            max_norm: state.max_norm,
            bound: state.max_norm.powf(T::one() / real_of::<T, usize>(length)),
            visited: state.visited,
        });
    }
    let upper = levels.iter().map(|l| l.bound).fold(T::infinity(), T::min);
    let witness = family.word(&best.1);
    Ok(JsrBracket {
        depth,
        lower: best.0,
        upper,
        witness_names: family.letter_names(&best.1),
        witness,
        levels,
    })
}

fn lower_search<T: Real>(
    mats: &[Mat3<T>],
    prefix: &Mat3<T>,
    remaining: usize,
    letters: &mut Vec<usize>,
    best: &mut (T, Vec<usize>),
) -> Result<()> {
    if remaining == 0 {
        return Ok(());
    }
    for (i, m) in mats.iter().enumerate() {
        let product = *prefix * *m;
        if !product.is_finite() {
            return Err(Error::NonFinite);
        }
        letters.push(i);
        let r = spectral_radius(&product).powf(T::one() / real_of::<T, usize>(letters.len()));
        if r > best.0 {
            *best = (r, letters.clone());
        }
        lower_search(mats, &product, remaining - 1, letters, best)?;
        letters.pop();
    }
    Ok(())
}

struct LevelState<T> {
    max_norm: T,
    visited: u64,
}

fn upper_search<T: Real>(
    mats: &[Mat3<T>],
    prefix: &Mat3<T>,
    prefix_norm: T,
    remaining: usize,
    c: T,
    state: &mut LevelState<T>,
) -> Result<()> {
    if remaining == 0 {
        state.visited += 1;
        state.max_norm = state.max_norm.max(prefix_norm);
        return Ok(());
    }
    for m in mats {
        let product = *prefix * *m;
        let norm = spectral_norm(&product)?;
        if norm * c.powi(remaining as i32 - 1) < state.max_norm {
            continue;
        }
        upper_search(mats, &product, norm, remaining - 1, c, state)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specbounds::eigen_constants;

    #[test]
    fn depth_one() {
        let f = MatrixFamily::<f64>::rudin_shapiro_pair();
        let b = bnb_bracket(&f, 1, 1.0).unwrap();
        let l = eigen_constants::<f64>().lambda;
        assert!((b.lower - l).abs() < 1e-12);
        assert!((b.upper - 8f64.sqrt()).abs() < 1e-12);
        assert_eq!(b.witness_names, vec!["MA"]);
        assert_eq!(b.to_json()["witness"], serde_json::json!(["MA"]));
    }

    #[test]
    fn pruning_keeps_level_maxima_exact() {
        let f = MatrixFamily::<f64>::rudin_shapiro_pair();
        let b = bnb_bracket(&f, 6, 1.0).unwrap();
        for level in &b.levels {
            let mut max = 0.0f64;
            for bits in 0..(1u32 << level.length) {
                let letters: Vec<usize> = (0..level.length).map(|i| ((bits >> i) & 1) as usize).collect();
                max = max.max(spectral_norm(&f.word(&letters).product).unwrap());
            }
            assert!((level.max_norm - max).abs() <= 1e-12 * max, "L={}", level.length);
        }
    }

    #[test]
    fn caps() {
        let f = MatrixFamily::<f64>::rudin_shapiro_pair();
        assert!(bnb_bracket(&f, 0, 1.0).is_err());
        assert_eq!(
            bnb_bracket(&f, 23, 1.0).unwrap_err(),
            Error::DepthTooLarge { depth: 23, cap: BNB_DEPTH_CAP }
        );
        assert!(bnb_bracket(&f, 2, -1.0).is_err());
    }
}

//! Joint spectral radius of a finite matrix family: irreducibility,
//! branch-and-bound brackets, and the invariant polytope algorithm.

mod bnb;
pub mod hull;
mod polytope;

use num_traits::Num;
use serde::Serialize;

use crate::error::{Error, Result};
pub use crate::linalg::spectral_radius;
use crate::linalg::{eigenvalues, eigenvector, gram, symmetric_eigenvalues, Mat3, Vec3};
use crate::matrec::{ma, mb};
use crate::scalar::{lit, real_of, Real};
pub use bnb::{bnb_bracket, JsrBracket, LevelStat, BNB_DEPTH_CAP};
pub use hull::{convex_hull_3d, Facet, Hull};
pub use polytope::{invariant_polytope, Polytope3, PolytopeError, PolytopeFailure, PolytopeRun};

/// Named matrices whose products are explored.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixFamily<T> {
    names: Vec<String>,
    mats: Vec<Mat3<T>>,
}

impl<T: Copy + Num> MatrixFamily<T> {
    pub fn new(named: Vec<(String, Mat3<T>)>) -> Result<Self> {
        if named.is_empty() {
            return Err(Error::Degenerate("empty matrix family"));
        }
        let (names, mats) = named.into_iter().unzip();
        Ok(Self { names, mats })
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    pub fn matrices(&self) -> &[Mat3<T>] {
        &self.mats
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// The word spelled by letter indices, with its product.
    pub fn word(&self, letters: &[usize]) -> ProductWord<T> {
        let product = letters.iter().fold(Mat3::identity(), |acc, &i| acc * self.mats[i]);
        ProductWord { letters: letters.to_vec(), product }
    }

    pub fn letter_names(&self, letters: &[usize]) -> Vec<String> {
        letters.iter().map(|&i| self.names[i].clone()).collect()
    }
}

impl MatrixFamily<i64> {
    /// `{MA, MB}` in exact integers.
    pub fn rudin_shapiro_exact() -> Self {
        Self { names: vec!["MA".into(), "MB".into()], mats: vec![ma(), mb()] }
    }
}

impl<T: Real> MatrixFamily<T> {
    /// `{MA, MB}` over `T`.
    pub fn rudin_shapiro_pair() -> Self {
        let exact = MatrixFamily::<i64>::rudin_shapiro_exact();
        Self { names: exact.names, mats: exact.mats.iter().map(|m| m.map(real_of::<T, i64>)).collect() }
    }

    /// Conjugates every member by `D = diag(1, 1, s)`: `X -> D X D^{-1}`.
    /// Spectral radii are unchanged; operator norms are not.
    pub fn rescaled(&self, s: T) -> Result<Self> {
        if !s.is_finite() || s <= T::zero() {
            return Err(Error::Degenerate("norm scale must be positive and finite"));
        }
        let d = [T::one(), T::one(), s];
        let mats = self
            .mats
            .iter()
            .map(|m| {
                let mut out = *m;
                for (i, row) in out.0.iter_mut().enumerate() {
                    for (j, x) in row.iter_mut().enumerate() {
                        *x = *x * d[i] / d[j];
                    }
                }
                out
            })
            .collect();
        Ok(Self { names: self.names.clone(), mats })
    }

    pub fn scaled_down(&self, by: T) -> Self {
        Self { names: self.names.clone(), mats: self.mats.iter().map(|m| m.scale(T::one() / by)).collect() }
    }
}

/// A word over a family with its product, multiplied left to right.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductWord<T> {
    pub letters: Vec<usize>,
    pub product: Mat3<T>,
}

impl<T: Copy + Num> ProductWord<T> {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl<T: Real> ProductWord<T> {
    /// `rho(product)^{1/len}`.
    pub fn normalized_radius(&self) -> T {
        spectral_radius(&self.product).powf(T::one() / real_of::<T, usize>(self.len()))
    }
}

/// Outcome of the common-invariant-subspace test.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Irreducibility<T> {
    pub irreducible: bool,
    /// A common eigenvector (dimension 1) or the normal of a common
    /// invariant plane (dimension 2).
    pub witness: Option<Vec3<T>>,
    pub invariant_dim: Option<usize>,
}

fn real_eigenvalues<T: Real>(m: &Mat3<T>) -> Vec<T> {
    let scale = m.max_abs().max(T::one());
    eigenvalues(m).iter().filter(|z| z.im.abs() <= lit::<T>(1e-7) * scale).map(|z| z.re).collect()
}

/// A vector `v` with `(X_i - mu_i) v = 0` for every member, if one exists
/// for some choice of real eigenvalues `mu_i`.
fn common_eigenvector<T: Real>(mats: &[Mat3<T>]) -> Option<Vec3<T>> {
    let spectra: Vec<Vec<T>> = mats.iter().map(real_eigenvalues).collect();
    if spectra.iter().any(|s| s.is_empty()) {
        return None;
    }
    let scale = mats.iter().map(|m| m.max_abs()).fold(T::one(), T::max);
    let tol = lit::<T>(1e-9) * scale * scale;
    let mut choice = vec![0usize; mats.len()];
    loop {
        let stacked_gram = mats.iter().zip(&choice).zip(&spectra).fold(Mat3::zero(), |acc, ((m, &c), s)| {
            let shifted = *m - Mat3::identity().scale(s[c]);
            acc + gram(&shifted)
        });
        let smallest = symmetric_eigenvalues(&stacked_gram)[2];
        if smallest <= tol {
            let v = eigenvector(&stacked_gram, num_complex::Complex::new(smallest, T::zero()));
            return Some(v.map(|z| z.re).normalized());
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return None;
            }
            choice[i] += 1;
            if choice[i] < spectra[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Tests for a common invariant subspace of dimension one (a shared
/// eigenvector) or two (a shared eigenvector of the transposes).
pub fn irreducibility_check<T: Real>(family: &MatrixFamily<T>) -> Irreducibility<T> {
    if let Some(v) = common_eigenvector(family.matrices()) {
        return Irreducibility { irreducible: false, witness: Some(v), invariant_dim: Some(1) };
    }
    let transposed: Vec<Mat3<T>> = family.matrices().iter().map(|m| m.transpose()).collect();
    if let Some(v) = common_eigenvector(&transposed) {
        return Irreducibility { irreducible: false, witness: Some(v), invariant_dim: Some(2) };
    }
    Irreducibility { irreducible: true, witness: None, invariant_dim: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrec::{A, B};
    use crate::specbounds::eigen_constants;

    fn fam(mats: &[Mat3<i64>]) -> MatrixFamily<f64> {
        MatrixFamily::new(
            mats.iter().enumerate().map(|(i, m)| (format!("X{i}"), m.map(|x| x as f64))).collect(),
        )
        .unwrap()
    }

    #[test]
    fn radii() {
        let l = eigen_constants::<f64>().lambda;
        let f = MatrixFamily::<f64>::rudin_shapiro_pair();
        assert!((spectral_radius(&f.matrices()[0]) - l).abs() < 1e-12);
        assert!((spectral_radius(&f.matrices()[1]) - 1.0).abs() < 1e-12);
        assert!((spectral_radius(&Mat3::<f64>::identity()) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pair_is_irreducible() {
        let r = irreducibility_check(&MatrixFamily::<f64>::rudin_shapiro_pair());
        assert!(r.irreducible);
        assert_eq!(r.witness, None);
    }

    #[test]
    fn identity_pair_is_reducible() {
        let i = Mat3::<i64>::identity();
        assert!(!irreducibility_check(&fam(&[i, i])).irreducible);
    }

    #[test]
    fn swap_and_projection_share_the_third_axis() {
        let r = irreducibility_check(&fam(&[A, B]));
        assert!(!r.irreducible);
        let w = r.witness.unwrap();
        assert_eq!(r.invariant_dim, Some(1));
        assert!((w[2].abs() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn invariant_plane_detected() {
        // both preserve the plane z = 0 but share no eigenvector
        let x = Mat3([[0, -1, 5], [1, 0, 0], [0, 0, 2]]);
        let y = Mat3([[2, 1, 0], [1, 1, 0], [0, 0, 3]]);
        let r = irreducibility_check(&fam(&[x, y]));
        assert!(!r.irreducible);
        assert_eq!(r.invariant_dim, Some(2));
    }

    #[test]
    fn rescaling_preserves_radii() {
        let f = MatrixFamily::<f64>::rudin_shapiro_pair();
        let g = f.rescaled(0.5).unwrap();
        for (a, b) in f.matrices().iter().zip(g.matrices()) {
            assert!((spectral_radius(a) - spectral_radius(b)).abs() < 1e-12);
        }
        assert!(f.rescaled(0.0).is_err());
    }
}

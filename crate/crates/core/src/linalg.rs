//! Fixed-size 3-vectors and 3x3 matrices over any numeric scalar.
//!
//! The same [`Mat3`] type carries exact integer products (`Mat3<i64>`),
//! real matrices (`Mat3<f64>`) and the complex diagonalizations
//! (`Mat3<Complex<f64>>`).

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{CheckedAdd, CheckedMul, Num, NumCast, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::roots;
use crate::scalar::{lit, real_of, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct Vec3<T>(pub [T; 3]);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct Mat3<T>(pub [[T; 3]; 3]);

impl<T: Copy> Vec3<T> {
    pub const fn new(x: T, y: T, z: T) -> Self {
        Vec3([x, y, z])
    }

    pub fn map<U>(self, f: impl Fn(T) -> U) -> Vec3<U> {
        Vec3([f(self.0[0]), f(self.0[1]), f(self.0[2])])
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.0.iter()
    }
}

impl<T: Copy + Num> Vec3<T> {
    pub fn zero() -> Self {
        Vec3([T::zero(); 3])
    }

    pub fn dot(&self, other: &Self) -> T {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn cross(&self, other: &Self) -> Self {
        let [a0, a1, a2] = self.0;
        let [b0, b1, b2] = other.0;
        Vec3([a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0])
    }

    pub fn scale(self, s: T) -> Self {
        self.map(|x| x * s)
    }

    pub fn cast<U: NumCast + Copy>(self) -> Option<Vec3<U>>
    where
        T: ToPrimitive,
    {
        Some(Vec3([U::from(self.0[0])?, U::from(self.0[1])?, U::from(self.0[2])?]))
    }
}

impl<T: Real> Vec3<T> {
    pub fn norm(&self) -> T {
        self.dot(self).sqrt()
    }

    pub fn normalized(self) -> Self {
        let n = self.norm();
        self.map(|x| x / n)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        (0..3).fold(T::zero(), |acc, i| acc.max((self.0[i] - other.0[i]).abs()))
    }
}

impl<T> Index<usize> for Vec3<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T> IndexMut<usize> for Vec3<T> {
    fn index_mut(&mut self, i: usize) -> &mut T {
        &mut self.0[i]
    }
}

impl<T: Copy + Num> Add for Vec3<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Vec3([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1], self.0[2] + rhs.0[2]])
    }
}

impl<T: Copy + Num> Sub for Vec3<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Vec3([self.0[0] - rhs.0[0], self.0[1] - rhs.0[1], self.0[2] - rhs.0[2]])
    }
}

impl<T: Copy + Neg<Output = T>> Neg for Vec3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Vec3([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl<T: Copy> Mat3<T> {
    pub const fn from_rows(rows: [[T; 3]; 3]) -> Self {
        Mat3(rows)
    }

    pub fn map<U>(self, f: impl Fn(T) -> U) -> Mat3<U> {
        let r = self.0;
        Mat3([
            [f(r[0][0]), f(r[0][1]), f(r[0][2])],
            [f(r[1][0]), f(r[1][1]), f(r[1][2])],
            [f(r[2][0]), f(r[2][1]), f(r[2][2])],
        ])
    }

    pub fn row(&self, i: usize) -> Vec3<T> {
        Vec3(self.0[i])
    }

    pub fn col(&self, j: usize) -> Vec3<T> {
        Vec3([self.0[0][j], self.0[1][j], self.0[2][j]])
    }

    pub fn transpose(&self) -> Self {
        let r = self.0;
        Mat3([[r[0][0], r[1][0], r[2][0]], [r[0][1], r[1][1], r[2][1]], [r[0][2], r[1][2], r[2][2]]])
    }

    pub fn entries(&self) -> impl Iterator<Item = T> + '_ {
        self.0.iter().flat_map(|r| r.iter().copied())
    }
}

impl<T: Copy + Num> Mat3<T> {
    pub fn zero() -> Self {
        Mat3([[T::zero(); 3]; 3])
    }

    pub fn identity() -> Self {
        Self::diagonal([T::one(); 3])
    }

    pub fn diagonal(d: [T; 3]) -> Self {
        let z = T::zero();
        Mat3([[d[0], z, z], [z, d[1], z], [z, z, d[2]]])
    }

    pub fn trace(&self) -> T {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn det(&self) -> T {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Sum of the three principal 2x2 minors.
    pub fn minor_sum(&self) -> T {
        let m = &self.0;
        (m[0][0] * m[1][1] - m[0][1] * m[1][0])
            + (m[0][0] * m[2][2] - m[0][2] * m[2][0])
            + (m[1][1] * m[2][2] - m[1][2] * m[2][1])
    }

    /// Coefficients `[a, b, c]` of the monic characteristic polynomial
    /// `x^3 + a x^2 + b x + c`.
    pub fn char_poly(&self) -> [T; 3] {
        [T::zero() - self.trace(), self.minor_sum(), T::zero() - self.det()]
    }

    pub fn scale(self, s: T) -> Self {
        self.map(|x| x * s)
    }

    /// `self^n` by repeated squaring; `self^0` is the identity.
    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = *self;
        let mut acc = Self::identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }

    pub fn cast<U: NumCast + Copy>(self) -> Option<Mat3<U>>
    where
        T: ToPrimitive,
    {
        let mut out = [[None, None, None], [None, None, None], [None, None, None]];
        for (i, row) in self.0.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                out[i][j] = U::from(x);
            }
        }
        let [r0, r1, r2] = out;
        Some(Mat3([[r0[0]?, r0[1]?, r0[2]?], [r1[0]?, r1[1]?, r1[2]?], [r2[0]?, r2[1]?, r2[2]?]]))
    }
}

impl<T: Copy + Num + CheckedMul + CheckedAdd> Mat3<T> {
    /// Exact product that reports overflow instead of wrapping.
    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = T::zero();
                for k in 0..3 {
                    let term = self.0[i][k].checked_mul(&rhs.0[k][j]).ok_or(Error::Overflow)?;
                    acc = acc.checked_add(&term).ok_or(Error::Overflow)?;
                }
                out.0[i][j] = acc;
            }
        }
        Ok(out)
    }

    pub fn checked_pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::identity();
        for _ in 0..n {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }
}

impl<T: Real> Mat3<T> {
    pub fn max_abs(&self) -> T {
        self.entries().fold(T::zero(), |acc, x| acc.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        (*self - *other).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.entries().all(|x| x.is_finite())
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d == T::zero() || !d.is_finite() {
            return None;
        }
        Some(adjugate(self).scale(T::one() / d))
    }
}

impl<T: Copy + Num> Mul for Mat3<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] =
                    self.0[i][0] * rhs.0[0][j] + self.0[i][1] * rhs.0[1][j] + self.0[i][2] * rhs.0[2][j];
            }
        }
        out
    }
}

impl<T: Copy + Num> Mul<Vec3<T>> for Mat3<T> {
    type Output = Vec3<T>;
    fn mul(self, v: Vec3<T>) -> Vec3<T> {
        Vec3([self.row(0).dot(&v), self.row(1).dot(&v), self.row(2).dot(&v)])
    }
}

impl<T: Copy + Num> Add for Mat3<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] = self.0[i][j] + rhs.0[i][j];
            }
        }
        out
    }
}

impl<T: Copy + Num> Sub for Mat3<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] = self.0[i][j] - rhs.0[i][j];
            }
        }
        out
    }
}

impl<T: Copy + Neg<Output = T>> Neg for Mat3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|x| -x)
    }
}

impl<T> Index<(usize, usize)> for Mat3<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.0[i][j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat3<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.0[i][j]
    }
}

/// Inverse of a complex matrix, `None` when singular.
pub fn complex_inverse<T: Real>(m: &Mat3<Complex<T>>) -> Option<Mat3<Complex<T>>> {
    let d = m.det();
    if d.norm() == T::zero() || !d.norm().is_finite() {
        return None;
    }
    Some(adjugate(m).map(|z| z / d))
}

fn adjugate<T: Copy + Num>(m: &Mat3<T>) -> Mat3<T> {
    let c =
        |r0: usize, r1: usize, c0: usize, c1: usize| m.0[r0][c0] * m.0[r1][c1] - m.0[r0][c1] * m.0[r1][c0];
    Mat3([
        [c(1, 2, 1, 2), c(0, 2, 2, 1), c(0, 1, 1, 2)],
        [c(1, 2, 2, 0), c(0, 2, 0, 2), c(0, 1, 2, 0)],
        [c(1, 2, 0, 1), c(0, 2, 1, 0), c(0, 1, 0, 1)],
    ])
}

/// `A^T A`.
pub fn gram<T: Copy + Num>(m: &Mat3<T>) -> Mat3<T> {
    m.transpose() * *m
}

/// Square root of the sum of squared entries.
pub fn frobenius_norm<T: Real>(m: &Mat3<T>) -> T {
    m.entries().fold(T::zero(), |acc, x| acc + x * x).sqrt()
}

/// Frobenius norm of an integer matrix; the sum of squares is accumulated
/// exactly before the single square root.
pub fn frobenius_norm_exact<T: Real>(m: &Mat3<i64>) -> T {
    let sum: i128 = m.entries().map(|x| (x as i128) * (x as i128)).sum();
    real_of::<T, _>(sum).sqrt()
}

/// Eigenvalues of a real symmetric 3x3 matrix in descending order.
///
/// Closed-form trigonometric solution of the characteristic cubic, with each
/// root polished by Newton steps on the same cubic.
pub fn symmetric_eigenvalues<T: Real>(s: &Mat3<T>) -> [T; 3] {
    let three = lit::<T>(3.0);
    let two = lit::<T>(2.0);
    let six = lit::<T>(6.0);
    let off = s[(0, 1)] * s[(0, 1)] + s[(0, 2)] * s[(0, 2)] + s[(1, 2)] * s[(1, 2)];
    let q = s.trace() / three;
    let dev = (s[(0, 0)] - q).powi(2) + (s[(1, 1)] - q).powi(2) + (s[(2, 2)] - q).powi(2) + two * off;
    if dev == T::zero() {
        return [q, q, q];
    }
    let p = (dev / six).sqrt();
    let shifted = (*s - Mat3::identity().scale(q)).scale(T::one() / p);
    let r = (shifted.det() / two).max(-T::one()).min(T::one());
    let phi = r.acos() / three;
    let third_turn = two * T::PI() / three;
    let e0 = q + two * p * phi.cos();
    let e2 = q + two * p * (phi + third_turn).cos();
    let e1 = three * q - e0 - e2;

    let coeffs = s.char_poly();
    let mut out = [e0, e1, e2].map(|e| roots::newton_polish(&coeffs, e));
    out.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    out
}

/// Largest singular value: the square root of the top eigenvalue of `A^T A`.
pub fn spectral_norm<T: Real>(m: &Mat3<T>) -> Result<T> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let top = symmetric_eigenvalues(&gram(m))[0];
    Ok(top.max(T::zero()).sqrt())
}

/// Eigenvalues of a real 3x3 matrix as roots of its characteristic cubic.
pub fn eigenvalues<T: Real>(m: &Mat3<T>) -> [Complex<T>; 3] {
    let [a, b, c] = m.char_poly();
    roots::cubic_roots(a, b, c)
}

/// Largest eigenvalue modulus.
pub fn spectral_radius<T: Real>(m: &Mat3<T>) -> T {
    eigenvalues(m).iter().fold(T::zero(), |acc, z| acc.max(z.norm()))
}

/// An eigenvector of `m` for the eigenvalue `mu`.
///
/// Taken as the cross product of the two rows of `m - mu I` that span the
/// largest area; when the eigenspace is at least two-dimensional the rows are
/// (nearly) parallel and a vector orthogonal to the dominant row is used.
pub fn eigenvector<T: Real>(m: &Mat3<T>, mu: Complex<T>) -> Vec3<Complex<T>> {
    let shifted: Mat3<Complex<T>> = m.map(|x| Complex::new(x, T::zero())) - Mat3::identity().scale(mu);
    null_vector(&shifted)
}

fn cnorm<T: Real>(v: &Vec3<Complex<T>>) -> T {
    v.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
}

fn null_vector<T: Real>(a: &Mat3<Complex<T>>) -> Vec3<Complex<T>> {
    let rows = [a.row(0), a.row(1), a.row(2)];
    let scale = rows.iter().map(cnorm).fold(T::zero(), T::max);
    let one = Complex::new(T::one(), T::zero());
    let zero = Complex::new(T::zero(), T::zero());
    if scale == T::zero() {
        return Vec3([one, zero, zero]);
    }
    let candidates = [rows[0].cross(&rows[1]), rows[0].cross(&rows[2]), rows[1].cross(&rows[2])];
    let (best, best_norm) = candidates
        .iter()
        .map(|c| (*c, cnorm(c)))
        .fold((candidates[0], T::neg_infinity()), |acc, c| if c.1 > acc.1 { c } else { acc });
    if best_norm > lit::<T>(1e3) * T::epsilon() * scale * scale {
        return best.map(|z| z / best_norm);
    }
    // Rank one (or numerically so): anything orthogonal to the dominant row.
    let dominant = rows.iter().copied().fold(rows[0], |acc, r| if cnorm(&r) > cnorm(&acc) { r } else { acc });
    let axes = [Vec3([one, zero, zero]), Vec3([zero, one, zero]), Vec3([zero, zero, one])];
    let v = axes.iter().map(|e| dominant.cross(e)).fold(dominant.cross(&axes[0]), |acc, c| {
        if cnorm(&c) > cnorm(&acc) {
            c
        } else {
            acc
        }
    });
    let n = cnorm(&v);
    v.map(|z| z / n)
}

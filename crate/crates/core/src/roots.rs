//! Roots of real cubics: bracketed bisection for one real root, then
//! deflation to a quadratic for the remaining pair.

use num_complex::Complex;

use crate::scalar::{lit, Real};

/// Evaluates the monic cubic `x^3 + a x^2 + b x + c`.
#[inline]
pub fn eval_monic<T: Real>(coeffs: &[T; 3], x: T) -> T {
    let [a, b, c] = *coeffs;
    ((x + a) * x + b) * x + c
}

#[inline]
fn eval_derivative<T: Real>(coeffs: &[T; 3], x: T) -> T {
    let [a, b, _] = *coeffs;
    (lit::<T>(3.0) * x + lit::<T>(2.0) * a) * x + b
}

/// Bisects `f` on `[lo, hi]`, which must bracket a sign change.
///
/// Runs until the midpoint is no longer representable strictly between the
/// endpoints, so the result is accurate to the last bit of the bracket.
pub fn bisect<T: Real>(f: impl Fn(T) -> T, mut lo: T, mut hi: T) -> T {
    let mut f_lo = f(lo);
    if f_lo == T::zero() {
        return lo;
    }
    if f(hi) == T::zero() {
        return hi;
    }
    let two = lit::<T>(2.0);
    for _ in 0..2100 {
        let mid = lo + (hi - lo) / two;
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == T::zero() {
            return mid;
        }
        if (f_mid < T::zero()) == (f_lo < T::zero()) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let (flo, fhi) = (f(lo).abs(), f(hi).abs());
    if flo <= fhi {
        lo
    } else {
        hi
    }
}

/// A real root of `x^3 + a x^2 + b x + c`, bracketed by the Cauchy bound.
pub fn real_cubic_root<T: Real>(a: T, b: T, c: T) -> T {
    let coeffs = [a, b, c];
    let bound = T::one() + a.abs().max(b.abs()).max(c.abs());
    bisect(|x| eval_monic(&coeffs, x), -bound, bound)
}

/// Newton iterations on the monic cubic starting at `x`, kept only while the
/// residual strictly decreases.
pub fn newton_polish<T: Real>(coeffs: &[T; 3], mut x: T) -> T {
    let mut r = eval_monic(coeffs, x).abs();
    for _ in 0..8 {
        if r == T::zero() {
            break;
        }
        let d = eval_derivative(coeffs, x);
        if d == T::zero() || !d.is_finite() {
            break;
        }
        let next = x - eval_monic(coeffs, x) / d;
        let r_next = eval_monic(coeffs, next).abs();
        if r_next.is_nan() || r_next >= r {
            break;
        }
        x = next;
        r = r_next;
    }
    x
}

/// Coefficients `(p, q)` of the quotient `x^2 + p x + q` after dividing
/// `x^3 + a x^2 + b x + c` by `x - r`.
pub fn deflate<T: Real>(a: T, b: T, r: T) -> (T, T) {
    let p = a + r;
    (p, b + r * p)
}

/// Roots of `x^2 + p x + q`; a complex pair is returned with the
/// negative-imaginary root first.
pub fn quadratic_roots<T: Real>(p: T, q: T) -> [Complex<T>; 2] {
    let two = lit::<T>(2.0);
    let half_p = p / two;
    let disc = half_p * half_p - q;
    if disc >= T::zero() {
        let s = disc.sqrt();
        // Avoid cancellation: compute the larger-magnitude root first.
        let big = if half_p >= T::zero() { -half_p - s } else { -half_p + s };
        let small = if big == T::zero() { T::zero() } else { q / big };
        [Complex::new(big, T::zero()), Complex::new(small, T::zero())]
    } else {
        let im = (-disc).sqrt();
        [Complex::new(-half_p, -im), Complex::new(-half_p, im)]
    }
}

/// All three roots of `x^3 + a x^2 + b x + c`, the bisected real root first.
pub fn cubic_roots<T: Real>(a: T, b: T, c: T) -> [Complex<T>; 3] {
    let r = newton_polish(&[a, b, c], real_cubic_root(a, b, c));
    let (p, q) = deflate(a, b, r);
    let [z1, z2] = quadratic_roots(p, q);
    [Complex::new(r, T::zero()), z1, z2]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_sqrt2() {
        let r = bisect(|x: f64| x * x - 2.0, 0.0, 2.0);
        assert!((r - 2f64.sqrt()).abs() <= f64::EPSILON);
    }

    #[test]
    fn cubic_with_three_real_roots() {
        // (x-1)(x-2)(x+3) = x^3 - 7x + 6
        let mut roots: Vec<f64> = cubic_roots(0.0, -7.0, 6.0).iter().map(|z| z.re).collect();
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (got, want) in roots.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-13);
        }
    }

    #[test]
    fn cubic_with_complex_pair() {
        // (x-1)(x^2+1) = x^3 - x^2 + x - 1
        let z = cubic_roots(-1.0f64, 1.0, -1.0);
        assert!((z[0].re - 1.0).abs() < 1e-15);
        assert!((z[1] - Complex::new(0.0, -1.0)).norm() < 1e-14);
        assert!((z[2] - Complex::new(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn quadratic_avoids_cancellation() {
        // roots 1e8 and 1e-8
        let [a, b] = quadratic_roots(-(1e8f64 + 1e-8), 1.0);
        assert!((a.re - 1e8).abs() < 1e-6);
        assert!((b.re - 1e-8).abs() < 1e-22);
    }

    #[test]
    fn double_root_at_zero() {
        // x^2 (x+1)
        let z = cubic_roots(1.0, 0.0, 0.0);
        let max = z.iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!((max - 1.0).abs() < 1e-15);
    }
}

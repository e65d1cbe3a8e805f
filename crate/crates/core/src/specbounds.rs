//! Norm bounds on products of `MA` and `MB`, the eigenstructure of the
//! cubic `x^3 + x^2 - 2x - 4`, and the ratios `max_k |C_m(k)| / lambda^m`.

use num_complex::Complex;
use serde::Serialize;

use crate::autocorr::{aperiodic_table_fast, AutocorrTable};
use crate::error::{Error, Result};
use crate::format::ser_sig;
use crate::linalg::{complex_inverse, frobenius_norm_exact, spectral_norm, Mat3, Vec3};
use crate::matrec::{ma, mb, A, M, S};
use crate::roots::{bisect, deflate, newton_polish, quadratic_roots};
use crate::scalar::{lit, real_of, Real};
use crate::IntMat3;

/// Coefficients `[a, b, c]` of `x^3 + x^2 - 2x - 4`.
pub const CUBIC: [f64; 3] = [1.0, -2.0, -4.0];

/// Roots of the cubic and the constants assembled from them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralConstants<T> {
    /// The real root, about 1.659.
    pub lambda: T,
    /// The complex root with negative imaginary part.
    pub nu: Complex<T>,
    /// `(lambda - conj(nu)) (lambda - nu) (conj(nu) - nu)`.
    pub gamma: Complex<T>,
    /// `-2 Re(nu) (2 Re(nu) + |nu|^2 - 1) / gamma`.
    pub a_coeff: Complex<T>,
}

impl<T: Real> SpectralConstants<T> {
    pub fn nu_bar(&self) -> Complex<T> {
        self.nu.conj()
    }

    /// `|p(lambda)|` and `|p(nu)|` for the defining cubic `p`.
    pub fn cubic_residuals(&self) -> (T, T) {
        let [a, b, c] = CUBIC.map(lit::<T>);
        let p = |z: Complex<T>| ((z + a) * z + b) * z + c;
        (p(Complex::new(self.lambda, T::zero())).norm(), p(self.nu).norm())
    }

    /// `lambda + nu + conj(nu)`, which should be `-1`.
    pub fn root_sum(&self) -> T {
        self.lambda + self.nu.re + self.nu.re
    }

    /// `lambda |nu|^2`, which should be `4`.
    pub fn root_product(&self) -> T {
        self.lambda * self.nu.norm_sqr()
    }
}

/// Solves the cubic by bisection on `[1, 2]`, then deflates to the quadratic
/// holding the complex pair.
pub fn eigen_constants<T: Real>() -> SpectralConstants<T> {
    let coeffs = CUBIC.map(lit::<T>);
    let [a, b, c] = coeffs;
    let p = |x: T| ((x + a) * x + b) * x + c;
    let lambda = newton_polish(&coeffs, bisect(p, T::one(), lit(2.0)));
    let (q1, q0) = deflate(a, b, lambda);
    let [nu, _] = quadratic_roots(q1, q0);
    let l = Complex::new(lambda, T::zero());
    let gamma = (l - nu.conj()) * (l - nu) * (nu.conj() - nu);
    let two = lit::<T>(2.0);
    let numer = -two * nu.re * (two * nu.re + nu.norm_sqr() - T::one());
    let a_coeff = Complex::new(numer, T::zero()) / gamma;
    assert!(a_coeff.norm() > T::zero(), "asymptotic coefficient vanished");
    SpectralConstants { lambda, nu, gamma, a_coeff }
}

/// `(MA)^j (MB)^k` in exact integers. `(MB)^k = -(MB)^{k-1}` once `k >= 3`,
/// so only the sign depends on `k` beyond 2.
pub fn power_product(j: u32, k: u32) -> Result<IntMat3> {
    let mb_part = if k <= 2 {
        mb().pow(k)
    } else {
        let sign = if (k - 2).is_multiple_of(2) { 1 } else { -1 };
        mb().pow(2).scale(sign)
    };
    ma().checked_pow(j)?.checked_mul(&mb_part)
}

/// `||(MA)^j (MB)^k||_2`. Falls back to floating-point products when the
/// exact product would overflow 64 bits.
pub fn power_product_norm<T: Real>(j: u32, k: u32) -> Result<T> {
    if j + k == 0 {
        return Err(Error::Degenerate("empty product"));
    }
    match power_product(j, k.min(2)) {
        Ok(p) => spectral_norm(&to_real::<T>(&p)),
        Err(Error::Overflow) => {
            let ma_r = to_real::<T>(&ma());
            let mb_r = to_real::<T>(&mb());
            spectral_norm(&(ma_r.pow(j) * mb_r.pow(k.min(2))))
        }
        Err(e) => Err(e),
    }
}

pub(crate) fn to_real<T: Real>(m: &IntMat3) -> Mat3<T> {
    m.map(real_of::<T, i64>)
}

/// Which inequality a case checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `value <= bound`
    Upper,
    /// `value > bound`
    Lower,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCase {
    pub check: &'static str,
    pub side: Side,
    pub j: Option<u32>,
    pub k: Option<u32>,
    #[serde(serialize_with = "ser_sig")]
    pub norm: f64,
    #[serde(serialize_with = "ser_sig")]
    pub bound: f64,
    /// Slack on the checked side; negative means violated.
    #[serde(serialize_with = "ser_sig")]
    pub margin: f64,
    pub pass: bool,
}

impl BoundCase {
    fn new(check: &'static str, side: Side, jk: Option<(u32, u32)>, norm: f64, bound: f64, tol: f64) -> Self {
        let margin = match side {
            Side::Upper => bound - norm,
            Side::Lower => norm - bound,
        };
        BoundCase {
            check,
            side,
            j: jk.map(|p| p.0),
            k: jk.map(|p| p.1),
            norm,
            bound,
            margin,
            pass: margin >= -tol,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundSummary {
    pub cases: usize,
    pub failures: usize,
    #[serde(serialize_with = "ser_sig")]
    pub tolerance: f64,
    #[serde(serialize_with = "ser_sig")]
    pub lambda: f64,
    /// Largest `||(MA)^j (MB)^k|| / lambda^{j+k}` over the `0.970` sweep.
    #[serde(serialize_with = "ser_sig")]
    pub worst_sweep_ratio: f64,
    pub worst_sweep_case: (u32, u32),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub cases: Vec<BoundCase>,
    pub summary: BoundSummary,
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Quantities behind the rational approximations used for large `j`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DecayDiagnostics {
    /// `|nu / lambda|`
    #[serde(serialize_with = "ser_sig")]
    pub nu_over_lambda: f64,
    /// `|(nu - lambda)(-(nu + lambda + 1))|`, the bracket at `k = 1`.
    #[serde(serialize_with = "ser_sig")]
    pub amplitude_k1: f64,
    /// `|(nu - lambda)((nu + lambda + 1) + (2 + nu lambda))|`, the bracket at `k = 2`.
    #[serde(serialize_with = "ser_sig")]
    pub amplitude_k2: f64,
    /// `|2 Im(nu) (2 Re(nu) + |nu|^2 + 3)|`
    #[serde(serialize_with = "ser_sig")]
    pub constant_term: f64,
}

pub fn decay_diagnostics() -> DecayDiagnostics {
    let c = eigen_constants::<f64>();
    let (l, nu) = (c.lambda, c.nu);
    let lc = Complex::new(l, 0.0);
    let one = Complex::new(1.0, 0.0);
    let two = Complex::new(2.0, 0.0);
    DecayDiagnostics {
        nu_over_lambda: nu.norm() / l,
        amplitude_k1: ((nu - lc) * (nu + lc + one)).norm(),
        amplitude_k2: ((nu - lc) * ((nu + lc + one) + (two + nu * lc))).norm(),
        constant_term: (2.0 * nu.im * (2.0 * nu.re + nu.norm_sqr() + 3.0)).abs(),
    }
}

/// Checks every norm inequality on `(MA)^j (MB)^k` with slack `tol` on the stated
/// side, together with the numeric constants of its asymptotic argument.
pub fn verify_lemma4(tol: f64) -> Result<BoundReport> {
    let lambda = eigen_constants::<f64>().lambda;
    let mut cases = Vec::new();
    let mut worst = (0.0f64, (0, 0));

    let sweep = (2..=21u32).flat_map(|j| [(j, 1), (j, 2)]).chain([(1, 2)]);
    for (j, k) in sweep {
        let norm = power_product_norm::<f64>(j, k)?;
        let scale = lambda.powi((j + k) as i32);
        if norm / scale > worst.0 {
            worst = (norm / scale, (j, k));
        }
        cases.push(BoundCase::new("sweep_0.970", Side::Upper, Some((j, k)), norm, 0.970 * scale, tol));
    }

    let mamb = power_product_norm::<f64>(1, 1)?;
    let l2 = lambda * lambda;
    cases.push(BoundCase::new("mamb_lower", Side::Lower, Some((1, 1)), mamb, l2, tol));
    cases.push(BoundCase::new("mamb_upper_1.028", Side::Upper, Some((1, 1)), mamb, 1.028 * l2, tol));

    let sq = spectral_norm(&to_real::<f64>(&(ma() * mb()).pow(2)))?;
    cases.push(BoundCase::new("mamb_squared", Side::Upper, Some((1, 1)), sq, l2 * l2, tol));

    for k in [1, 2] {
        let j = 22;
        let w = power_product(j, k)?;
        let frob = frobenius_norm_exact::<f64>(&w) / lambda.powi(j as i32 + 1);
        cases.push(BoundCase::new("frobenius_j22", Side::Upper, Some((j, k)), frob, 0.970, tol));
    }

    let d = decay_diagnostics();
    cases.push(BoundCase::new("nu_over_lambda", Side::Upper, None, d.nu_over_lambda, 0.936, tol));
    cases.push(BoundCase::new("amplitude_k1", Side::Upper, None, d.amplitude_k1, 7.461, tol));
    cases.push(BoundCase::new("amplitude_k2", Side::Upper, None, d.amplitude_k2, 7.461, tol));
    cases.push(BoundCase::new("constant_term", Side::Upper, None, d.constant_term, 4.416, tol));

    let failures = cases.iter().filter(|c| !c.pass).count();
    let summary = BoundSummary {
        cases: cases.len(),
        failures,
        tolerance: tol,
        lambda,
        worst_sweep_ratio: worst.0,
        worst_sweep_case: worst.1,
    };
    Ok(BoundReport { cases, summary })
}

/// The three diagonalized matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Diagonalized {
    MA,
    M,
    AM,
}

impl Diagonalized {
    pub const ALL: [Diagonalized; 3] = [Diagonalized::MA, Diagonalized::M, Diagonalized::AM];

    pub fn matrix(self) -> IntMat3 {
        match self {
            Diagonalized::MA => ma(),
            Diagonalized::M => M,
            Diagonalized::AM => A * M,
        }
    }
}

fn c<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

/// Published eigenvector matrix `P` and eigenvalues (diagonal of `D` at
/// power one).
pub fn published_eigen<T: Real>(which: Diagonalized) -> (Mat3<Complex<T>>, [Complex<T>; 3]) {
    let k = eigen_constants::<T>();
    let (l, nu, nb) = (c(k.lambda), k.nu, k.nu_bar());
    let two = c(lit::<T>(2.0));
    let one = c(T::one());
    match which {
        Diagonalized::MA => (
            Mat3([[two - l * l, two - nb * nb, two - nu * nu], [-l, -nb, -nu], [one, one, one]]),
            [-l, -nb, -nu],
        ),
        Diagonalized::M => {
            (Mat3([[l, nu, nb], [l * l - two, nu * nu - two, nb * nb - two], [one, one, one]]), [l, nu, nb])
        }
        Diagonalized::AM => (
            Mat3([[-l, -nb, -nu], [two - l * l, two - nb * nb, two - nu * nu], [one, one, one]]),
            [-l, -nb, -nu],
        ),
    }
}

/// The printed `P^{-1}` (including the `1/gamma` factor).
pub fn published_inverse<T: Real>(which: Diagonalized) -> Mat3<Complex<T>> {
    let k = eigen_constants::<T>();
    let (l, nu, nb) = (c(k.lambda), k.nu, k.nu_bar());
    let two = c(lit::<T>(2.0));
    let rows = match which {
        Diagonalized::MA => [
            [nu - nb, (nb - nu) * (nb + nu), (nb - nu) * (two + nb * nu)],
            [l - nu, (nu - l) * (nu + l), (nu - l) * (two + nu * l)],
            [nb - l, (l - nb) * (l + nb), (l - nb) * (two + l * nb)],
        ],
        Diagonalized::M => [
            [(nb - nu) * (nu + nb), nu - nb, (nu - nb) * (two + nu * nb)],
            [(l - nb) * (l + nb), nb - l, (nb - l) * (two + l * nb)],
            [(nu - l) * (l + nu), l - nu, (l - nu) * (two + l * nu)],
        ],
        Diagonalized::AM => [
            [(nu - nb) * (nu + nb), nb - nu, (nu - nb) * (two + nu * nb)],
            [(l - nb) * (l + nb), nb - l, (l - nb) * (two + l * nb)],
            [(nu - l) * (l + nu), l - nu, (nu - l) * (two + l * nu)],
        ],
    };
    Mat3(rows).map(|z| z / k.gamma)
}

/// `max |P Q - I|` for the printed inverse `Q`; zero when the printed
/// inverse is exact.
pub fn published_inverse_defect<T: Real>(which: Diagonalized) -> T {
    let (p, _) = published_eigen::<T>(which);
    let prod = p * published_inverse::<T>(which);
    (prod - Mat3::identity()).entries().fold(T::zero(), |acc, z| acc.max(z.norm()))
}

/// Largest entrywise difference between the exact integer power `X^j` and
/// `P D^j P^{-1}` built from the printed eigenvectors and eigenvalues, with
/// `P^{-1}` computed from `P`.
pub fn diagonalization_residual<T: Real>(which: Diagonalized, j: u32) -> Result<T> {
    if !(1..=30).contains(&j) {
        return Err(Error::DepthTooLarge { depth: j as usize, cap: 30 });
    }
    let (p, eig) = published_eigen::<T>(which);
    let p_inv = complex_inverse(&p).ok_or(Error::Degenerate("eigenvector matrix is singular"))?;
    let d = Mat3::diagonal(eig.map(|z| z.powu(j)));
    let rebuilt = p * d * p_inv;
    let exact = which.matrix().checked_pow(j)?;
    Ok(rebuilt
        .0
        .iter()
        .flatten()
        .zip(exact.entries())
        .fold(T::zero(), |acc, (z, e)| acc.max((*z - c(real_of::<T, i64>(e))).norm())))
}

/// First entry of `(AM)^{m-2} (-1, 1, 1)`, which equals `C_m(l_m)` at the
/// nearest odd shift to `2^{m+1}/3`.
pub fn lower_bound_value(m: u32) -> Result<i64> {
    if m < 3 {
        return Err(Error::OrderTooSmall { m, min: 3 });
    }
    let am = A * M;
    let p = am.checked_pow(m - 2)?;
    Ok((p * Vec3([-1, 1, 1]))[0])
}

/// Exact split of `f(n) = [1 0 0] (AM)^n (-1, 1, 1)` along the eigenvalues
/// `-lambda, -nu, -conj(nu)` of `AM`: `f(n) = alpha (-lambda)^n + 2 Re(beta (-nu)^n)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LowerBoundAsymptotics<T> {
    pub alpha: T,
    pub beta: Complex<T>,
    pub lambda: T,
    pub nu: Complex<T>,
}

impl<T: Real> LowerBoundAsymptotics<T> {
    /// `alpha (-lambda)^n + 2 Re(beta (-nu)^n)`.
    pub fn predict(&self, n: u32) -> T {
        let dominant = self.alpha * (-self.lambda).powi(n as i32);
        let osc = self.beta * (-self.nu).powu(n);
        dominant + lit::<T>(2.0) * osc.re
    }

    /// Bound on the non-dominant part at power `n`: `2 |beta| |nu|^n`.
    pub fn oscillation_bound(&self, n: u32) -> T {
        lit::<T>(2.0) * self.beta.norm() * self.nu.norm().powi(n as i32)
    }
}

pub fn lower_bound_asymptotics<T: Real>() -> LowerBoundAsymptotics<T> {
    let k = eigen_constants::<T>();
    let (mu1, mu2, mu3) = (c(-k.lambda), -k.nu, -k.nu_bar());
    let am = A * M;
    let w = Vec3([-1, 1, 1]);
    let f = [w[0], (am * w)[0], (am * am * w)[0]].map(|x| c(real_of::<T, i64>(x)));
    let component = |a: Complex<T>, b: Complex<T>, own: Complex<T>| {
        (f[2] - (a + b) * f[1] + a * b * f[0]) / ((own - a) * (own - b))
    };
    let alpha = component(mu2, mu3, mu1).re;
    let beta = component(mu1, mu3, mu2);
    LowerBoundAsymptotics { alpha, beta, lambda: k.lambda, nu: k.nu }
}

/// `max_{k >= 1} |C_m(k)| / lambda^m` for a ready-made aperiodic table.
pub fn max_ratio_from_table<T: Real>(table: &AutocorrTable, lambda: T) -> T {
    let max = table.values().iter().skip(1).map(|v| v.unsigned_abs()).max().unwrap_or(0);
    real_of::<T, u64>(max) / lambda.powi(table.order() as i32)
}

pub fn max_ratio(m: u32) -> Result<f64> {
    if m == 0 {
        return Err(Error::OrderTooSmall { m, min: 1 });
    }
    let table = aperiodic_table_fast(m)?;
    Ok(max_ratio_from_table(&table, eigen_constants::<f64>().lambda))
}

/// Checks that conjugating by `S` preserves spectral norms of every word of
/// length up to `max_len`, and that `S` is an orthogonal involution.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimilarityReport {
    pub words_checked: usize,
    pub involution: bool,
    pub orthogonal: bool,
    #[serde(serialize_with = "ser_sig")]
    pub max_relative_gap: f64,
    pub pass: bool,
}

pub fn verify_similarity(max_len: u32, tol: f64) -> Result<SimilarityReport> {
    let letters = [ma(), mb()];
    let mut level = vec![IntMat3::identity()];
    let mut words = 0;
    let mut gap = 0.0f64;
    for _ in 0..max_len {
        level = level.iter().flat_map(|w| letters.iter().map(move |l| *w * *l)).collect();
        for w in &level {
            let a = spectral_norm(&to_real::<f64>(w))?;
            let b = spectral_norm(&to_real::<f64>(&(S * *w * S)))?;
            gap = gap.max((a - b).abs() / a.max(1.0));
            words += 1;
        }
    }
    let involution = S * S == IntMat3::identity();
    let orthogonal = S.transpose() * S == IntMat3::identity();
    Ok(SimilarityReport {
        words_checked: words,
        involution,
        orthogonal,
        max_relative_gap: gap,
        pass: involution && orthogonal && gap <= tol,
    })
}

//! Fixed 12-significant-digit rendering so that text output is identical
//! across platforms.

/// Significant digits in every printed float.
pub const SIG_DIGITS: usize = 12;

fn scientific(x: f64) -> (String, i32) {
    let s = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = s.split_once('e').expect("scientific notation has an exponent");
    (mantissa.to_string(), exp.parse().expect("exponent is an integer"))
}

/// Renders `x` with exactly 12 significant digits, ties to even.
///
/// Magnitudes in `[1e-5, 1e12)` are written positionally, others in
/// scientific notation.
pub fn fmt_sig(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return format!("0.{}", "0".repeat(SIG_DIGITS - 1));
    }
    let (mantissa, exp) = scientific(x);
    if !(-5..12).contains(&exp) {
        return format!("{mantissa}e{exp}");
    }
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let sign = if negative { "-" } else { "" };
    let body = if exp < 0 {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    } else {
        let point = exp as usize + 1;
        if point >= digits.len() {
            digits
        } else {
            format!("{}.{}", &digits[..point], &digits[point..])
        }
    };
    format!("{sign}{body}")
}

/// `x` rounded to 12 significant digits, for serializers that print the
/// shortest round-trip representation.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    let (mantissa, exp) = scientific(x);
    format!("{mantissa}e{exp}").parse().expect("round trip of formatted float")
}

/// Serde helper: `#[serde(serialize_with = "crate::format::ser_sig")]`.
pub fn ser_sig<S: serde::Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig(*x))
}

/// Serde helper for float slices and vectors.
pub fn ser_sig_seq<S: serde::Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|&x| round_sig(x)))
}

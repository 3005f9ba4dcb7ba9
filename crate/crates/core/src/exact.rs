//! Exact decimal and rational helpers for region boundaries.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Parses a decimal literal (`"0.7"`, `"-1.25e-3"`, `"3"`) into the exact rational it names.
pub fn parse_decimal(text: &str) -> Result<BigRational> {
    let bad = || Error::Domain(format!("'{text}' is not a decimal number"));
    let t = text.trim();
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => (&t[..pos], t[pos + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut numer: BigInt = if all.is_empty() {
        BigInt::zero()
    } else {
        all.parse().map_err(|_| bad())?
    };
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// The decimal a double prints as (shortest round-trip form), as an exact rational.
///
/// `0.1` maps to `1/10`, not to the nearest dyadic, so user-facing boundaries
/// such as `|Y_1/N - 0.7| > 0.1` are decided the way they are written.
pub fn decimal_rational(x: f64) -> BigRational {
    assert!(x.is_finite(), "non-finite boundary value");
    parse_decimal(&format!("{x}")).expect("Display of f64 is a decimal literal")
}

pub fn frame_ratio(part: u32, n: u32) -> BigRational {
    BigRational::new(BigInt::from(part), BigInt::from(n))
}

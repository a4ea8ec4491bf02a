//! Exact rational helpers: strict `p/q` parsing and rendering.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Always in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses an exact fraction `p/q`. Decimal notation is rejected.
pub fn parse_fraction(text: &str) -> Result<Rational> {
    let bad = || Error::Domain(format!("expected an exact fraction p/q, got {text:?}"));
    let (num, den) = text.trim().split_once('/').ok_or_else(bad)?;
    let digits = |s: &str| {
        let s = s.strip_prefix('-').unwrap_or(s);
        !s.is_empty() && s.bytes().all(|c| c.is_ascii_digit())
    };
    if !digits(num) || !digits(den) {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Domain(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(num, den))
}

/// `num/den`, with the denominator written even when it is 1.
pub fn format_exact(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Decimal rounded half-up to 12 significant digits. Approximate by
/// construction; exact values come from [`format_exact`].
pub fn approx_decimal(value: &Rational) -> String {
    const DIGITS: u32 = 12;
    if value.is_zero() {
        return "0".to_string();
    }
    let sign = if value.is_negative() { "-" } else { "" };
    let magnitude = value.abs();
    let ten = BigInt::from(10);

    // smallest e with |v| < 10^(e+1)
    let mut exponent: i64 =
        magnitude.numer().to_string().len() as i64 - magnitude.denom().to_string().len() as i64;
    while pow10(exponent + 1) <= magnitude {
        exponent += 1;
    }
    while pow10(exponent) > magnitude {
        exponent -= 1;
    }

    let shift = DIGITS as i64 - 1 - exponent;
    let scaled = magnitude * pow10(shift);
    let half = ratio(1, 2);
    let mut digits = (scaled + half).floor().to_integer();
    if digits == ten.pow(DIGITS) {
        digits = digits.div_floor(&ten);
        exponent += 1;
    }
    let digits = digits.to_string();

    let body = if exponent >= DIGITS as i64 - 1 {
        format!(
            "{digits}{}",
            "0".repeat((exponent - (DIGITS as i64 - 1)) as usize)
        )
    } else if exponent >= 0 {
        let (int, frac) = digits.split_at(exponent as usize + 1);
        format!("{int}.{frac}")
    } else {
        format!("0.{}{digits}", "0".repeat((-exponent - 1) as usize))
    };
    format!("{sign}{body}")
}

fn pow10(exponent: i64) -> Rational {
    let p = BigInt::from(10).pow(exponent.unsigned_abs() as u32);
    if exponent >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

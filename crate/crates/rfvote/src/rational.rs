//! Exact rational scalars: parsing, powers, binomials, decimal rendering.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// The scalar type used throughout the crate.
pub type Rational = num_rational::BigRational;

/// Shorthand for a rational from a machine integer.
pub fn rat(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `p/q` from machine integers; `denom` must be nonzero.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Binomial coefficient `C(n, k)` as an exact integer rational.
pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    Rational::from_integer(num_integer::binomial(BigInt::from(n), BigInt::from(k)))
}

/// `base^exp` for a signed integer exponent; `base` must be nonzero when
/// `exp < 0`.
pub fn pow(base: &Rational, exp: i64) -> Rational {
    let mut result = Rational::one();
    let mut square = if exp < 0 {
        Rational::one() / base
    } else {
        base.clone()
    };
    let mut remaining = exp.unsigned_abs();
    while remaining > 0 {
        if remaining & 1 == 1 {
            result *= &square;
        }
        remaining >>= 1;
        if remaining > 0 {
            square = &square * &square;
        }
    }
    result
}

/// Parse a rational literal: `"p/q"`, an integer `"p"`, or a decimal string
/// such as `"0.3"` (taken exactly as `3/10`, never as the nearest float).
pub fn parse_rational(input: &str) -> Result<Rational, Error> {
    let s = input.trim();
    let err = || Error::Parse(input.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if let Some((numer, denom)) = s.split_once('/') {
        let n = BigInt::from_str(numer.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(denom.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let (sign, int_digits) = match int_part.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        if !frac_part.chars().all(|c| c.is_ascii_digit()) || frac_part.is_empty() {
            return Err(err());
        }
        if !int_digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let int_value = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(int_digits).map_err(|_| err())?
        };
        let frac_value = BigInt::from_str(frac_part).map_err(|_| err())?;
        let scale = num_traits::pow(BigInt::from(10), frac_part.len());
        let magnitude = int_value * &scale + frac_value;
        return Ok(Rational::new(magnitude * BigInt::from(sign), scale));
    }
    let n = BigInt::from_str(s).map_err(|_| err())?;
    Ok(Rational::from_integer(n))
}

/// Render `value` in plain decimal with at most `sig` significant digits
/// (round half away from zero), trimming trailing fractional zeros. Exact
/// whenever the decimal expansion terminates within `sig` digits.
pub fn decimal_string(value: &Rational, sig: usize) -> String {
    assert!(sig > 0);
    if value.is_zero() {
        return String::from("0");
    }
    let negative = value.is_negative();
    let p = value.numer().abs();
    let q = value.denom().abs();

    // Decimal exponent e with 10^e <= p/q < 10^(e+1); the digit-count
    // estimate is off by at most one, so each loop runs O(1) times.
    let at_least_pow10 = |e: i64| -> bool {
        let a = (-e).max(0) as usize;
        let b = e.max(0) as usize;
        &p * num_traits::pow(BigInt::from(10), a) >= &q * num_traits::pow(BigInt::from(10), b)
    };
    let mut exponent = decimal_digits(&p) as i64 - decimal_digits(&q) as i64;
    while !at_least_pow10(exponent) {
        exponent -= 1;
    }
    while at_least_pow10(exponent + 1) {
        exponent += 1;
    }

    // Round p/q * 10^(sig-1-e) half away from zero.
    let shift = sig as i64 - 1 - exponent;
    let (mul, div) = scale_by_pow10(&BigInt::one(), shift);
    let numerator = &p * &mul * 2u8 + &q * &div;
    let mut digits = (numerator / (&q * &div * 2u8)).to_string();
    if digits.len() > sig {
        // rounding carried into a new leading digit (e.g. 0.999... -> 1.0)
        exponent += 1;
        digits.truncate(sig);
    }

    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if exponent >= 0 {
        let int_len = exponent as usize + 1;
        if digits.len() <= int_len {
            out.push_str(&digits);
            for _ in digits.len()..int_len {
                out.push('0');
            }
        } else {
            out.push_str(&digits[..int_len]);
            let frac = digits[int_len..].trim_end_matches('0');
            if !frac.is_empty() {
                out.push('.');
                out.push_str(frac);
            }
        }
    } else {
        let leading_zeros = (-exponent - 1) as usize;
        let mut frac = "0".repeat(leading_zeros);
        frac.push_str(&digits);
        let frac = frac.trim_end_matches('0');
        out.push_str("0.");
        out.push_str(if frac.is_empty() { "0" } else { frac });
    }
    out
}

fn decimal_digits(value: &BigInt) -> usize {
    value.to_string().trim_start_matches('-').len()
}

/// Returns `(value * 10^shift, 1)` for `shift >= 0`, `(value, 10^-shift)`
/// otherwise.
fn scale_by_pow10(value: &BigInt, shift: i64) -> (BigInt, BigInt) {
    let factor = num_traits::pow(BigInt::from(10), shift.unsigned_abs() as usize);
    if shift >= 0 {
        (value * factor, BigInt::one())
    } else {
        (value.clone(), factor)
    }
}

/// Exact sum of a sequence of rationals.
pub fn sum<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    let mut acc = Rational::zero();
    for v in values {
        acc += v;
    }
    acc
}

/// Parse a comma- or whitespace-separated list of rationals.
pub fn parse_rational_list(input: &str) -> Result<Vec<Rational>, Error> {
    input
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(parse_rational)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_integer_and_decimal_forms() {
        assert_eq!(parse_rational("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_rational("-3/4").unwrap(), ratio(-3, 4));
        assert_eq!(parse_rational("3/-4").unwrap(), ratio(-3, 4));
        assert_eq!(parse_rational("7").unwrap(), rat(7));
        assert_eq!(parse_rational("0.3").unwrap(), ratio(3, 10));
        assert_eq!(parse_rational("1.25").unwrap(), ratio(5, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
    }

    #[test]
    fn rejects_malformed_literals() {
        for bad in ["", "1/0", "a", "1.2.3", "1/ /2", "0x3", "1e5"] {
            assert!(parse_rational(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn integer_powers() {
        assert_eq!(pow(&ratio(2, 3), 3), ratio(8, 27));
        assert_eq!(pow(&ratio(2, 3), 0), rat(1));
        assert_eq!(pow(&ratio(2, 3), -2), ratio(9, 4));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), rat(6));
        assert_eq!(binomial(9, 1), rat(9));
        assert_eq!(binomial(3, 5), rat(0));
        assert_eq!(binomial(0, 0), rat(1));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_string(&ratio(1, 8), 12), "0.125");
        assert_eq!(decimal_string(&ratio(5, 4), 12), "1.25");
        assert_eq!(decimal_string(&rat(0), 12), "0");
        assert_eq!(decimal_string(&rat(1), 12), "1");
        assert_eq!(decimal_string(&rat(-2), 12), "-2");
        assert_eq!(decimal_string(&ratio(1, 3), 12), "0.333333333333");
        assert_eq!(decimal_string(&ratio(2, 3), 12), "0.666666666667");
        assert_eq!(decimal_string(&ratio(-1, 3), 4), "-0.3333");
        assert_eq!(decimal_string(&ratio(999999, 1000000), 3), "1");
        assert_eq!(decimal_string(&ratio(1, 1000), 12), "0.001");
        assert_eq!(decimal_string(&rat(1048576), 6), "1048580");
    }

    #[test]
    fn decimal_round_half_away_from_zero() {
        assert_eq!(decimal_string(&ratio(15, 1000), 1), "0.02");
        assert_eq!(decimal_string(&ratio(-15, 1000), 1), "-0.02");
        assert_eq!(decimal_string(&ratio(25, 10), 1), "3");
    }
}

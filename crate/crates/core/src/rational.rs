//! Exact rational arithmetic and rendering.
//!
//! [`Rat`] is the sole numeric type used for positions, fuel and distances
//! across the crate. It is a normalized arbitrary-precision fraction: the
//! denominator is always positive and numerator/denominator are coprime,
//! so `==` is value equality and comparisons are exact.

use std::fmt;

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

/// Arbitrary-precision rational number.
pub type Rat = num::BigRational;

/// Shorthand constructor, mostly for literals in tests and tables.
///
/// Panics if `denom == 0`.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

/// The integer `n` as a rational.
pub fn whole(n: u64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Error from [`parse_rat`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRatError {
    input: String,
}

impl fmt::Display for ParseRatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not a rational in p/q form: {:?}", self.input)
    }
}

impl std::error::Error for ParseRatError {}

/// Parses the exact wire form `"p/q"`, or `"p"` for integers.
///
/// The denominator must be nonzero; the result is normalized. Decimal
/// notation is rejected so that no float ever sneaks in through a file.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    s.parse::<Rat>().map_err(|_| ParseRatError {
        input: s.to_string(),
    })
}

/// Mixed-number rendering: `25/8` prints as `"3 1/8"`, integers print bare,
/// proper fractions print as-is. Negative values keep the sign on the whole
/// part: `-7/3` prints as `"-2 1/3"`.
pub fn mixed(r: &Rat) -> String {
    if r.is_integer() {
        return r.to_string();
    }
    let trunc = r.trunc();
    let frac = (r - &trunc).abs();
    if trunc.is_zero() {
        r.to_string()
    } else {
        format!("{} {}", trunc.to_integer(), frac)
    }
}

/// Decimal approximation with `sig_digits` significant digits, rounded
/// half-up. The result is a plain decimal string (`"3.12500000000000"`,
/// `"0.0025"`), not scientific notation; callers label it approximate.
///
/// Panics if `sig_digits == 0`.
pub fn decimal(r: &Rat, sig_digits: usize) -> String {
    assert!(sig_digits >= 1, "need at least one significant digit");
    if r.is_zero() {
        return "0".to_string();
    }
    let numer = r.numer().abs();
    let denom = r.denom().clone();

    // Decimal exponent e with 10^e <= |r| < 10^(e+1). Digit counts pin it
    // to within one; a single comparison settles which.
    let mut exp = numer.to_string().len() as i64 - denom.to_string().len() as i64;
    let ten = BigInt::from(10);
    let at_least = if exp >= 0 {
        numer >= &denom * ten.pow(exp as u32)
    } else {
        &numer * ten.pow((-exp) as u32) >= denom
    };
    if !at_least {
        exp -= 1;
    }

    // Round numer/denom * 10^(sig-1-exp) to an integer of sig digits.
    let shift = sig_digits as i64 - 1 - exp;
    let (scaled_num, scaled_den) = if shift >= 0 {
        (&numer * ten.pow(shift as u32), denom)
    } else {
        (numer, &denom * ten.pow((-shift) as u32))
    };
    let (mut q, rem) = scaled_num.div_rem(&scaled_den);
    if &rem * BigInt::from(2) >= scaled_den {
        q += BigInt::one();
    }
    let mut digits = q.to_string();
    if digits.len() > sig_digits {
        // Rounding carried into a new leading digit (e.g. 9.99 -> 10.0).
        digits.truncate(sig_digits);
        exp += 1;
    }

    let point = exp + 1;
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else if point as usize >= digits.len() {
        let pad = point as usize - digits.len();
        format!("{}{}", digits, "0".repeat(pad))
    } else {
        let (int_part, frac_part) = digits.split_at(point as usize);
        format!("{int_part}.{frac_part}")
    };
    if r.is_negative() {
        format!("-{body}")
    } else {
        body
    }
}

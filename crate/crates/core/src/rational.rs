//! Exact rational scalars.
//!
//! Positions and arc lengths use [`Q`], a 128-bit ratio: generated trees
//! keep denominators small, so position arithmetic never comes close to the
//! limit. Metric values involve reciprocals of sums and are carried in
//! [`BigRational`] instead.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, Zero};
use thiserror::Error;

/// Exact scalar for arc lengths and offsets.
pub type Q = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal `{0}`")]
pub struct RationalParseError(pub String);

/// Parses `p/q` or an integer literal.
pub fn parse_rational(text: &str) -> Result<Q, RationalParseError> {
    let text = text.trim();
    let err = || RationalParseError(text.to_string());
    match text.split_once('/') {
        Some((num, den)) => {
            let num: i128 = num.trim().parse().map_err(|_| err())?;
            let den: i128 = den.trim().parse().map_err(|_| err())?;
            if den == 0 {
                return Err(err());
            }
            Ok(Q::new(num, den))
        }
        None => text.parse::<i128>().map(Q::from_integer).map_err(|_| err()),
    }
}

/// Formats as `p/q`, or `p` when the denominator is one.
pub fn format_rational(value: &Q) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn to_big(value: &Q) -> BigRational {
    BigRational::new(BigInt::from(*value.numer()), BigInt::from(*value.denom()))
}

pub fn format_big(value: &BigRational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Decimal rendering with `places` digits, rounding half to even.
pub fn decimal(value: &BigRational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = value * BigRational::from_integer(scale.clone());
    let negative = scaled.is_negative();
    let scaled = scaled.abs();
    let (quot, rem) = scaled.numer().div_rem(scaled.denom());
    let twice: BigInt = &rem * 2;
    let rounded = match twice.cmp(scaled.denom()) {
        std::cmp::Ordering::Less => quot,
        std::cmp::Ordering::Greater => quot + 1,
        std::cmp::Ordering::Equal => {
            if quot.is_even() {
                quot
            } else {
                quot + 1
            }
        }
    };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if negative && !rounded.is_zero() {
        "-"
    } else {
        ""
    };
    if places == 0 {
        return format!("{sign}{int_part}");
    }
    format!(
        "{sign}{int_part}.{:0>width$}",
        frac_part.to_string(),
        width = places as usize
    )
}

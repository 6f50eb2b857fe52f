//! Exact-rational helpers shared by the bound computations.
//!
//! Bounds are kept as `BigRational` end to end; decimal strings are only
//! rendered at the reporting edge (three places, round half away from
//! zero), so no floating point ever enters a comparison.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// `⌈x⌉` as a `BigInt`.
pub fn rational_ceil(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}

/// `⌈x⌉` clamped to `u64`, for bounds known to be small and nonnegative.
pub fn ceil_u64(x: &BigRational) -> u64 {
    let c = rational_ceil(x);
    let (_, digits) = c.to_u64_digits();
    if c.is_negative() || digits.len() > 1 {
        0
    } else {
        digits.first().copied().unwrap_or(0)
    }
}

/// Renders `x` as a decimal string with exactly `places` fractional digits,
/// rounding half away from zero. E.g. `11/15` → `"0.733"`.
pub fn decimal_string(x: &BigRational, places: u32) -> String {
    let sign = if x.is_negative() { "-" } else { "" };
    let abs = x.abs();
    let scale = BigInt::from(10u32).pow(places);
    // round(|x|·10^places) = floor((2·num·scale + den) / (2·den))
    let num = abs.numer() * &scale;
    let den = abs.denom().clone();
    let scaled = (BigInt::from(2) * num + &den).div_floor(&(BigInt::from(2) * &den));
    let ten_pow = scale;
    let (int_part, frac_part) = scaled.div_rem(&ten_pow);
    let frac = frac_part.to_string();
    format!("{sign}{int_part}.{frac:0>width$}", width = places as usize)
}

/// Renders `x` as `"num/den"` in lowest terms (denominator kept even when
/// it is 1, e.g. `"3/1"`, so the format is uniform and parseable).
pub fn rational_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Builds a rational from unsigned parts.
pub fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Converts a `BigUint` into a `BigInt`-backed rational.
pub fn from_biguint(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

/// True when `x` is zero.
pub fn is_zero(x: &BigRational) -> bool {
    x.is_zero()
}

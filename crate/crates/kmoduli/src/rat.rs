//! Arbitrary-precision rationals and small helpers.
//!
//! `Rat` is always reduced with a positive denominator; both invariants are
//! maintained by the underlying [`num_rational::BigRational`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics when `d == 0`.
pub fn ratq(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `p`, `-p`, or `p/q`.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator in {s:?}"))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator in {s:?}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().map_err(|_| format!("bad integer {s:?}"))?;
        Ok(BigRational::from_integer(n))
    }
}

/// Canonical `p/q` (or bare integer) rendering.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Sign as -1, 0, 1.
pub fn sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Approximate as f64 (display only; never used on a result path).
pub fn to_f64(r: &Rat) -> f64 {
    let digits = 30u32;
    let scale = BigInt::from(10u64).pow(digits);
    let scaled = r.numer() * &scale / r.denom();
    let mut x = 0f64;
    // digit-by-digit to avoid BigInt->f64 precision cliffs on huge values
    let s = scaled.abs().to_string();
    for ch in s.chars() {
        x = x * 10.0 + (ch as u8 - b'0') as f64;
    }
    let x = x / 10f64.powi(digits as i32);
    if r.is_negative() {
        -x
    } else {
        x
    }
}

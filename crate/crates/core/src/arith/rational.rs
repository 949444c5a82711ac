//! Arbitrary-precision rationals and their string form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat2(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`; whitespace around the parts is tolerated.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Malformed(format!("`{s}` is not a rational of the form p/q"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Malformed(format!("`{s}` has zero denominator")));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Canonical string form: `p/q` in lowest terms, or `p` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Rounds `q` to a multiple of `2^-bits`, toward negative infinity.
pub fn floor_dyadic(q: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = q * Rational::from_integer(scale.clone());
    Rational::new(scaled.floor().to_integer(), scale)
}

/// Rounds `q` to a multiple of `2^-bits`, toward positive infinity.
pub fn ceil_dyadic(q: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = q * Rational::from_integer(scale.clone());
    Rational::new(scaled.ceil().to_integer(), scale)
}

/// Rounds to the nearest multiple of `2^-bits`.
pub fn round_dyadic(q: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = q * Rational::from_integer(scale.clone());
    Rational::new(scaled.round().to_integer(), scale)
}

pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    match q.to_f64() {
        Some(v) if v.is_finite() => v,
        _ => {
            // Huge numerators/denominators: fall back to a scaled quotient.
            let n = q.numer().bits() as i64;
            let d = q.denom().bits() as i64;
            let shift = n - d;
            if shift > 1000 {
                if q.is_negative() {
                    f64::MIN
                } else {
                    f64::MAX
                }
            } else {
                0.0
            }
        }
    }
}

pub fn from_f64(x: f64, bits: u32) -> Rational {
    let scale = (x * 2f64.powi(bits as i32)).round();
    let n = BigInt::from(scale as i128);
    Rational::new(n, BigInt::one() << bits)
}

//! Exact rational weights.
//!
//! Haar systems and measure families carry rational weights so that every
//! invariance check in the algebraic layer is exact. Floating point only
//! enters downstream, when square roots of these values are needed.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number used for all weights.
pub type Rat = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RatParseError {
    #[error("empty weight string")]
    Empty,
    #[error("bad weight {0:?}: expected an integer or \"p/q\" (decimals are rejected)")]
    Malformed(String),
    #[error("bad weight {0:?}: zero denominator")]
    ZeroDenominator(String),
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_zero() -> Rat {
    Rat::zero()
}

pub fn rat_one() -> Rat {
    Rat::one()
}

/// Parses "p" or "p/q". Decimal notation is rejected so the exact layer
/// stays exact.
pub fn parse_rat(s: &str) -> Result<Rat, RatParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(RatParseError::Empty);
    }
    let parse_int = |t: &str| -> Result<BigInt, RatParseError> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| RatParseError::Malformed(s.to_string()))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let p = parse_int(p)?;
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(RatParseError::ZeroDenominator(s.to_string()));
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// Renders as "p" for integers, "p/q" otherwise. Inverse of [`parse_rat`]
/// on reduced fractions.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().expect("rational weight convertible to f64")
}

pub fn rat_sqrt_f64(r: &Rat) -> f64 {
    let v = rat_to_f64(r);
    debug_assert!(v >= 0.0, "sqrt of negative rational");
    v.sqrt()
}

pub fn is_positive(r: &Rat) -> bool {
    r.is_positive()
}

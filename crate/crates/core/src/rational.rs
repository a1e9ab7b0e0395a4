//! Exact rational scalars and their canonical string form.
//!
//! Every reward, probability and value in the crate is a [`Rational`]. The
//! textual form is `"p/q"` in lowest terms with a positive denominator, or
//! just `"p"` when the denominator is one.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// `2^k` as an exact rational.
pub fn pow2(k: u32) -> Rational {
    Rational::from_integer(BigInt::one() << k)
}

pub fn parse(s: &str) -> Result<Rational> {
    let trimmed = s.trim();
    if trimmed.is_empty() || trimmed.starts_with('+') {
        return Err(Error::ParseRational(s.to_owned()));
    }
    Rational::from_str(trimmed).map_err(|_| Error::ParseRational(s.to_owned()))
}

pub fn format(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serde adapter storing a rational as its canonical string.
pub mod serde_string {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        super::parse(&raw).map_err(serde::de::Error::custom)
    }
}

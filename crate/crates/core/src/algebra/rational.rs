//! Arbitrary-precision rationals and the handful of combinatorial helpers
//! (factorials, binomials, shifted products) the exact inner products need.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Reduced fraction with positive denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `"p/q"`, with `q` omitted when it is 1.
pub fn format(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q`, `-p/q`. Decimal notation is rejected so that every
/// parameter stays exact.
pub fn parse(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = |msg: &str| Error::InvalidParameter(format!("'{text}' is not a rational literal: {msg}"));
    if s.contains('.') || s.contains('e') || s.contains('E') {
        return Err(bad("decimals are not accepted, write p/q"));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let numer: BigInt = num.parse().map_err(|_| bad("bad numerator"))?;
    let denom: BigInt = den.parse().map_err(|_| bad("bad denominator"))?;
    if denom.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(numer, denom))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// `(base+1)(base+2)...(base+count)`; the empty product is 1.
///
/// Gamma ratios `Γ(base+count+1)/Γ(base+1)` are always evaluated this way so
/// they stay exact at rational `base`.
pub fn shifted_product(base: &Rational, count: u32) -> Rational {
    let mut acc = Rational::one();
    for j in 1..=count {
        acc *= base + int(j as i64);
    }
    acc
}

/// Beta function `B(k, t)` for a positive integer `k` and rational `t > 0`:
/// `(k-1)! / (t (t+1) ... (t+k-1))`.
pub fn beta_int_first(k: u32, t: &Rational) -> Rational {
    assert!(k >= 1, "beta_int_first needs k >= 1");
    let base = t - Rational::one();
    Rational::from_integer(factorial(k - 1)) / shifted_product(&base, k)
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn is_nonpositive_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_positive()
}

/// Serde adapter writing a [`Rational`] as its `"p/q"` string.
pub mod serde_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse(&text).map_err(serde::de::Error::custom)
    }
}

//! Arbitrary-precision rationals.
//!
//! `num_rational::BigRational` already keeps values in lowest terms with a
//! positive denominator, so this module only adds construction shorthands,
//! the shared `"p/q"` text form, and a few integer utilities.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use num_rational::BigRational;

/// Shorthand for `n/d` with machine integers.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Renders as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(pub String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational literal `{}`", self.0)
    }
}

impl std::error::Error for ParseRationalError {}

/// Parses `"p"`, `"p/q"` (q nonzero). Whitespace around the parts is allowed.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| err())?;
    let d = BigInt::from_str(d).map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(n, d))
}

/// Serde adapter for the `"p/q"` string form.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        format_rational(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a list of `"p/q"` strings.
pub mod serde_rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a, I>(values: I) -> BigInt
where
    I: IntoIterator<Item = &'a BigRational>,
{
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// All positive divisors of `n`, ascending. `n` must be nonzero.
///
/// Factors by trial division, so the cost is governed by the second-largest
/// prime factor; fine for the Kac-determinant constants this crate meets.
pub fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    assert!(!n.is_zero(), "divisors of zero");
    let mut divisors = vec![BigInt::one()];
    for (p, e) in factor_integer(&n.abs()) {
        let mut next = Vec::with_capacity(divisors.len() * (e as usize + 1));
        for d in &divisors {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divisors = next;
    }
    divisors.sort();
    divisors
}

/// Prime factorization of `|n|` by trial division, ascending primes.
///
/// Any cofactor left after trial division up to `10^7` is reported as a
/// single factor; it is prime whenever it is below `10^14`.
pub fn factor_integer(n: &BigInt) -> Vec<(BigInt, u32)> {
    const TRIAL_LIMIT: u64 = 10_000_000;
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() || n.is_one() {
        return out;
    }
    let mut push = |p: BigInt, e: u32| {
        if e > 0 {
            out.push((p, e));
        }
    };
    let mut e = 0;
    while n.is_even() {
        n >>= 1;
        e += 1;
    }
    push(BigInt::from(2), e);
    let mut p: u64 = 3;
    while p <= TRIAL_LIMIT {
        let pb = BigInt::from(p);
        if &pb * &pb > n {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = n.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            n = q;
            e += 1;
        }
        push(pb, e);
        p += 2;
    }
    if !n.is_one() {
        push(n, 1);
    }
    out
}

/// Integer square root if `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// `r` as an `i64` when it is an integer in range.
pub fn to_i64_exact(r: &BigRational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

/// Builds a `BigInt` from sign and magnitude; handy in tests.
pub fn big(sign: Sign, magnitude: u64) -> BigInt {
    BigInt::from_biguint(sign, BigUint::from(magnitude))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_text_form() {
        for s in ["0", "-3", "47/2", "-22/5"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("6/4").unwrap()), "3/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn factors_small_integers() {
        let f = factor_integer(&BigInt::from(21296876u64));
        let f: Vec<(i64, u32)> = f.iter().map(|(p, e)| (p.to_i64().unwrap(), *e)).collect();
        assert_eq!(f, vec![(2, 2), (31, 1), (41, 1), (59, 1), (71, 1)]);
        assert_eq!(
            positive_divisors(&BigInt::from(12)),
            [1, 2, 3, 4, 6, 12].map(BigInt::from).to_vec()
        );
    }

    #[test]
    fn exact_sqrt_detects_squares() {
        assert_eq!(exact_sqrt(&BigInt::from(14400)), Some(BigInt::from(120)));
        assert_eq!(exact_sqrt(&BigInt::from(14401)), None);
        assert_eq!(exact_sqrt(&big(Sign::Minus, 4)), None);
    }
}

//! Small exact-arithmetic helpers shared across the crate: primes,
//! p-adic splitting, element orders and `a/b` fraction text.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("malformed fraction {0:?}")]
    BadFraction(String),
}

/// A rational prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(ArithError::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// Splits `m` as `p^a * d` with `d` coprime to `p`. `m` must be nonzero.
    pub fn split(self, m: u64) -> (u32, u64) {
        assert!(m != 0, "p-adic split of zero");
        let mut a = 0;
        let mut d = m;
        while d.is_multiple_of(self.0) {
            d /= self.0;
            a += 1;
        }
        (a, d)
    }

    pub fn valuation(self, m: u64) -> u32 {
        self.split(m).0
    }

    /// `p^e` as an exact big integer.
    pub fn power(self, e: u32) -> BigInt {
        num_traits::pow(BigInt::from(self.0), e as usize)
    }

    /// `p^e` if it fits in a `u64`.
    pub fn checked_power(self, e: u32) -> Option<u64> {
        self.0.checked_pow(e)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Prime {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let p: u64 = s.trim().parse().map_err(|e| format!("{e}"))?;
        Prime::new(p).map_err(|e| e.to_string())
    }
}

impl Serialize for Prime {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(self.0)
    }
}

impl<'de> Deserialize<'de> for Prime {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let p = u64::deserialize(d)?;
        Prime::new(p).map_err(serde::de::Error::custom)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u64;
    while i.saturating_mul(i) <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// Order of an element in some group: a positive integer or infinite.
/// Infinite orders contribute nothing to residual-deficiency sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    /// `1/k`, or zero for infinite order.
    pub fn reciprocal(self) -> BigRational {
        match self {
            Order::Finite(k) => BigRational::new(BigInt::one(), BigInt::from(k)),
            Order::Infinite => BigRational::zero(),
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

pub fn lcm_u64(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / a.gcd(&b)).checked_mul(b)
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `a/b`, always with an explicit denominator.
pub fn fmt_fraction(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_fraction(s: &str) -> Result<BigRational, ArithError> {
    let bad = || ArithError::BadFraction(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() || d.is_negative() {
        return Err(bad());
    }
    let q = BigRational::new(n, d);
    // only canonical text is accepted, so that certificates compare byte-for-byte
    if fmt_fraction(&q) != s {
        return Err(bad());
    }
    Ok(q)
}

//! Coefficient fields.
//!
//! Everything in the crate is written against [`Field`]; the concrete
//! exact field used by the public aliases is [`crate::Rational`]. Fixed
//! width ratios such as `Ratio<i64>` also implement the trait and are
//! handy for quick experiments where overflow is known not to occur.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact field of characteristic zero.
pub trait Field:
    Num + Clone + Debug + Display + PartialOrd + Signed + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self;

    fn from_pair(numer: i64, denom: i64) -> Self {
        Self::from_int(numer) / Self::from_int(denom)
    }

    fn from_bigint(v: &BigInt) -> Self;

    /// Numerator and positive denominator in lowest terms.
    fn to_bigint_pair(&self) -> (BigInt, BigInt);

    fn is_integer(&self) -> bool {
        self.to_bigint_pair().1.is_one()
    }

    /// Parses `"p"` or `"p/q"`.
    fn parse_exact(s: &str) -> Result<Self> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n = BigInt::from_str(n).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        let d = BigInt::from_str(d).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("{s:?}: zero denominator")));
        }
        Ok(Self::from_bigint(&n) / Self::from_bigint(&d))
    }

    /// Canonical `"p/q"` text (`"p"` when integral).
    fn to_exact_string(&self) -> String {
        let (n, d) = self.to_bigint_pair();
        if d.is_one() {
            n.to_string()
        } else {
            format!("{n}/{d}")
        }
    }
}

impl<T> Field for Ratio<T>
where
    T: Clone
        + Integer
        + Signed
        + FromPrimitive
        + Debug
        + Display
        + Send
        + Sync
        + 'static
        + Into<BigInt>
        + TryFrom<BigInt>,
{
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(T::from_i64(v).expect("integer fits coefficient type"))
    }

    fn from_bigint(v: &BigInt) -> Self {
        let t = T::try_from(v.clone())
            .ok()
            .expect("integer fits coefficient type");
        Ratio::from_integer(t)
    }

    fn to_bigint_pair(&self) -> (BigInt, BigInt) {
        (self.numer().clone().into(), self.denom().clone().into())
    }
}

/// Integer binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `binomial` for small arguments that are known to fit.
pub fn binomial_usize(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    usize::try_from(acc).expect("binomial overflows usize")
}

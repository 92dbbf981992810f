use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::factorial;

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Accepts any weakly decreasing sequence; trailing zeros are dropped.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("{parts:?} is not weakly decreasing")));
        }
        if parts.contains(&0) {
            return Err(Error::Invalid(format!("{parts:?} has interior zeros")));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts first; zeros are dropped.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(n)`.
    pub fn row(n: u32) -> Self {
        Partition::from_unsorted(vec![n])
    }

    /// `(1^n)`.
    pub fn column(n: u32) -> Self {
        Partition(vec![1; n as usize])
    }

    /// `(a^b)`: `b` rows of length `a`.
    pub fn rectangle(a: u32, b: u32) -> Self {
        Partition::from_unsorted(vec![a; b as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `p_i`, zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Self {
        let first = self.part(0);
        Partition(
            (0..first)
                .map(|j| self.0.iter().filter(|&&p| p > j).count() as u32)
                .collect(),
        )
    }

    /// Dominance order: every partial sum of `self` is at least that of `other`.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..self.len().max(other.len()) {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Number of standard tableaux, by the hook length formula.
    pub fn hook_dimension(&self) -> BigInt {
        let conj = self.conjugate();
        let mut hooks = BigInt::one();
        for (i, &p) in self.0.iter().enumerate() {
            for j in 0..p as usize {
                let arm = p as usize - j - 1;
                let leg = conj.part(j) as usize - i - 1;
                hooks *= arm + leg + 1;
            }
        }
        factorial(self.size() as u64) / hooks
    }

    /// `z_λ = ∏ i^{m_i} m_i!`, the centralizer order of the cycle type.
    pub fn centralizer_size(&self) -> BigInt {
        let mut z = BigInt::one();
        let mut i = 0;
        while i < self.0.len() {
            let v = self.0[i];
            let mut m = 0u64;
            while i < self.0.len() && self.0[i] == v {
                m += 1;
                i += 1;
            }
            z *= BigInt::from(v).pow(m as u32) * factorial(m);
        }
        z
    }

    /// Size of the conjugacy class with this cycle type.
    pub fn class_size(&self) -> BigInt {
        factorial(self.size() as u64) / self.centralizer_size()
    }

    /// `+1` for even permutations of this cycle type, `-1` otherwise.
    pub fn sign(&self) -> i64 {
        let odd = self.0.iter().filter(|&&p| p % 2 == 0).count();
        if odd % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Cycle type of the square of a permutation of this cycle type.
    pub fn square_cycle_type(&self) -> Self {
        let mut out = Vec::with_capacity(self.len() * 2);
        for &p in &self.0 {
            if p % 2 == 1 {
                out.push(p);
            } else {
                out.push(p / 2);
                out.push(p / 2);
            }
        }
        Partition::from_unsorted(out)
    }

    /// Union of cycle types.
    pub fn union(&self, other: &Partition) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Partition::from_unsorted(v)
    }

    /// Number of distinct rearrangements of the parts padded with zeros to
    /// length `len`.
    pub fn permutation_count(&self, len: usize) -> BigInt {
        let mut padded = self.0.clone();
        padded.resize(len.max(self.len()), 0);
        let mut denom = BigInt::one();
        let mut i = 0;
        while i < padded.len() {
            let v = padded[i];
            let mut m = 0u64;
            while i < padded.len() && padded[i] == v {
                m += 1;
                i += 1;
            }
            denom *= factorial(m);
        }
        factorial(padded.len() as u64) / denom
    }

    /// `dim S_π ℂ^k` by the hook-content formula.
    pub fn schur_dimension(&self, k: u32) -> BigInt {
        if self.len() > k as usize {
            return BigInt::from(0);
        }
        let conj = self.conjugate();
        let (mut num, mut den) = (BigInt::one(), BigInt::one());
        for (i, &p) in self.0.iter().enumerate() {
            for j in 0..p as usize {
                num *= k as i64 + j as i64 - i as i64;
                den *= (p as usize - j - 1) + (conj.part(j) as usize - i - 1) + 1;
            }
        }
        num / den
    }

    /// All partitions of `n` in decreasing lexicographic order.
    pub fn all(n: u32) -> Vec<Partition> {
        Self::bounded(n, n as usize)
    }

    /// Partitions of `n` with at most `max_len` parts, decreasing lexicographic.
    pub fn bounded(n: u32, max_len: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(rem: u32, max: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            if slots == 0 {
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                if (p as u64) * (slots as u64) < rem as u64 {
                    break;
                }
                cur.push(p);
                rec(rem - p, p, slots - 1, cur, out);
                cur.pop();
            }
        }
        rec(n, n, max_len, &mut cur, &mut out);
        out
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Parses comma lists such as `9,9,2,2` or with exponents, `9^2,2^6`;
/// surrounding parentheses are optional.
impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut parts = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (base, rep) = match tok.split_once('^') {
                Some((b, r)) => (b, r),
                None => (tok, "1"),
            };
            let bad = || Error::Parse(format!("bad partition entry {tok:?}"));
            let b: u32 = base.trim().parse().map_err(|_| bad())?;
            let r: usize = rep.trim().parse().map_err(|_| bad())?;
            parts.extend(std::iter::repeat(b).take(r));
        }
        Partition::new(parts)
    }
}

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{character_value, invert_weight_multiplicities, Partition};
use crate::error::{Error, Result};
use crate::poly::Monomial;

/// Above this `dn`, [`plethysm_mult`] switches from weight counting to the
/// cycle-index route.
pub const WEIGHT_ROUTE_MAX_SIZE: u32 = 16;

/// Number of multisets of `d` degree-`n` monomials in `weight.len()`
/// variables whose exponent vectors sum to `weight`; this is the dimension of
/// the `weight` space of `S^d(S^n ℂ^k)`.
pub fn weight_multiset_count(d: u32, n: u32, weight: &[u32]) -> u128 {
    if weight.iter().sum::<u32>() != d * n {
        return 0;
    }
    let monos: Vec<Vec<u32>> = Monomial::all_of_degree(weight.len(), n)
        .into_iter()
        .map(|m| m.exps().to_vec())
        .filter(|e| e.iter().zip(weight).all(|(a, b)| a <= b))
        .collect();
    let mut memo = HashMap::new();
    count_from(&monos, 0, d, weight.to_vec(), &mut memo)
}

fn count_from(
    monos: &[Vec<u32>],
    start: usize,
    left: u32,
    rem: Vec<u32>,
    memo: &mut HashMap<(usize, u32, Vec<u32>), u128>,
) -> u128 {
    if left == 0 {
        return u128::from(rem.iter().all(|&r| r == 0));
    }
    let key = (start, left, rem);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let rem = &key.2;
    let mut total = 0;
    for (i, m) in monos.iter().enumerate().skip(start) {
        if m.iter().zip(rem).all(|(a, b)| a <= b) {
            let next: Vec<u32> = rem.iter().zip(m).map(|(r, a)| r - a).collect();
            total += count_from(monos, i, left - 1, next, memo);
        }
    }
    memo.insert(key, total);
    total
}

/// Multiplicities of every `S_π ℂ^k` in `S^d(S^n ℂ^k)`, from weight-space
/// dimensions and Kostka inversion.
pub fn plethysm_character(d: u32, n: u32, k: usize) -> Result<BTreeMap<Partition, BigInt>> {
    let weights: Vec<(Partition, i128)> = Partition::bounded(d * n, k)
        .into_par_iter()
        .map(|l| {
            let c = weight_multiset_count(d, n, l.parts()) as i128;
            (l, c)
        })
        .collect();
    Ok(invert_weight_multiplicities(&weights)?
        .into_iter()
        .map(|(p, m)| (p, BigInt::from(m)))
        .collect())
}

/// Multiplicity of `S_π` in `S^d(S^n ℂ^k)` for `k ≥ ℓ(π)` by weight
/// counting over the weights dominating `π`.
pub fn plethysm_mult_by_weights(pi: &Partition, d: u32, n: u32) -> Result<BigInt> {
    check_size(pi, d, n)?;
    let k = pi.len();
    let weights: Vec<(Partition, i128)> = Partition::bounded(d * n, k)
        .into_par_iter()
        .filter(|l| l.dominates(pi))
        .map(|l| {
            let c = weight_multiset_count(d, n, l.parts()) as i128;
            (l, c)
        })
        .collect();
    let found = invert_weight_multiplicities(&weights)?;
    Ok(found
        .into_iter()
        .find(|(p, _)| p == pi)
        .map_or_else(BigInt::zero, |(_, m)| BigInt::from(m)))
}

/// `h_d[h_n]` in the power-sum basis: `Σ_{c⊢d} z_c^{-1} ∏_{j∈c} p_j[h_n]`
/// with `p_j[h_n] = Σ_{τ⊢n} z_τ^{-1} p_{jτ}`.
pub fn plethysm_power_sums(d: u32, n: u32) -> BTreeMap<Partition, BigRational> {
    let inner: Vec<(Partition, BigRational)> = Partition::all(n)
        .into_iter()
        .map(|t| {
            let z = t.centralizer_size();
            (t, BigRational::new(BigInt::one(), z))
        })
        .collect();
    let mut total: BTreeMap<Partition, BigRational> = BTreeMap::new();
    for c in Partition::all(d) {
        let mut acc: BTreeMap<Partition, BigRational> = BTreeMap::new();
        acc.insert(
            Partition::empty(),
            BigRational::new(BigInt::one(), c.centralizer_size()),
        );
        for &j in c.parts() {
            let mut next: BTreeMap<Partition, BigRational> = BTreeMap::new();
            for (rho, coeff) in &acc {
                for (t, w) in &inner {
                    let scaled =
                        Partition::from_unsorted(t.parts().iter().map(|&x| x * j).collect());
                    *next.entry(rho.union(&scaled)).or_insert_with(BigRational::zero) +=
                        coeff * w;
                }
            }
            acc = next;
        }
        for (rho, coeff) in acc {
            *total.entry(rho).or_insert_with(BigRational::zero) += coeff;
        }
    }
    total.retain(|_, v| !v.is_zero());
    total
}

/// Multiplicity of `S_π` in `S^d(S^n)` as `⟨s_π, h_d[h_n]⟩`, pairing the
/// power-sum expansion with character values.
pub fn plethysm_mult_by_cycle_index(pi: &Partition, d: u32, n: u32) -> Result<BigInt> {
    check_size(pi, d, n)?;
    let sums: Vec<(Partition, BigRational)> = plethysm_power_sums(d, n).into_iter().collect();
    let terms = sums
        .par_iter()
        .map(|(rho, c)| Ok(c * BigRational::from_integer(character_value(pi, rho)?.into())))
        .collect::<Result<Vec<_>>>()?;
    let s = terms.into_iter().fold(BigRational::zero(), |a, b| a + b);
    if !s.is_integer() {
        return Err(Error::Invalid(format!("plethysm multiplicity came out as {s}")));
    }
    Ok(s.to_integer())
}

/// Multiplicity of `S_π` in `S^d(S^n ℂ^k)`, `k ≥ ℓ(π)`.
pub fn plethysm_mult(pi: &Partition, d: u32, n: u32) -> Result<BigInt> {
    if d * n <= WEIGHT_ROUTE_MAX_SIZE {
        plethysm_mult_by_weights(pi, d, n)
    } else {
        plethysm_mult_by_cycle_index(pi, d, n)
    }
}

fn check_size(pi: &Partition, d: u32, n: u32) -> Result<()> {
    if pi.size() != d * n {
        return Err(Error::Dimension(format!(
            "|π| = {} but dn = {}",
            pi.size(),
            d * n
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::binomial;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn leading_and_small_terms() {
        for (d, n) in [(2, 2), (3, 2), (2, 3), (4, 1)] {
            assert_eq!(plethysm_mult(&Partition::row(d * n), d, n).unwrap(), BigInt::one());
        }
        assert_eq!(plethysm_mult(&p("2,2"), 2, 2).unwrap(), BigInt::one());
        assert_eq!(plethysm_mult(&p("3,1"), 2, 2).unwrap(), BigInt::zero());
        // S^2(S^3) = S_6 + S_{4,2}
        assert_eq!(plethysm_mult(&p("4,2"), 2, 3).unwrap(), BigInt::one());
        assert_eq!(plethysm_mult(&p("5,1"), 2, 3).unwrap(), BigInt::zero());
        assert!(plethysm_mult(&p("2,1"), 2, 2).is_err());
    }

    #[test]
    fn two_routes_agree() {
        for (d, n) in [(2, 2), (2, 3), (3, 2), (3, 3), (2, 4), (4, 2), (3, 4), (4, 3), (2, 6)] {
            for pi in Partition::all(d * n) {
                assert_eq!(
                    plethysm_mult_by_weights(&pi, d, n).unwrap(),
                    plethysm_mult_by_cycle_index(&pi, d, n).unwrap(),
                    "{pi} in S^{d}(S^{n})"
                );
            }
        }
    }

    #[test]
    fn total_dimension_is_conserved() {
        for (d, n) in [(2, 2), (3, 2), (2, 3), (3, 3), (4, 3), (3, 4), (2, 5)] {
            for k in 1..=4u32 {
                let ch = plethysm_character(d, n, k as usize).unwrap();
                let total: BigInt = ch.iter().map(|(pi, m)| m * pi.schur_dimension(k)).sum();
                let inner = binomial((n + k - 1) as u64, n as u64);
                let inner: u64 = inner.try_into().unwrap();
                assert_eq!(total, binomial(inner + d as u64 - 1, d as u64));
            }
        }
    }

    #[test]
    fn weight_counts() {
        // S^2(S^2 ℂ^2) weight (2,2): {x1², x2²} and {x1x2, x1x2}
        assert_eq!(weight_multiset_count(2, 2, &[2, 2]), 2);
        assert_eq!(weight_multiset_count(3, 3, &[3, 3, 3]), 10);
        assert_eq!(weight_multiset_count(2, 2, &[2, 1]), 0);
    }
}

use std::sync::OnceLock;

use dashmap::DashMap;

use super::Partition;
use crate::error::{Error, Result};

type Key = (Vec<u32>, Vec<u32>);

fn cache() -> &'static DashMap<Key, u128> {
    static CACHE: OnceLock<DashMap<Key, u128>> = OnceLock::new();
    CACHE.get_or_init(DashMap::new)
}

/// Number of semistandard tableaux of shape `shape` and content `content`;
/// the content may be any composition (zeros allowed).
pub fn kostka(shape: &Partition, content: &[u32]) -> u128 {
    if shape.size() != content.iter().sum::<u32>() {
        return 0;
    }
    strips(shape.parts(), content)
}

fn strips(shape: &[u32], content: &[u32]) -> u128 {
    let Some((&last, rest)) = content.split_last() else {
        return u128::from(shape.is_empty());
    };
    if shape.len() > content.len() {
        return 0;
    }
    if last == 0 {
        return strips(shape, rest);
    }
    let key = (shape.to_vec(), content.to_vec());
    if let Some(v) = cache().get(&key) {
        return *v;
    }
    // remove a horizontal strip of size `last`: inner shape ρ with
    // shape[i+1] <= ρ[i] <= shape[i]
    let mut total = 0u128;
    let mut inner = vec![0u32; shape.len()];
    fn rec(
        i: usize,
        left: u32,
        shape: &[u32],
        inner: &mut Vec<u32>,
        rest: &[u32],
        total: &mut u128,
    ) {
        if i == shape.len() {
            if left == 0 {
                let mut r = inner.clone();
                while r.last() == Some(&0) {
                    r.pop();
                }
                *total += strips(&r, rest);
            }
            return;
        }
        let lo = shape.get(i + 1).copied().unwrap_or(0);
        let hi = shape[i];
        for v in (lo..=hi).rev() {
            let take = hi - v;
            if take > left {
                break;
            }
            inner[i] = v;
            rec(i + 1, left - take, shape, inner, rest, total);
        }
    }
    rec(0, last, shape, &mut inner, rest, &mut total);
    cache().insert(key, total);
    total
}

/// Recovers irreducible multiplicities from weight-space dimensions.
///
/// `weights` must list dominant weights in decreasing lexicographic order and
/// be closed upward under dominance, each paired with the dimension of its
/// weight space. Returns the nonzero multiplicities `a_π` solving
/// `dim_λ = Σ_π a_π K_{πλ}`; a negative solution is an error.
pub fn invert_weight_multiplicities(weights: &[(Partition, i128)]) -> Result<Vec<(Partition, i128)>> {
    let mut found: Vec<(Partition, i128)> = Vec::new();
    for (lambda, dim) in weights {
        let mut a = *dim;
        for (pi, m) in &found {
            a -= m * kostka(pi, lambda.parts()) as i128;
        }
        if a < 0 {
            return Err(Error::Invalid(format!(
                "negative multiplicity {a} for {lambda}: weight data is not a module character"
            )));
        }
        if a > 0 {
            found.push((lambda.clone(), a));
        }
    }
    Ok(found)
}

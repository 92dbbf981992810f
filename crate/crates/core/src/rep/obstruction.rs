use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{kronecker, plethysm_mult, symmetric_kronecker, Partition};
use crate::error::{Error, Result};

/// Multiplicities compared by the occurrence-obstruction test for `π ⊢ dn`
/// against the rectangle `(d^n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionVerdict {
    pub partition: Partition,
    pub d: u32,
    pub n: u32,
    /// Multiplicity of `S_π` in `S^d(S^n)`.
    pub plethysm: BigInt,
    pub kronecker: BigInt,
    pub symmetric_kronecker: BigInt,
    /// `sk < mult`.
    pub representation_theoretic: bool,
    /// `sk = 0 < mult`.
    pub occurrence: bool,
}

pub fn occurrence_obstruction_test(pi: &Partition, d: u32, n: u32) -> Result<ObstructionVerdict> {
    if pi.size() != d * n {
        return Err(Error::Dimension(format!("|π| = {} but dn = {}", pi.size(), d * n)));
    }
    let rect = Partition::rectangle(d, n);
    let mult = plethysm_mult(pi, d, n)?;
    let k = kronecker(pi, &rect, &rect)?;
    let sk = symmetric_kronecker(pi, &rect)?;
    if sk > k {
        return Err(Error::Invalid(format!(
            "symmetric Kronecker {sk} exceeds Kronecker {k} for {pi}"
        )));
    }
    Ok(ObstructionVerdict {
        partition: pi.clone(),
        d,
        n,
        representation_theoretic: sk < mult,
        occurrence: sk.is_zero() && !mult.is_zero(),
        plethysm: mult,
        kronecker: k,
        symmetric_kronecker: sk,
    })
}

/// Necessary conditions for `S_π` to be useful against `perm_m` inside
/// `S^d(S^n)`: `ℓ(π) ≤ m+1` and `p_1 ≥ d(n−m)`.
pub fn gct_useful_filter(pi: &Partition, d: u32, n: u32, m: u32) -> Result<bool> {
    if pi.size() != d * n {
        return Err(Error::Dimension(format!("|π| = {} but dn = {}", pi.size(), d * n)));
    }
    let first = pi.part(0) as i64;
    let bound = d as i64 * (n as i64 - m as i64);
    Ok(pi.len() <= m as usize + 1 && first >= bound)
}

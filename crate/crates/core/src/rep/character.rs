use std::collections::BTreeMap;
use std::sync::OnceLock;

use dashmap::DashMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Partition;
use crate::error::{Error, Result};

type Key = (Vec<u32>, Vec<u32>);

fn cache() -> &'static DashMap<Key, i128> {
    static CACHE: OnceLock<DashMap<Key, i128>> = OnceLock::new();
    CACHE.get_or_init(DashMap::new)
}

/// `χ_π` evaluated on a permutation of cycle type `cycle`, by the
/// Murnaghan–Nakayama rule on beta-sets. Values are memoized process-wide.
pub fn character_value(pi: &Partition, cycle: &Partition) -> Result<i128> {
    if pi.size() != cycle.size() {
        return Err(Error::Dimension(format!(
            "character of a partition of {} evaluated on a class of S_{}",
            pi.size(),
            cycle.size()
        )));
    }
    Ok(mn(pi.parts(), cycle.parts()))
}

fn mn(shape: &[u32], cycle: &[u32]) -> i128 {
    if cycle.is_empty() {
        return 1;
    }
    let key = (shape.to_vec(), cycle.to_vec());
    if let Some(v) = cache().get(&key) {
        return *v;
    }
    let r = cycle[0];
    let rest = &cycle[1..];
    let l = shape.len() as u32;
    let beads: Vec<u32> = shape
        .iter()
        .enumerate()
        .map(|(i, &p)| p + l - 1 - i as u32)
        .collect();
    let mut total = 0i128;
    for (idx, &b) in beads.iter().enumerate() {
        if b < r || beads.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let between = beads.iter().filter(|&&x| x > target && x < b).count();
        let mut nb = beads.clone();
        nb[idx] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let k = nb.len() as u32;
        let mut next: Vec<u32> = nb
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (k - 1 - i as u32))
            .collect();
        while next.last() == Some(&0) {
            next.pop();
        }
        let v = mn(&next, rest);
        total += if between % 2 == 0 { v } else { -v };
    }
    cache().insert(key, total);
    total
}

/// A class function of `S_n`, as values on every cycle type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFunction {
    pub n: u32,
    pub values: BTreeMap<Partition, i128>,
}

impl ClassFunction {
    pub fn get(&self, cycle: &Partition) -> Option<i128> {
        self.values.get(cycle).copied()
    }
}

/// The full character `χ_π` on all cycle types.
pub fn character(pi: &Partition) -> ClassFunction {
    let n = pi.size();
    let classes = Partition::all(n);
    let values = classes
        .par_iter()
        .map(|c| (c.clone(), mn(pi.parts(), c.parts())))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    ClassFunction { n, values }
}

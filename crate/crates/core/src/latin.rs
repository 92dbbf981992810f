//! Latin squares, their row/column signs, Alon–Tarsi counts, and the
//! differential pairings equivalent to them.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinat::perm_sign;
use crate::error::{Error, Result};
use crate::poly::{pairing, Monomial};
use crate::zoo::{det, perm};
use crate::{Poly, Rational};

/// An `n×n` array with entries `1..=n`, each row and column a permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatinSquare {
    cells: Vec<Vec<u8>>,
}

impl LatinSquare {
    pub fn new(cells: Vec<Vec<u8>>) -> Result<Self> {
        let n = cells.len();
        if n == 0 || n > 64 {
            return Err(Error::Invalid(format!("order {n} out of range")));
        }
        let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        for (i, row) in cells.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Invalid(format!("row {i} has length {}", row.len())));
            }
            let mut mask = 0u64;
            for &x in row {
                if x == 0 || x as usize > n {
                    return Err(Error::Invalid(format!("entry {x} outside 1..={n}")));
                }
                mask |= 1 << (x - 1);
            }
            if mask != full {
                return Err(Error::Invalid(format!("row {i} repeats a symbol")));
            }
        }
        for j in 0..n {
            let mask = cells.iter().fold(0u64, |m, r| m | 1 << (r[j] - 1));
            if mask != full {
                return Err(Error::Invalid(format!("column {j} repeats a symbol")));
            }
        }
        Ok(LatinSquare { cells })
    }

    pub fn order(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[Vec<u8>] {
        &self.cells
    }

    fn row_perm(&self, i: usize) -> Vec<usize> {
        self.cells[i].iter().map(|&x| x as usize - 1).collect()
    }

    fn col_perm(&self, j: usize) -> Vec<usize> {
        self.cells.iter().map(|r| r[j] as usize - 1).collect()
    }

    /// Product of the signs of all rows and all columns.
    pub fn sign(&self) -> i64 {
        let rows: i64 = (0..self.order()).map(|i| perm_sign(&self.row_perm(i))).product();
        rows * self.column_sign()
    }

    /// Product of the signs of the columns.
    pub fn column_sign(&self) -> i64 {
        (0..self.order()).map(|j| perm_sign(&self.col_perm(j))).product()
    }

    /// Product over symbols `k` of the sign of `i ↦ (column of k in row i)`.
    pub fn symbol_sign(&self) -> i64 {
        let n = self.order();
        (1..=n as u8)
            .map(|k| {
                let p: Vec<usize> = self
                    .cells
                    .iter()
                    .map(|r| r.iter().position(|&x| x == k).expect("latin row"))
                    .collect();
                perm_sign(&p)
            })
            .product()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.cells.swap(a, b);
    }
}

/// Signed counts of all Latin squares of one order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtCount {
    pub n: usize,
    pub count_plus: u128,
    pub count_minus: u128,
    pub column_count_plus: u128,
    pub column_count_minus: u128,
}

impl AtCount {
    pub fn total(&self) -> u128 {
        self.count_plus + self.count_minus
    }

    pub fn difference(&self) -> i128 {
        self.count_plus as i128 - self.count_minus as i128
    }

    pub fn column_difference(&self) -> i128 {
        self.column_count_plus as i128 - self.column_count_minus as i128
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtOptions {
    /// Largest order enumerated.
    pub max_n: usize,
    /// File recording finished work units; an existing file is resumed.
    pub checkpoint: Option<PathBuf>,
}

impl Default for AtOptions {
    fn default() -> Self {
        AtOptions {
            max_n: 6,
            checkpoint: None,
        }
    }
}

/// Counts over squares whose first row is `1..n`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
struct Partial {
    plus: u64,
    minus: u64,
    col_plus: u64,
    col_minus: u64,
}

impl Partial {
    fn add(&mut self, o: &Partial) {
        self.plus += o.plus;
        self.minus += o.minus;
        self.col_plus += o.col_plus;
        self.col_minus += o.col_minus;
    }
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct Checkpoint {
    n: usize,
    units: usize,
    done: BTreeMap<usize, Partial>,
}

struct Search {
    n: usize,
    grid: Vec<Vec<u8>>,
    col_used: Vec<u64>,
    // parity of inversions within each column so far
    col_parity: Vec<u8>,
}

impl Search {
    fn new(n: usize) -> Self {
        Search {
            n,
            grid: vec![vec![0; n]; n],
            col_used: vec![0; n],
            col_parity: vec![0; n],
        }
    }

    /// Places a complete row; returns its inversion parity.
    fn push_row(&mut self, r: usize, row: &[u8]) -> u8 {
        let mut parity = 0;
        let mut seen = 0u64;
        for (c, &x) in row.iter().enumerate() {
            let above = (self.col_used[c] >> (x + 1)).count_ones() as u8;
            self.col_parity[c] ^= above & 1;
            self.col_used[c] |= 1 << x;
            parity ^= ((seen >> (x + 1)).count_ones() & 1) as u8;
            seen |= 1 << x;
            self.grid[r][c] = x;
        }
        parity
    }

    fn pop_row(&mut self, r: usize) {
        for c in 0..self.n {
            let x = self.grid[r][c];
            self.col_used[c] &= !(1 << x);
            let above = (self.col_used[c] >> (x + 1)).count_ones() as u8;
            self.col_parity[c] ^= above & 1;
        }
    }

    /// Enumerates completions from row `r`, filling cells left to right
    /// with ascending candidates.
    fn complete(&mut self, r: usize, row_parity: u8, out: &mut Partial) {
        if r == self.n {
            let col = self.col_parity.iter().fold(0, |a, &b| a ^ b);
            if col == 0 {
                out.col_plus += 1;
            } else {
                out.col_minus += 1;
            }
            if row_parity ^ col == 0 {
                out.plus += 1;
            } else {
                out.minus += 1;
            }
            return;
        }
        let mut row = vec![0u8; self.n];
        self.fill(r, 0, 0, &mut row, row_parity, out);
    }

    fn fill(&mut self, r: usize, c: usize, used: u64, row: &mut Vec<u8>, rp: u8, out: &mut Partial) {
        if c == self.n {
            let p = self.push_row(r, row);
            self.complete(r + 1, rp ^ p, out);
            self.pop_row(r);
            return;
        }
        let mut free = !(used | self.col_used[c]) & ((1u64 << self.n) - 1);
        while free != 0 {
            let x = free.trailing_zeros() as u8;
            free &= free - 1;
            row[c] = x;
            self.fill(r, c + 1, used | 1 << x, row, rp, out);
        }
    }
}

/// All permutations of `0..n` with no fixed point, lexicographic.
fn derangements(n: usize) -> Vec<Vec<u8>> {
    crate::combinat::permutations(n)
        .into_iter()
        .filter(|p| p.iter().enumerate().all(|(i, &x)| i != x))
        .map(|p| p.into_iter().map(|x| x as u8).collect())
        .collect()
}

fn load_checkpoint(path: &Path, n: usize, units: usize) -> Result<Checkpoint> {
    if !path.exists() {
        return Ok(Checkpoint {
            n,
            units,
            done: BTreeMap::new(),
        });
    }
    let text = fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    let cp: Checkpoint = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    if cp.n != n || cp.units != units {
        return Err(Error::Invalid(format!(
            "checkpoint {} is for order {} with {} units",
            path.display(),
            cp.n,
            cp.units
        )));
    }
    Ok(cp)
}

fn save_checkpoint(path: &Path, cp: &Checkpoint) -> Result<()> {
    let tmp = path.with_extension("tmp");
    let text = serde_json::to_string(cp).map_err(|e| Error::Parse(e.to_string()))?;
    fs::write(&tmp, text).and_then(|_| fs::rename(&tmp, path))
        .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

/// Exhaustive signed count of Latin squares of order `n`.
///
/// Squares with first row `1..n` are enumerated, split across workers by
/// second row, and the totals are scaled by `n!`: relabeling symbols by `τ`
/// leaves the full sign unchanged and multiplies the column sign by
/// `sgn(τ)^n`.
pub fn alon_tarsi_count(n: usize, opts: &AtOptions) -> Result<AtCount> {
    if n == 0 {
        return Err(Error::range("n", "need n >= 1"));
    }
    if n > opts.max_n {
        return Err(Error::Capacity(format!(
            "order {n} exceeds the enumeration cap {}",
            opts.max_n
        )));
    }
    if n > 8 {
        return Err(Error::Capacity(format!("order {n} is beyond exhaustive enumeration")));
    }
    let first: Vec<u8> = (0..n as u8).collect();
    let fixed = if n == 1 {
        let mut s = Search::new(1);
        let mut out = Partial::default();
        let p = s.push_row(0, &first);
        s.complete(1, p, &mut out);
        out
    } else {
        let seconds = derangements(n);
        let cp = match &opts.checkpoint {
            Some(path) => Some(Mutex::new(load_checkpoint(path, n, seconds.len())?)),
            None => None,
        };
        let done: BTreeMap<usize, Partial> = cp
            .as_ref()
            .map(|m| m.lock().expect("checkpoint lock").done.clone())
            .unwrap_or_default();
        let fresh = seconds
            .par_iter()
            .enumerate()
            .filter(|(i, _)| !done.contains_key(i))
            .map(|(i, second)| {
                let mut s = Search::new(n);
                let mut out = Partial::default();
                let p0 = s.push_row(0, &first);
                let p1 = s.push_row(1, second);
                s.complete(2, p0 ^ p1, &mut out);
                if let (Some(m), Some(path)) = (&cp, &opts.checkpoint) {
                    let mut guard = m.lock().expect("checkpoint lock");
                    guard.done.insert(i, out);
                    save_checkpoint(path, &guard)?;
                }
                Ok((i, out))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut total = Partial::default();
        for p in done.values() {
            total.add(p);
        }
        for (_, p) in &fresh {
            total.add(p);
        }
        total
    };
    let nfact: u128 = (1..=n as u128).product();
    let (col_plus, col_minus) = if n % 2 == 0 || n == 1 {
        (nfact * fixed.col_plus as u128, nfact * fixed.col_minus as u128)
    } else {
        let all = (nfact / 2) * (fixed.col_plus + fixed.col_minus) as u128;
        (all, all)
    };
    Ok(AtCount {
        n,
        count_plus: nfact * fixed.plus as u128,
        count_minus: nfact * fixed.minus as u128,
        column_count_plus: col_plus,
        column_count_minus: col_minus,
    })
}

/// `⟨perm_n^n, det_n^n⟩` with plain partial derivatives.
pub fn pairing_perm_det(n: usize) -> Result<Rational> {
    if n == 0 {
        return Err(Error::range("n", "need n >= 1"));
    }
    if n > 3 {
        return Err(Error::Capacity(format!("pairing of degree {} is beyond the expansion cap", n * n)));
    }
    let p = perm(n).pow(n as u32);
    let d = det(n).pow(n as u32);
    pairing(&p, &d)
}

/// `⟨∏_{ij} y_{ij}, det_n^n⟩`: the coefficient of `∏ x_{ij}` in `det_n^n`.
pub fn pairing_allvars_det(n: usize) -> Result<Rational> {
    if n == 0 {
        return Err(Error::range("n", "need n >= 1"));
    }
    if n > 4 {
        return Err(Error::Capacity(format!("pairing of degree {} is beyond the expansion cap", n * n)));
    }
    let nv = n * n;
    let all = Monomial::new(vec![1; nv]);
    let d = det(n);
    let mut acc = Poly::one(nv);
    for _ in 0..n {
        acc = acc.mul_truncated(&d, &all)?;
    }
    let op = Poly::monomial(nv, all, Rational::one());
    pairing(&op, &acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(rows: &[&[u8]]) -> LatinSquare {
        LatinSquare::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(LatinSquare::new(vec![vec![1, 2], vec![1, 2]]).is_err());
        assert!(LatinSquare::new(vec![vec![1, 3], vec![3, 1]]).is_err());
        assert!(LatinSquare::new(vec![]).is_err());
        assert_eq!(sq(&[&[1]]).sign(), 1);
    }

    #[test]
    fn signs_of_small_squares() {
        let l = sq(&[&[1, 2], &[2, 1]]);
        assert_eq!(l.sign(), 1);
        assert_eq!(l.column_sign(), -1);
        let mut l = sq(&[&[1, 2, 3], &[2, 3, 1], &[3, 1, 2]]);
        let s = l.sign();
        l.swap_rows(0, 1);
        assert_eq!(l.sign(), -s);
    }

    #[test]
    fn small_counts() {
        let o = AtOptions::default();
        let c1 = alon_tarsi_count(1, &o).unwrap();
        assert_eq!((c1.count_plus, c1.count_minus), (1, 0));
        let c2 = alon_tarsi_count(2, &o).unwrap();
        assert_eq!((c2.count_plus, c2.count_minus), (2, 0));
        let c3 = alon_tarsi_count(3, &o).unwrap();
        assert_eq!(c3.total(), 12);
        assert_eq!(c3.difference(), 0);
        let c4 = alon_tarsi_count(4, &o).unwrap();
        assert_eq!(c4.total(), 576);
        assert_ne!(c4.difference(), 0);
        assert_ne!(c4.column_difference(), 0);
        assert!(alon_tarsi_count(7, &o).is_err());
    }

    #[test]
    fn checkpoint_resume_matches() {
        let dir = std::env::temp_dir().join(format!("gct-latin-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("at5.json");
        let _ = fs::remove_file(&path);
        let opts = AtOptions {
            max_n: 6,
            checkpoint: Some(path.clone()),
        };
        let a = alon_tarsi_count(5, &opts).unwrap();
        // drop half the finished units and resume
        let mut cp: Checkpoint = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        let keep: Vec<usize> = cp.done.keys().copied().step_by(2).collect();
        cp.done.retain(|k, _| keep.contains(k));
        fs::write(&path, serde_json::to_string(&cp).unwrap()).unwrap();
        let b = alon_tarsi_count(5, &opts).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, alon_tarsi_count(5, &AtOptions::default()).unwrap());
        assert_eq!(a.total(), 161_280);
        let _ = fs::remove_dir_all(&dir);
    }

    #[test]
    fn pairings() {
        assert_eq!(pairing_perm_det(1).unwrap(), Rational::one());
        assert_eq!(pairing_perm_det(2).unwrap(), Rational::from_integer(4.into()));
        assert_eq!(pairing_allvars_det(1).unwrap(), Rational::one());
        assert_eq!(pairing_allvars_det(2).unwrap(), Rational::from_integer((-2).into()));
        assert!(pairing_perm_det(4).is_err());
    }
}

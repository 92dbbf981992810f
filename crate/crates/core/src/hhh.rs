//! The Hermite–Hadamard–Howe map `h_{d,n}: S^d(S^n W) → S^n(S^d W)`.
//!
//! A domain basis element is a multiset of `d` degree-`n` monomials; it maps
//! to the average over orderings of each monomial's variables of the
//! product of the `n` column monomials. With block one's ordering fixed the
//! weight is `1/∏_{i≥2} N_i`, `N_i` the number of distinct orderings of
//! `m_i`, which makes `h(ℓ_1^n⋯ℓ_d^n) = (ℓ_1⋯ℓ_d)^n` exact.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flatten::{rank_certificate, RankCertificate};
use crate::linalg::Matrix;
use crate::poly::Monomial;
use crate::rep::{invert_weight_multiplicities, weight_multiset_count, Partition};
use crate::scalar::{binomial, Field};
use crate::{Poly, Rational};

/// Size limits for a single weight space (or the full space).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HhhLimits {
    /// Largest allowed domain or codomain basis.
    pub max_basis: usize,
    /// Largest allowed `rows·cols·min(rows, cols)` for one elimination.
    pub max_elimination_work: u128,
}

impl Default for HhhLimits {
    fn default() -> Self {
        HhhLimits {
            max_basis: 200_000,
            max_elimination_work: 20_000_000_000,
        }
    }
}

/// A multiset of monomials of a common degree, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MonomialMultiset(Vec<Monomial>);

impl MonomialMultiset {
    pub fn new(mut members: Vec<Monomial>) -> Self {
        members.sort();
        MonomialMultiset(members)
    }

    pub fn members(&self) -> &[Monomial] {
        &self.0
    }

    pub fn weight(&self) -> Vec<u32> {
        let v = self.0.first().map_or(0, Monomial::num_vars);
        let mut w = vec![0; v];
        for m in &self.0 {
            for (a, e) in w.iter_mut().zip(m.exps()) {
                *a += e;
            }
        }
        w
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlethysmMap {
    pub d: usize,
    pub n: usize,
    pub v: usize,
    /// `None` for the full map.
    pub weight: Option<Vec<u32>>,
    pub domain: Vec<MonomialMultiset>,
    pub codomain: Vec<MonomialMultiset>,
    /// Rows indexed by `codomain`, columns by `domain`.
    pub matrix: Matrix<Rational>,
}

fn check_params(d: usize, n: usize, v: usize) -> Result<()> {
    if d == 0 || n == 0 || v == 0 {
        return Err(Error::range("d, n, v", format!("all must be positive, got ({d}, {n}, {v})")));
    }
    Ok(())
}

fn check_weight(d: usize, n: usize, v: usize, w: &[u32]) -> Result<()> {
    if w.len() != v {
        return Err(Error::Dimension(format!("weight has {} parts, expected {v}", w.len())));
    }
    let s: u32 = w.iter().sum();
    if s as usize != d * n {
        return Err(Error::range("weight", format!("entries sum to {s}, expected {}", d * n)));
    }
    Ok(())
}

/// All multisets of `count` degree-`deg` monomials in `v` variables,
/// optionally restricted to total exponent `weight`, in sorted order.
pub fn multiset_basis(count: usize, deg: usize, v: usize, weight: Option<&[u32]>) -> Vec<MonomialMultiset> {
    let monos: Vec<Monomial> = Monomial::all_of_degree(v, deg as u32)
        .into_iter()
        .filter(|m| weight.map_or(true, |w| m.exps().iter().zip(w).all(|(a, b)| a <= b)))
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(count);
    let rem = weight.map(<[u32]>::to_vec);
    fn rec(
        monos: &[Monomial],
        start: usize,
        left: usize,
        rem: &Option<Vec<u32>>,
        cur: &mut Vec<Monomial>,
        out: &mut Vec<MonomialMultiset>,
    ) {
        if left == 0 {
            if rem.as_ref().map_or(true, |r| r.iter().all(|&x| x == 0)) {
                out.push(MonomialMultiset(cur.clone()));
            }
            return;
        }
        for (i, m) in monos.iter().enumerate().skip(start) {
            let next = match rem {
                Some(r) => {
                    if !m.exps().iter().zip(r).all(|(a, b)| a <= b) {
                        continue;
                    }
                    Some(r.iter().zip(m.exps()).map(|(b, a)| b - a).collect())
                }
                None => None,
            };
            cur.push(m.clone());
            rec(monos, i, left - 1, &next, cur, out);
            cur.pop();
        }
    }
    rec(&monos, 0, count, &rem, &mut cur, &mut out);
    out
}

fn word_of(m: &Monomial) -> Vec<usize> {
    let mut w = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        w.extend(std::iter::repeat(i).take(e as usize));
    }
    w
}

/// Distinct rearrangements of a sorted word.
fn distinct_words(sorted: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = sorted.to_vec();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..cur.len().saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).expect("exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Image of one basis multiset as `(codomain multiset, coefficient)` pairs.
fn image_of(basis: &MonomialMultiset, n: usize, v: usize) -> Vec<(MonomialMultiset, Rational)> {
    let members = basis.members();
    let mut states: HashMap<Vec<Vec<u32>>, u128> = HashMap::new();
    let first = word_of(&members[0]);
    let mut start: Vec<Vec<u32>> = first
        .iter()
        .map(|&a| {
            let mut e = vec![0; v];
            e[a] = 1;
            e
        })
        .collect();
    start.sort();
    states.insert(start, 1);
    let mut denom = BigInt::one();
    for m in &members[1..] {
        let words = distinct_words(&word_of(m));
        denom *= words.len();
        let mut next: HashMap<Vec<Vec<u32>>, u128> = HashMap::new();
        for (cols, count) in &states {
            for w in &words {
                let mut c = cols.clone();
                for (j, &a) in w.iter().enumerate() {
                    c[j][a] += 1;
                }
                c.sort();
                *next.entry(c).or_insert(0) += count;
            }
        }
        states = next;
    }
    debug_assert!(states.keys().all(|c| c.len() == n));
    states
        .into_iter()
        .map(|(cols, count)| {
            let ms = MonomialMultiset::new(cols.into_iter().map(Monomial::new).collect());
            (ms, Rational::new(BigInt::from(count), denom.clone()))
        })
        .collect()
}

/// Domain and codomain dimensions, without building anything.
pub fn space_dims(d: usize, n: usize, v: usize, weight: Option<&[u32]>) -> (u128, u128) {
    match weight {
        Some(w) => (
            weight_multiset_count(d as u32, n as u32, w),
            weight_multiset_count(n as u32, d as u32, w),
        ),
        None => {
            let full = |count: usize, deg: usize| -> u128 {
                let inner = binomial((deg + v - 1) as u64, deg as u64);
                let inner: u64 = inner.try_into().unwrap_or(u64::MAX);
                binomial(inner + count as u64 - 1, count as u64)
                    .try_into()
                    .unwrap_or(u128::MAX)
            };
            (full(d, n), full(n, d))
        }
    }
}

fn check_capacity(d: usize, n: usize, v: usize, weight: Option<&[u32]>, limits: &HhhLimits) -> Result<()> {
    let (cols, rows) = space_dims(d, n, v, weight);
    let label = match weight {
        Some(w) => format!("h_{{{d},{n}}} on C^{v} at weight {w:?}"),
        None => format!("h_{{{d},{n}}} on C^{v}"),
    };
    if cols.max(rows) > limits.max_basis as u128 {
        return Err(Error::Capacity(format!(
            "{label}: basis of size {} exceeds the limit {}",
            cols.max(rows),
            limits.max_basis
        )));
    }
    let work = rows.saturating_mul(cols).saturating_mul(rows.min(cols));
    if work > limits.max_elimination_work {
        return Err(Error::Capacity(format!(
            "{label}: {rows}x{cols} exact elimination (work {work:.3e}) exceeds the limit {:.3e}",
            limits.max_elimination_work as f64,
            work = work as f64
        )));
    }
    Ok(())
}

/// Builds `h_{d,n}` on `ℂ^v`, on the full space or on one weight space.
pub fn build_hhh(d: usize, n: usize, v: usize, weight: Option<&[u32]>, limits: &HhhLimits) -> Result<PlethysmMap> {
    check_params(d, n, v)?;
    if let Some(w) = weight {
        check_weight(d, n, v, w)?;
    }
    check_capacity(d, n, v, weight, limits)?;
    let domain = multiset_basis(d, n, v, weight);
    let codomain = multiset_basis(n, d, v, weight);
    let index: HashMap<&MonomialMultiset, usize> =
        codomain.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let columns: Vec<Vec<(usize, Rational)>> = domain
        .par_iter()
        .map(|b| {
            image_of(b, n, v)
                .into_iter()
                .map(|(ms, c)| (index[&ms], c))
                .collect()
        })
        .collect();
    let mut matrix = Matrix::zeros(codomain.len(), domain.len());
    for (j, col) in columns.into_iter().enumerate() {
        for (i, c) in col {
            matrix.set(i, j, c);
        }
    }
    Ok(PlethysmMap {
        d,
        n,
        v,
        weight: weight.map(<[u32]>::to_vec),
        domain,
        codomain,
        matrix,
    })
}

pub fn hhh_rank(map: &PlethysmMap) -> RankCertificate {
    rank_certificate(&map.matrix)
}

/// Dominant weights of `dn` with at most `v` parts, padded to length `v`,
/// in decreasing lexicographic order.
pub fn dominant_weights(d: usize, n: usize, v: usize) -> Vec<Partition> {
    Partition::bounded((d * n) as u32, v)
}

fn padded(p: &Partition, v: usize) -> Vec<u32> {
    let mut w = p.parts().to_vec();
    w.resize(v, 0);
    w
}

/// Rank and dimensions of one dominant weight space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRank {
    pub weight: Partition,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub rank: usize,
    /// Number of weights in the Weyl orbit of this one.
    pub orbit_size: u64,
}

impl WeightRank {
    pub fn kernel_dim(&self) -> usize {
        self.domain_dim - self.rank
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HhhRankReport {
    pub d: usize,
    pub n: usize,
    pub v: usize,
    pub domain_dim: u128,
    pub codomain_dim: u128,
    pub rank: u128,
    pub weights: Vec<WeightRank>,
}

impl HhhRankReport {
    pub fn kernel_dim(&self) -> u128 {
        self.domain_dim - self.rank
    }
}

/// Per-weight ranks of `h_{d,n}` on `ℂ^v` over all dominant weights,
/// assembled into the rank of the full map (weight spaces in one Weyl orbit
/// have equal rank). Capacity is checked for every weight before any
/// elimination starts.
pub fn hhh_rank_by_weights(d: usize, n: usize, v: usize, limits: &HhhLimits) -> Result<HhhRankReport> {
    check_params(d, n, v)?;
    let ranks = weight_ranks(d, n, v, &dominant_weights(d, n, v), limits)?;
    let sum = |f: &dyn Fn(&WeightRank) -> usize| -> u128 {
        ranks.iter().map(|r| f(r) as u128 * r.orbit_size as u128).sum()
    };
    Ok(HhhRankReport {
        d,
        n,
        v,
        domain_dim: sum(&|r| r.domain_dim),
        codomain_dim: sum(&|r| r.codomain_dim),
        rank: sum(&|r| r.rank),
        weights: ranks,
    })
}


fn weight_ranks(d: usize, n: usize, v: usize, weights: &[Partition], limits: &HhhLimits) -> Result<Vec<WeightRank>> {
    let over: Vec<&Partition> = weights
        .iter()
        .filter(|w| check_capacity(d, n, v, Some(&padded(w, v)), limits).is_err())
        .collect();
    if let Some(worst) = over
        .iter()
        .max_by_key(|w| space_dims(d, n, v, Some(&padded(w, v))).0)
    {
        let Err(Error::Capacity(msg)) = check_capacity(d, n, v, Some(&padded(worst, v)), limits) else {
            unreachable!("weight was filtered as over capacity")
        };
        return Err(Error::Capacity(format!(
            "{} of {} dominant weight spaces are over the limits; largest: {msg}",
            over.len(),
            weights.len()
        )));
    }
    weights
        .par_iter()
        .map(|w| {
            let map = build_hhh(d, n, v, Some(&padded(w, v)), limits)?;
            let rank = hhh_rank(&map).rank;
            let orbit: u64 = w.permutation_count(v).try_into().unwrap_or(u64::MAX);
            Ok(WeightRank {
                weight: w.clone(),
                domain_dim: map.domain.len(),
                codomain_dim: map.codomain.len(),
                rank,
                orbit_size: orbit,
            })
        })
        .collect()
}

/// Multiplicities in `ker h_{d,n}` on `ℂ^v` of every irreducible whose
/// highest weight dominates one of `targets`.
///
/// Only weight spaces in the dominance upper closure of the targets are
/// eliminated, which is far cheaper than the full decomposition when the
/// targets sit high in the order. Targets absent from the kernel map to 0.
pub fn kernel_multiplicities(
    d: usize,
    n: usize,
    v: usize,
    targets: &[Partition],
    limits: &HhhLimits,
) -> Result<BTreeMap<Partition, u64>> {
    check_params(d, n, v)?;
    for t in targets {
        if t.size() as usize != d * n || t.len() > v {
            return Err(Error::Invalid(format!("{t} is not a weight of S^{d}(S^{n} C^{v})")));
        }
    }
    let closure: Vec<Partition> = dominant_weights(d, n, v)
        .into_iter()
        .filter(|w| targets.iter().any(|t| w.dominates(t)))
        .collect();
    let ranks = weight_ranks(d, n, v, &closure, limits)?;
    let dims: Vec<(Partition, i128)> = ranks
        .iter()
        .map(|w| (w.weight.clone(), w.kernel_dim() as i128))
        .collect();
    let mut out: BTreeMap<Partition, u64> = targets.iter().map(|t| (t.clone(), 0)).collect();
    for (p, m) in invert_weight_multiplicities(&dims)? {
        out.insert(p, m as u64);
    }
    Ok(out)
}

/// Irreducible decomposition of `ker h_{d,n}` on `ℂ^v`, from per-weight
/// kernel dimensions and Kostka inversion.
pub fn kernel_character(d: usize, n: usize, v: usize, limits: &HhhLimits) -> Result<BTreeMap<Partition, u64>> {
    let report = hhh_rank_by_weights(d, n, v, limits)?;
    let dims: Vec<(Partition, i128)> = report
        .weights
        .iter()
        .map(|w| (w.weight.clone(), w.kernel_dim() as i128))
        .collect();
    Ok(invert_weight_multiplicities(&dims)?
        .into_iter()
        .map(|(p, m)| (p, m as u64))
        .collect())
}

/// Kernel vectors of a built map, as coefficient vectors over its domain.
pub fn kernel_basis(map: &PlethysmMap) -> Vec<Vec<Rational>> {
    map.matrix.nullspace()
}

/// Value of the domain vector `vec`, read as a degree-`d` polynomial on
/// `S^n W*`, at the point `q`. A basis monomial `∏ y_{m_i}` evaluates to
/// `∏ q_{m_i} m_i!/n!`.
pub fn evaluate_domain_vector(map: &PlethysmMap, vec: &[Rational], q: &Poly) -> Result<Rational> {
    if vec.len() != map.domain.len() {
        return Err(Error::Dimension(format!(
            "vector has {} entries, domain has {}",
            vec.len(),
            map.domain.len()
        )));
    }
    let nfact = crate::scalar::factorial(map.n as u64);
    let mut memo: HashMap<&Monomial, Rational> = HashMap::new();
    let mut total = Rational::zero();
    for (c, b) in vec.iter().zip(&map.domain) {
        if c.is_zero() {
            continue;
        }
        let mut prod = c.clone();
        for m in b.members() {
            let y = memo
                .entry(m)
                .or_insert_with(|| q.coeff(m) * Rational::new(m.factorial_product(), nfact.clone()));
            prod *= y.clone();
            if prod.is_zero() {
                break;
            }
        }
        total += prod;
    }
    Ok(total)
}

fn random_form(rng: &mut ChaCha8Rng, v: usize) -> Vec<Rational> {
    loop {
        let f: Vec<Rational> = (0..v).map(|_| Rational::from_int(rng.gen_range(-5..=5))).collect();
        if f.iter().any(|x| !x.is_zero()) {
            return f;
        }
    }
}

/// A random Chow point `ℓ_1⋯ℓ_n` with small integer coefficients.
pub fn random_chow_point(rng: &mut ChaCha8Rng, n: usize, v: usize) -> Poly {
    (0..n).fold(Poly::one(v), |acc, _| &acc * &Poly::linear(&random_form(rng, v)))
}

/// Whether `vec` vanishes at `trials` random Chow points.
pub fn vector_vanishes_on_chow(map: &PlethysmMap, vec: &[Rational], trials: usize, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let q = random_chow_point(&mut rng, map.n, map.v);
        if !evaluate_domain_vector(map, vec, &q)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChowVanishingReport {
    pub kernel_vectors: usize,
    pub trials: usize,
    pub all_vanish: bool,
}

/// Evaluates every kernel basis vector of every dominant weight space at
/// `trials` random Chow points.
pub fn kernel_vanishes_on_chow(
    d: usize,
    n: usize,
    v: usize,
    trials: usize,
    seed: u64,
    limits: &HhhLimits,
) -> Result<ChowVanishingReport> {
    check_params(d, n, v)?;
    let mut vectors = 0;
    let mut all = true;
    for (i, w) in dominant_weights(d, n, v).iter().enumerate() {
        let map = build_hhh(d, n, v, Some(&padded(w, v)), limits)?;
        for (j, k) in kernel_basis(&map).iter().enumerate() {
            vectors += 1;
            let s = seed ^ ((i as u64) << 32) ^ j as u64;
            all &= vector_vanishes_on_chow(&map, k, trials, s)?;
        }
    }
    Ok(ChowVanishingReport {
        kernel_vectors: vectors,
        trials,
        all_vanish: all,
    })
}

/// Coordinates of `ℓ_1^n ⋯ ℓ_d^n` in the full domain basis.
pub fn power_product_vector(map: &PlethysmMap, forms: &[Vec<Rational>]) -> Result<Vec<Rational>> {
    if map.weight.is_some() {
        return Err(Error::Invalid("needs the full map".into()));
    }
    if forms.len() != map.d || forms.iter().any(|f| f.len() != map.v) {
        return Err(Error::Dimension(format!("need {} linear forms in {} variables", map.d, map.v)));
    }
    let monos = Monomial::all_of_degree(map.v, map.n as u32);
    let nv = monos.len();
    // ℓ^n = Σ_m (n!/m!) ℓ^m x^m, as a linear form in the y_m
    let mut prod = Poly::one(nv);
    for f in forms {
        let lin = Poly::linear(f).pow(map.n as u32);
        let coeffs: Vec<Rational> = monos.iter().map(|m| lin.coeff(m)).collect();
        prod = &prod * &Poly::linear(&coeffs);
    }
    Ok(map
        .domain
        .iter()
        .map(|b| {
            let mut e = vec![0u32; nv];
            for m in b.members() {
                let i = monos.binary_search(m).expect("monomial of degree n");
                e[i] += 1;
            }
            prod.coeff(&Monomial::new(e))
        })
        .collect())
}

/// Coordinates of `(ℓ_1⋯ℓ_d)^n` in the full codomain basis.
pub fn power_of_product_vector(map: &PlethysmMap, forms: &[Vec<Rational>]) -> Result<Vec<Rational>> {
    let monos = Monomial::all_of_degree(map.v, map.d as u32);
    let nv = monos.len();
    let l = forms
        .iter()
        .fold(Poly::one(map.v), |acc, f| &acc * &Poly::linear(f));
    let coeffs: Vec<Rational> = monos.iter().map(|m| l.coeff(m)).collect();
    let p = Poly::linear(&coeffs).pow(map.n as u32);
    Ok(map
        .codomain
        .iter()
        .map(|b| {
            let mut e = vec![0u32; nv];
            for m in b.members() {
                e[monos.binary_search(m).expect("monomial of degree d")] += 1;
            }
            p.coeff(&Monomial::new(e))
        })
        .collect())
}

/// Checks `h(ℓ_1^n⋯ℓ_d^n) = (ℓ_1⋯ℓ_d)^n` on a full map.
pub fn normalization_holds(map: &PlethysmMap, forms: &[Vec<Rational>]) -> Result<bool> {
    let x = power_product_vector(map, forms)?;
    let image = map.matrix.mul_vec(&x)?;
    Ok(image == power_of_product_vector(map, forms)?)
}

/// Brion's explicit degree beyond which `h_{d,n}` on `ℂ^w` is surjective:
/// `(n−1)(w−1)((n−1)⌊C(n+w−1,w−1)/w⌋ − n)`.
pub fn brion_bound(n: u64, w: u64) -> Result<BigInt> {
    if n == 0 || w == 0 {
        return Err(Error::range("n, w", "need n, w >= 1"));
    }
    let c = binomial(n + w - 1, w - 1) / BigInt::from(w);
    let n1 = BigInt::from(n - 1);
    Ok(&n1 * BigInt::from(w - 1) * (&n1 * c - BigInt::from(n)))
}

//! Catalecticant (flattening) matrices, their exact ranks, and the border
//! rank lower bounds they certify.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{Monomial, Polynomial};
use crate::scalar::{binomial_usize, Field};

/// Matrices wider or taller than this are rejected instead of eliminated.
pub const MAX_FLATTENING_DIM: usize = 5000;

/// Matrix of `P_{k,d-k}`: column `m` (degree `k`) holds `∂^m P` expanded in
/// the degree-`(d-k)` row basis.
#[derive(Clone, Debug)]
pub struct FlatteningMatrix<F> {
    pub row_basis: Vec<Monomial>,
    pub col_basis: Vec<Monomial>,
    pub entries: Matrix<F>,
    pub source_digest: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RankMethod {
    FractionFreeBareiss,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankCertificate {
    pub rank: usize,
    pub rows: usize,
    pub cols: usize,
    pub method: RankMethod,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// FNV-1a over the canonical text form; stable across runs and platforms.
pub fn digest_polynomial<F: Field>(p: &Polynomial<F>) -> String {
    let text = serde_json::to_string(&p.to_record()).expect("record serializes");
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in text.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    format!("{h:016x}")
}

fn check_capacity(rows: usize, cols: usize) -> Result<()> {
    if rows > MAX_FLATTENING_DIM || cols > MAX_FLATTENING_DIM {
        return Err(Error::Capacity(format!(
            "flattening would be {rows}x{cols}, limit {MAX_FLATTENING_DIM}"
        )));
    }
    Ok(())
}

/// The polarization `P_{k,d-k}` of a homogeneous polynomial, `1 ≤ k ≤ d-1`.
pub fn polarize<F: Field>(p: &Polynomial<F>, k: u32) -> Result<FlatteningMatrix<F>> {
    let d = p.homogeneous_degree()?;
    if k == 0 || k >= d {
        return Err(Error::range("k", format!("need 1 <= k <= {}, got {k}", d.saturating_sub(1))));
    }
    flattening(p, d, k)
}

fn flattening<F: Field>(p: &Polynomial<F>, d: u32, k: u32) -> Result<FlatteningMatrix<F>> {
    let v = p.num_vars();
    let n_rows = binomial_usize(v + (d - k) as usize - 1, (d - k) as usize);
    let n_cols = binomial_usize(v + k as usize - 1, k as usize);
    check_capacity(n_rows, n_cols)?;
    let row_basis = Monomial::all_of_degree(v, d - k);
    let col_basis = Monomial::all_of_degree(v, k);
    let row_index: HashMap<&Monomial, usize> =
        row_basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut entries = Matrix::zeros(row_basis.len(), col_basis.len());
    for (j, m) in col_basis.iter().enumerate() {
        for (t, c) in p.terms() {
            if let Some(q) = m.quotient_of(t) {
                let i = row_index[&q];
                let v = c.clone() * F::from_bigint(&m.derivative_factor(t));
                entries.set(i, j, v);
            }
        }
    }
    Ok(FlatteningMatrix {
        row_basis,
        col_basis,
        entries,
        source_digest: digest_polynomial(p),
    })
}

pub fn exact_rank<F: Field>(m: &FlatteningMatrix<F>) -> RankCertificate {
    rank_certificate(&m.entries)
}

pub fn rank_certificate<F: Field>(m: &Matrix<F>) -> RankCertificate {
    let start = Instant::now();
    let rank = m.rank();
    RankCertificate {
        rank,
        rows: m.rows(),
        cols: m.cols(),
        method: RankMethod::FractionFreeBareiss,
        elapsed: start.elapsed(),
    }
}

/// `rank P_{k,d-k}` for every `k` in `1..=d-1` (`[1]` when `d ≤ 1`).
pub fn flattening_ranks<F: Field>(p: &Polynomial<F>) -> Result<Vec<(u32, usize)>> {
    let d = p.homogeneous_degree()?;
    if d <= 1 {
        return Ok(vec![(d, 1)]);
    }
    let mut out = Vec::new();
    for k in 1..d {
        // rank P_{k,d-k} = rank P_{d-k,k}
        let r = if 2 * k > d {
            out.iter()
                .find(|(kk, _)| *kk == d - k)
                .map(|&(_, r)| r)
                .expect("smaller k computed first")
        } else {
            exact_rank(&flattening(p, d, k)?).rank
        };
        out.push((k, r));
    }
    Ok(out)
}

/// `max_k rank P_{k,d-k}`, a lower bound for the Waring border rank.
pub fn waring_border_lower_bound<F: Field>(p: &Polynomial<F>) -> Result<usize> {
    Ok(flattening_ranks(p)?
        .into_iter()
        .map(|(_, r)| r)
        .max()
        .unwrap_or(1))
}

/// `max_k ⌈rank P_{k,d-k} / C(d,k)⌉`, a lower bound for the border rank
/// with respect to products of `d` linear forms.
pub fn chow_border_lower_bound<F: Field>(p: &Polynomial<F>) -> Result<usize> {
    let d = p.homogeneous_degree()? as usize;
    Ok(flattening_ranks(p)?
        .into_iter()
        .map(|(k, r)| {
            let b = binomial_usize(d, k as usize).max(1);
            r.div_ceil(b)
        })
        .max()
        .unwrap_or(1))
}

/// Dimension of `span{ m'' · ∂^{m'} P : deg m' = k, deg m'' = l }`.
pub fn shifted_partials_dim<F: Field>(p: &Polynomial<F>, k: u32, l: u32) -> Result<usize> {
    let d = p.homogeneous_degree()?;
    if k >= d {
        return Err(Error::range("k", format!("need k < {d}, got {k}")));
    }
    let v = p.num_vars();
    // a basis of the k-th partials spans the same shifted space
    let partials: Vec<Polynomial<F>> = Monomial::all_of_degree(v, k)
        .iter()
        .map(|m| p.differentiate(m))
        .filter(|q| !q.is_zero())
        .collect();
    let basis = independent_subset(&partials, v, d - k)?;
    let shifts = Monomial::all_of_degree(v, l);
    let target_deg = d - k + l;
    let n_rows = binomial_usize(v + target_deg as usize - 1, target_deg as usize);
    let n_cols = basis.len() * shifts.len();
    check_capacity(n_rows, n_cols)?;
    let rows = Monomial::all_of_degree(v, target_deg);
    let row_index: HashMap<&Monomial, usize> = rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut mat = Matrix::zeros(rows.len(), n_cols);
    let mut col = 0;
    for b in &basis {
        for s in &shifts {
            for (t, c) in b.terms() {
                mat.set(row_index[&t.mul(s)], col, c.clone());
            }
            col += 1;
        }
    }
    Ok(mat.rank())
}

fn independent_subset<F: Field>(polys: &[Polynomial<F>], v: usize, deg: u32) -> Result<Vec<Polynomial<F>>> {
    let rows = Monomial::all_of_degree(v, deg);
    check_capacity(rows.len(), polys.len())?;
    let index: HashMap<&Monomial, usize> = rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut mat = Matrix::zeros(polys.len(), rows.len());
    for (i, q) in polys.iter().enumerate() {
        for (t, c) in q.terms() {
            mat.set(i, index[t], c.clone());
        }
    }
    let (r, pivots) = mat.rref();
    Ok((0..pivots.len())
        .map(|i| {
            Polynomial::from_terms(
                v,
                r.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| (rows[j].clone(), c.clone())),
            )
            .expect("basis monomials share the variable count")
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;
    use crate::{Poly, Rational};

    #[test]
    fn power_of_a_variable_has_rank_one() {
        let p = Poly::var(3, 0).pow(5);
        for k in 1..5 {
            assert_eq!(exact_rank(&polarize(&p, k).unwrap()).rank, 1);
        }
        assert_eq!(waring_border_lower_bound(&p).unwrap(), 1);
    }

    #[test]
    fn polarize_rejects_bad_input() {
        let p = Poly::var(2, 0).pow(3);
        assert!(matches!(polarize(&p, 0), Err(Error::OutOfRange { .. })));
        assert!(matches!(polarize(&p, 3), Err(Error::OutOfRange { .. })));
        let q = &p + &Poly::var(2, 1);
        assert_eq!(polarize(&q, 1).unwrap_err(), Error::Inhomogeneous);
        assert_eq!(polarize(&Poly::zero(2), 1).unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn entries_match_partial_derivatives() {
        let p = zoo::det(3);
        let f = polarize(&p, 1).unwrap();
        for (j, m) in f.col_basis.iter().enumerate() {
            let d = p.differentiate(m);
            for (i, r) in f.row_basis.iter().enumerate() {
                assert_eq!(f.entries.get(i, j), &d.coeff(r));
            }
        }
    }

    #[test]
    fn chow_polynomial_ranks() {
        let p = zoo::chow(3);
        assert_eq!(exact_rank(&polarize(&p, 1).unwrap()).rank, 3);
        assert_eq!(chow_border_lower_bound(&zoo::chow(5)).unwrap(), 1);
    }

    #[test]
    fn shifted_partials_collapse_and_power_case() {
        let p = zoo::det(3);
        assert_eq!(shifted_partials_dim(&p, 1, 0).unwrap(), 9);
        // x1^4 in two variables: x1^{4-k} * S^l has dimension l+1
        let x = Poly::var(2, 0).pow(4);
        for l in 0..4 {
            assert_eq!(shifted_partials_dim(&x, 2, l).unwrap(), (l + 1) as usize);
        }
        assert!(shifted_partials_dim(&x, 4, 0).is_err());
    }

    #[test]
    fn digest_is_stable() {
        let a = digest_polynomial(&zoo::det(2));
        let b = digest_polynomial(&zoo::det(2));
        assert_eq!(a, b);
        assert_ne!(a, digest_polynomial(&zoo::perm(2)));
        let _ = Rational::from_int(0);
    }
}

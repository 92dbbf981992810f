use std::fmt;

use rayon::prelude::*;

use crate::combinat::combinations;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::Polynomial;
use crate::scalar::Field;

/// A square matrix of polynomials over one variable space.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<F> {
    num_vars: usize,
    entries: Vec<Vec<Polynomial<F>>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn new(num_vars: usize, entries: Vec<Vec<Polynomial<F>>>) -> Result<Self> {
        let n = entries.len();
        for row in &entries {
            if row.len() != n {
                return Err(Error::Dimension(format!("row of length {} in a {n}x{n} matrix", row.len())));
            }
            if let Some(p) = row.iter().find(|p| p.num_vars() != num_vars) {
                return Err(Error::VariableMismatch {
                    left: num_vars,
                    right: p.num_vars(),
                });
            }
        }
        Ok(PolyMatrix { num_vars, entries })
    }

    /// The generic `n×n` matrix: entry `(i, j)` is variable `i*n + j`.
    pub fn generic(n: usize) -> Self {
        let nv = n * n;
        let entries = (0..n)
            .map(|i| (0..n).map(|j| Polynomial::var(nv, i * n + j)).collect())
            .collect();
        PolyMatrix { num_vars: nv, entries }
    }

    /// Constant matrix.
    pub fn from_scalars(num_vars: usize, m: &Matrix<F>) -> Self {
        let entries = (0..m.rows())
            .map(|i| {
                (0..m.cols())
                    .map(|j| Polynomial::constant(num_vars, m.get(i, j).clone()))
                    .collect()
            })
            .collect();
        PolyMatrix { num_vars, entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Polynomial<F>>] {
        &self.entries
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn trace(&self) -> Polynomial<F> {
        (0..self.size()).fold(Polynomial::zero(self.num_vars), |acc, i| &acc + &self.entries[i][i])
    }

    /// Evaluates every entry at `point`.
    pub fn eval(&self, point: &[F]) -> Result<Matrix<F>> {
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|p| p.eval(point)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    }

    /// Determinant of the submatrix on `rows × cols` (equal lengths), by
    /// Laplace expansion memoized over column subsets.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Polynomial<F> {
        let k = rows.len();
        debug_assert_eq!(k, cols.len());
        if k == 0 {
            return Polynomial::one(self.num_vars);
        }
        assert!(k < usize::BITS as usize, "minor too large");
        // dp[mask] = det of rows[0..|mask|] against the columns in mask
        let mut dp: Vec<Option<Polynomial<F>>> = vec![None; 1 << k];
        dp[0] = Some(Polynomial::one(self.num_vars));
        for mask in 1usize..(1 << k) {
            let r = mask.count_ones() as usize - 1;
            let mut acc = Polynomial::zero(self.num_vars);
            let mut idx = 0;
            for c in 0..k {
                if mask >> c & 1 == 0 {
                    continue;
                }
                let a = &self.entries[rows[r]][cols[c]];
                let sub = dp[mask ^ (1 << c)].as_ref().expect("smaller masks first");
                if !a.is_zero() && !sub.is_zero() {
                    let term = a * sub;
                    acc = if (r + idx) % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                idx += 1;
            }
            dp[mask] = Some(acc);
        }
        dp.pop().flatten().expect("full mask")
    }

    pub fn det(&self) -> Polynomial<F> {
        let all: Vec<usize> = (0..self.size()).collect();
        self.minor(&all, &all)
    }

    /// `cp_s`: the sum of all `s×s` principal minors.
    pub fn charpoly_coeff(&self, s: usize) -> Result<Polynomial<F>> {
        let n = self.size();
        if s > n {
            return Err(Error::range("s", format!("{s} exceeds the matrix size {n}")));
        }
        let minors: Vec<Polynomial<F>> = combinations(n, s)
            .par_iter()
            .map(|idx| self.minor(idx, idx))
            .collect();
        Ok(minors
            .into_iter()
            .fold(Polynomial::zero(self.num_vars), |acc, m| &acc + &m))
    }

    /// `cp_0, …, cp_up_to`.
    pub fn charpoly_coeffs(&self, up_to: usize) -> Result<Vec<Polynomial<F>>> {
        (0..=up_to).map(|s| self.charpoly_coeff(s)).collect()
    }

    /// Matrix of `k×k` minors, rows and columns in lexicographic subset order.
    pub fn compound(&self, k: usize) -> Result<Self> {
        let n = self.size();
        if k == 0 || k > n {
            return Err(Error::range("k", format!("need 1 <= k <= {n}, got {k}")));
        }
        let subsets = combinations(n, k);
        let entries = subsets
            .par_iter()
            .map(|r| subsets.iter().map(|c| self.minor(r, c)).collect())
            .collect();
        Ok(PolyMatrix {
            num_vars: self.num_vars,
            entries,
        })
    }
}

impl<F: Field> fmt::Display for PolyMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Matrix of `k×k` minors of a scalar matrix.
pub fn compound_scalar<F: Field>(m: &Matrix<F>, k: usize) -> Result<Matrix<F>> {
    let n = m.rows();
    if m.cols() != n {
        return Err(Error::Dimension("compound of a non-square matrix".into()));
    }
    if k == 0 || k > n {
        return Err(Error::range("k", format!("need 1 <= k <= {n}, got {k}")));
    }
    let subsets = combinations(n, k);
    let mut out = Matrix::zeros(subsets.len(), subsets.len());
    for (a, r) in subsets.iter().enumerate() {
        for (b, c) in subsets.iter().enumerate() {
            let sub = Matrix::from_fn(k, k, |i, j| m.get(r[i], c[j]).clone());
            out.set(a, b, sub.det()?);
        }
    }
    Ok(out)
}

/// Sum of `s×s` principal minors of a scalar matrix.
pub fn charpoly_coeff_scalar<F: Field>(m: &Matrix<F>, s: usize) -> Result<F> {
    let n = m.rows();
    if s > n {
        return Err(Error::range("s", format!("{s} exceeds the matrix size {n}")));
    }
    let mut acc = F::zero();
    for idx in combinations(n, s) {
        let sub = Matrix::from_fn(s, s, |i, j| m.get(idx[i], idx[j]).clone());
        acc = acc + if s == 0 { F::one() } else { sub.det()? };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Poly, Rational};

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn scalar(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn charpoly_of_diagonal_is_elementary_symmetric() {
        let m = PolyMatrix::from_scalars(0, &scalar(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]));
        let c: Vec<Poly> = m.charpoly_coeffs(3).unwrap();
        let want = [1, 10, 31, 30];
        for (s, w) in want.iter().enumerate() {
            assert_eq!(c[s], Poly::constant(0, q(*w)), "cp_{s}");
        }
    }

    #[test]
    fn charpoly_ends_are_trace_and_det() {
        let g = PolyMatrix::<Rational>::generic(3);
        assert_eq!(g.charpoly_coeff(1).unwrap(), g.trace());
        assert_eq!(g.charpoly_coeff(3).unwrap(), g.det());
        assert_eq!(g.det(), crate::zoo::det(3));
        assert!(g.charpoly_coeff(4).is_err());
    }

    #[test]
    fn compound_examples() {
        let g = PolyMatrix::<Rational>::generic(2);
        assert_eq!(g.compound(1).unwrap(), g);
        let c2 = g.compound(2).unwrap();
        assert_eq!(c2.size(), 1);
        assert_eq!(c2.get(0, 0), &g.det());
        assert!(g.compound(3).is_err());

        let d = scalar(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]);
        assert_eq!(compound_scalar(&d, 2).unwrap(), scalar(&[&[6, 0, 0], &[0, 10, 0], &[0, 0, 15]]));
    }

    #[test]
    fn scalar_charpoly_matches_direct_expansion() {
        // det(tI + M) = t³ + cp_1 t² + cp_2 t + cp_3, sampled at t = 0..3
        let m = scalar(&[&[1, 2, -1], &[0, 3, 4], &[2, -2, 1]]);
        let cps: Vec<Rational> = (0..=3).map(|s| charpoly_coeff_scalar(&m, s).unwrap()).collect();
        for t in 0..4 {
            let shifted = Matrix::from_fn(3, 3, |i, j| {
                let base = m.get(i, j).clone();
                if i == j {
                    base + q(t)
                } else {
                    base
                }
            });
            let tt = q(t);
            let poly = &cps[0] * &tt * &tt * &tt + &cps[1] * &tt * &tt + &cps[2] * &tt + &cps[3];
            assert_eq!(shifted.det().unwrap(), poly);
        }
    }

    #[test]
    fn minors_and_eval() {
        let g = PolyMatrix::<Rational>::generic(3);
        let m = g.minor(&[0, 1], &[0, 2]);
        let pt: Vec<Rational> = (1..=9).map(q).collect();
        assert_eq!(m.eval(&pt).unwrap(), q(1 * 6 - 3 * 4));
        assert_eq!(g.eval(&pt).unwrap().get(2, 1), &q(8));
        assert!(!g.is_symmetric());
    }
}

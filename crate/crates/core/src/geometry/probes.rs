use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::hessian;
use crate::error::{Error, Result};
use crate::flatten::rank_certificate;
use crate::linalg::Matrix;
use crate::poly::{Monomial, Polynomial};
use crate::scalar::Field;
use crate::Rational;

/// `rank H_P(w) − 2`, the dimension of the dual variety of `Z(P)` when `w`
/// is a general point of it.
pub fn dual_dimension_at<F: Field>(p: &Polynomial<F>, w: &[F]) -> Result<usize> {
    if w.len() != p.num_vars() {
        return Err(Error::Dimension(format!(
            "point has {} coordinates, polynomial has {} variables",
            w.len(),
            p.num_vars()
        )));
    }
    if !p.eval(w)?.is_zero() {
        return Err(Error::Invalid("point is not on the hypersurface".into()));
    }
    let singular = (0..p.num_vars())
        .map(|i| p.partial(i).eval(w))
        .collect::<Result<Vec<F>>>()?
        .iter()
        .all(Zero::is_zero);
    if singular {
        return Err(Error::Invalid("point is singular: the gradient vanishes".into()));
    }
    let h = hessian(p)?.eval(w)?;
    let rank = rank_certificate(&h).rank;
    rank.checked_sub(2)
        .ok_or_else(|| Error::Invalid(format!("Hessian rank {rank} is below 2")))
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix<Rational> {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| Rational::from_int(rng.gen_range(-4..=4)));
        if !m.det().expect("square").is_zero() {
            return m;
        }
    }
}

/// `g · diag(1,…,1,0) · h` for random invertible rational `g, h`, flattened
/// row-major: a point of `Z(det_n)` of matrix rank `n−1`.
pub fn rank_deficient_point(n: usize, rng: &mut ChaCha8Rng) -> Vec<Rational> {
    let g = random_invertible(rng, n);
    let h = random_invertible(rng, n);
    let d = Matrix::from_fn(n, n, |i, j| {
        if i == j && i + 1 < n {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    let m = g.mul(&d).and_then(|x| x.mul(&h)).expect("square");
    m.to_rows().into_iter().flatten().collect()
}

/// The all-ones `m×m` matrix with `1−m` in the top-left slot, row-major.
pub fn perm_special_point(m: usize) -> Vec<Rational> {
    let mut p = vec![Rational::one(); m * m];
    p[0] = Rational::from_int(1 - m as i64);
    p
}

/// Dimension of `{X ∈ gl(v) : Σ_{ij} X_{ij} x_j ∂P/∂x_i = 0}`.
pub fn stabilizer_lie_dim<F: Field>(p: &Polynomial<F>) -> Result<usize> {
    p.homogeneous_degree()?;
    let v = p.num_vars();
    let partials: Vec<Polynomial<F>> = (0..v).map(|i| p.partial(i)).collect();
    // column (i, j) holds the coefficients of x_j ∂_i P
    let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
    let mut columns: Vec<Vec<(usize, F)>> = Vec::with_capacity(v * v);
    for dp in &partials {
        for j in 0..v {
            let xj = Monomial::var(v, j);
            let col = dp
                .terms()
                .map(|(m, c)| {
                    let next = rows.len();
                    let r = *rows.entry(m.mul(&xj)).or_insert(next);
                    (r, c.clone())
                })
                .collect();
            columns.push(col);
        }
    }
    let mut m = Matrix::zeros(rows.len(), v * v);
    for (c, col) in columns.into_iter().enumerate() {
        for (r, x) in col {
            m.set(r, c, x);
        }
    }
    Ok(v * v - rank_certificate(&m).rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::{chow, det, fermat, perm};
    use crate::Poly;
    use rand::SeedableRng;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn quadric_pair_has_point_dual() {
        let p = &Poly::var(2, 0) * &Poly::var(2, 1);
        assert_eq!(dual_dimension_at(&p, &[q(1), q(0)]).unwrap(), 0);
        assert!(dual_dimension_at(&p, &[q(1), q(1)]).is_err());
        assert!(dual_dimension_at(&p, &[q(0), q(0)]).is_err());
    }

    #[test]
    fn determinant_dual_dimension_is_stable_over_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let w = rank_deficient_point(3, &mut rng);
            assert_eq!(dual_dimension_at(&det(3), &w).unwrap(), 4);
        }
    }

    #[test]
    fn permanent_special_point() {
        let w = perm_special_point(3);
        assert!(perm(3).eval(&w).unwrap().is_zero());
        assert_eq!(dual_dimension_at(&perm(3), &w).unwrap(), 7);
    }

    #[test]
    fn stabilizer_dimensions() {
        assert_eq!(stabilizer_lie_dim(&det(2)).unwrap(), 6);
        assert_eq!(stabilizer_lie_dim(&chow(3)).unwrap(), 2);
        assert_eq!(stabilizer_lie_dim(&fermat(3, 3)).unwrap(), 0);
        // a quadric of full rank: so(3)
        assert_eq!(stabilizer_lie_dim(&fermat(2, 3)).unwrap(), 3);
    }
}

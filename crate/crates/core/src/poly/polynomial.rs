use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Sparse multivariate polynomial with exact coefficients.
///
/// Terms are kept in a map ordered by grevlex, so iteration and
/// serialization are canonical. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial<F> {
    num_vars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(num_vars: usize) -> Self {
        Polynomial {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: F) -> Self {
        let mut p = Self::zero(num_vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(num_vars), c);
        }
        p
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, F::one())
    }

    /// The coordinate `x_{i+1}` (zero-based index).
    pub fn var(num_vars: usize, i: usize) -> Self {
        assert!(i < num_vars, "variable index {i} out of {num_vars}");
        Self::monomial(num_vars, Monomial::var(num_vars, i), F::one())
    }

    pub fn monomial(num_vars: usize, m: Monomial, c: F) -> Self {
        assert_eq!(m.num_vars(), num_vars);
        let mut p = Self::zero(num_vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Linear form `Σ c_i x_i`.
    pub fn linear(coeffs: &[F]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(Monomial::var(n, i), c.clone());
            }
        }
        p
    }

    /// Collects terms, summing repeated monomials and dropping zeros.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, F)>,
    {
        let mut p = Self::zero(num_vars);
        for (m, c) in terms {
            if m.num_vars() != num_vars {
                return Err(Error::VariableMismatch {
                    left: num_vars,
                    right: m.num_vars(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn from_hash(num_vars: usize, acc: HashMap<Monomial, F>) -> Self {
        Polynomial {
            num_vars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// True when every term has the same degree (vacuously for zero).
    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Common degree of a nonzero homogeneous polynomial.
    pub fn homogeneous_degree(&self) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !self.is_homogeneous() {
            return Err(Error::Inhomogeneous);
        }
        Ok(self.degree().unwrap_or(0))
    }

    /// Grevlex-leading term.
    pub fn leading_term(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::VariableMismatch {
                left: self.num_vars,
                right: other.num_vars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut acc: HashMap<Monomial, F> =
            HashMap::with_capacity(self.terms.len() * other.terms.len().min(64));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca.clone() * cb.clone();
                let e = acc.entry(ma.mul(mb)).or_insert_with(F::zero);
                *e = e.clone() + c;
            }
        }
        Ok(Self::from_hash(self.num_vars, acc))
    }

    /// Product keeping only monomials that divide `bound`.
    ///
    /// Exact for coefficient extraction below `bound`, since exponents
    /// only grow under multiplication.
    pub fn mul_truncated(&self, other: &Self, bound: &Monomial) -> Result<Self> {
        self.check_vars(other)?;
        let mut acc: HashMap<Monomial, F> = HashMap::new();
        for (ma, ca) in &self.terms {
            if !ma.divides(bound) {
                continue;
            }
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if !m.divides(bound) {
                    continue;
                }
                let e = acc.entry(m).or_insert_with(F::zero);
                *e = e.clone() + ca.clone() * cb.clone();
            }
        }
        Ok(Self::from_hash(self.num_vars, acc))
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        Polynomial {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.num_vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn eval(&self, point: &[F]) -> Result<F> {
        if point.len() != self.num_vars {
            return Err(Error::VariableMismatch {
                left: self.num_vars,
                right: point.len(),
            });
        }
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// `∂/∂x_{i+1}`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.num_vars);
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[i] -= 1;
            out.terms
                .insert(Monomial::new(exps), c.clone() * F::from_int(e as i64));
        }
        out
    }

    /// `∂^m` applied to `self`, plain partial derivatives.
    pub fn differentiate(&self, m: &Monomial) -> Self {
        let mut out = Self::zero(self.num_vars);
        for (t, c) in &self.terms {
            if let Some(q) = m.quotient_of(t) {
                let f = F::from_bigint(&m.derivative_factor(t));
                out.terms.insert(q, c.clone() * f);
            }
        }
        out
    }

    /// Multivariate division in grevlex order: `self = q·divisor + r`
    /// where no term of `r` is divisible by the divisor's leading monomial.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check_vars(divisor)?;
        let (lm, lc) = match divisor.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(Error::ZeroPolynomial),
        };
        let mut rem = self.clone();
        let mut quot = Self::zero(self.num_vars);
        let mut out_rem = Self::zero(self.num_vars);
        while let Some((m, c)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            match lm.quotient_of(&m) {
                Some(q) => {
                    let coef = c / lc.clone();
                    for (dm, dc) in &divisor.terms {
                        rem.add_term(q.mul(dm), -(coef.clone() * dc.clone()));
                    }
                    quot.add_term(q, coef);
                }
                None => {
                    rem.terms.remove(&m);
                    out_rem.add_term(m, c);
                }
            }
        }
        Ok((quot, out_rem))
    }

    /// Exact quotient, or the leading term of the nonzero remainder.
    pub fn exact_div(&self, divisor: &Self) -> std::result::Result<Self, String> {
        let (q, r) = self.div_rem(divisor).map_err(|e| e.to_string())?;
        match r.leading_term() {
            None => Ok(q),
            Some((m, c)) => Err(format!("nonzero remainder, leading term {} * {m}", c.to_exact_string())),
        }
    }

    /// Reinterprets the polynomial in a larger variable space by mapping
    /// variable `i` to `targets[i]`.
    pub fn embed(&self, num_vars: usize, targets: &[usize]) -> Result<Self> {
        if targets.len() != self.num_vars {
            return Err(Error::Dimension(format!(
                "embedding needs {} targets, got {}",
                self.num_vars,
                targets.len()
            )));
        }
        let mut out = Self::zero(num_vars);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; num_vars];
            for (i, &x) in m.exps().iter().enumerate() {
                let t = *targets
                    .get(i)
                    .filter(|&&t| t < num_vars)
                    .ok_or_else(|| Error::Dimension(format!("target {i} out of range")))?;
                e[t] += x;
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        Ok(out)
    }

    /// Applies `f` to each coefficient, dropping terms that become zero.
    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Polynomial<G> {
        let mut out = Polynomial::zero(self.num_vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

impl<'a, F: Field> Add for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    /// Panics on mismatched variable counts; use `checked_add` to recover.
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl<'a, F: Field> Sub for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl<'a, F: Field> Mul for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl<F: Field> Add for Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        &self + &rhs
    }
}

impl<F: Field> Sub for Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        &self - &rhs
    }
}

impl<F: Field> Mul for Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        &self * &rhs
    }
}

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.scale(&-F::one())
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    /// Descending grevlex, e.g. `x1*x4 - x2*x3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{}", abs.to_exact_string())?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", abs.to_exact_string())?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Poly, Rational};

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn additive_inverse_is_zero() {
        let p = x(1, 0);
        assert!((&p + &(-p.clone())).is_zero());
        assert_eq!(&p + &Poly::zero(1), p);
    }

    #[test]
    fn mismatched_vars_rejected() {
        assert!(x(2, 0).checked_add(&x(3, 0)).is_err());
        assert!(x(2, 0).checked_mul(&x(3, 0)).is_err());
    }

    #[test]
    fn difference_of_squares() {
        let a = &x(2, 0) + &x(2, 1);
        let b = &x(2, 0) - &x(2, 1);
        let want = &x(2, 0).pow(2) - &x(2, 1).pow(2);
        assert_eq!(&a * &b, want);
        assert_eq!(format!("{}", want), "x1^2 - x2^2");
    }

    #[test]
    fn division_exact_and_inexact() {
        let a = &x(2, 0) + &x(2, 1);
        let b = &x(2, 0) - &x(2, 1);
        let p = &(&a * &b) * &a;
        assert_eq!(p.exact_div(&a).unwrap(), &a * &b);
        let r = (&p + &Poly::constant(2, q(1))).exact_div(&a);
        assert!(r.is_err());
    }

    #[test]
    fn derivative_and_eval() {
        let p = &x(2, 0).pow(3) * &x(2, 1);
        assert_eq!(p.partial(0), (&x(2, 0).pow(2) * &x(2, 1)).scale(&q(3)));
        assert_eq!(p.eval(&[q(2), q(3)]).unwrap(), q(24));
        let m = Monomial::new(vec![2, 1]);
        assert_eq!(p.differentiate(&m), x(2, 0).scale(&q(6)));
        assert!(p.differentiate(&Monomial::new(vec![0, 2])).is_zero());
    }

    #[test]
    fn homogeneity() {
        assert!(Poly::zero(3).is_homogeneous());
        assert_eq!(Poly::zero(3).homogeneous_degree(), Err(Error::ZeroPolynomial));
        let p = &x(2, 0) + &x(2, 1).pow(2);
        assert_eq!(p.homogeneous_degree(), Err(Error::Inhomogeneous));
    }
}

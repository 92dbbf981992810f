use std::collections::HashMap;

use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Linear change of variables.
///
/// Row `i` holds the linear form (over `num_vars_out` new variables) that
/// replaces old variable `x_{i+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSubstitution<F> {
    rows: Vec<Vec<F>>,
    num_vars_out: usize,
}

impl<F: Field> LinearSubstitution<F> {
    pub fn new(rows: Vec<Vec<F>>) -> Result<Self> {
        let num_vars_out = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != num_vars_out) {
            return Err(Error::Dimension("ragged substitution matrix".into()));
        }
        Ok(LinearSubstitution { rows, num_vars_out })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect())
            .collect();
        LinearSubstitution {
            rows,
            num_vars_out: n,
        }
    }

    pub fn num_vars_in(&self) -> usize {
        self.rows.len()
    }

    pub fn num_vars_out(&self) -> usize {
        self.num_vars_out
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    /// `x ↦ g(x)` then `y ↦ h(y)`; composing substitutions multiplies
    /// their matrices: `substitute(substitute(p, g), h) = substitute(p, g.then(h))`.
    pub fn then(&self, h: &LinearSubstitution<F>) -> Result<Self> {
        if self.num_vars_out != h.num_vars_in() {
            return Err(Error::Dimension(format!(
                "cannot compose {}→{} with {}→{}",
                self.num_vars_in(),
                self.num_vars_out,
                h.num_vars_in(),
                h.num_vars_out
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                (0..h.num_vars_out)
                    .map(|k| {
                        row.iter()
                            .zip(&h.rows)
                            .fold(F::zero(), |acc, (a, hr)| acc + a.clone() * hr[k].clone())
                    })
                    .collect()
            })
            .collect();
        LinearSubstitution::new(rows)
    }
}

/// `p(x)` with every `x_i` replaced by its linear form, expanded.
pub fn substitute<F: Field>(p: &Polynomial<F>, s: &LinearSubstitution<F>) -> Result<Polynomial<F>> {
    if s.num_vars_in() != p.num_vars() {
        return Err(Error::Dimension(format!(
            "substitution expects {} variables, polynomial has {}",
            s.num_vars_in(),
            p.num_vars()
        )));
    }
    let out_n = s.num_vars_out();
    let forms: Vec<Polynomial<F>> = s.rows().iter().map(|r| Polynomial::linear(r)).collect();
    // powers[i][e] = form_i^e, filled lazily
    let mut powers: HashMap<(usize, u32), Polynomial<F>> = HashMap::new();
    let mut out = Polynomial::zero(out_n);
    for (m, c) in p.terms() {
        let mut t = Polynomial::constant(out_n, c.clone());
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let pw = powers
                .entry((i, e))
                .or_insert_with(|| forms[i].pow(e))
                .clone();
            t = &t * &pw;
            if t.is_zero() {
                break;
            }
        }
        out = &out + &t;
    }
    Ok(out)
}

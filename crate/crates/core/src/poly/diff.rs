use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Applies `op` as a constant-coefficient differential operator, reading
/// each variable of `op` as `∂/∂x` of the matching variable of `target`.
/// Plain partial derivatives: `apply_diff(x^m, x^m) = m!`.
pub fn apply_diff<F: Field>(op: &Polynomial<F>, target: &Polynomial<F>) -> Result<Polynomial<F>> {
    if op.num_vars() != target.num_vars() {
        return Err(Error::VariableMismatch {
            left: op.num_vars(),
            right: target.num_vars(),
        });
    }
    let mut out = Polynomial::zero(target.num_vars());
    for (m, c) in op.terms() {
        for (t, tc) in target.terms() {
            if let Some(q) = m.quotient_of(t) {
                let f = F::from_bigint(&m.derivative_factor(t));
                out.add_term(q, c.clone() * tc.clone() * f);
            }
        }
    }
    Ok(out)
}

/// Full contraction of equal-degree forms: the scalar `apply_diff(op, target)`.
pub fn pairing<F: Field>(op: &Polynomial<F>, target: &Polynomial<F>) -> Result<F> {
    if op.num_vars() != target.num_vars() {
        return Err(Error::VariableMismatch {
            left: op.num_vars(),
            right: target.num_vars(),
        });
    }
    // only matching monomials survive to degree zero
    let mut acc = F::zero();
    let (small, large) = if op.len() <= target.len() {
        (op, target)
    } else {
        (target, op)
    };
    for (m, c) in small.terms() {
        let other = large.coeff(m);
        if !other.is_zero() {
            acc = acc + c.clone() * other * F::from_bigint(&m.factorial_product());
        }
    }
    Ok(acc)
}

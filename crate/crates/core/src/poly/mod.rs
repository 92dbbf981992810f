//! Exact sparse multivariate polynomials, linear substitution and
//! constant-coefficient differential operators.

mod diff;
mod io;
mod monomial;
mod polynomial;
mod subst;

pub use diff::{apply_diff, pairing};
pub use io::{PolynomialRecord, TermRecord};
pub use monomial::Monomial;
pub use polynomial::Polynomial;
pub use subst::{substitute, LinearSubstitution};

pub use crate::flatten::polarize;

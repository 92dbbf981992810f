//! Exact polynomial algebra and representation-theoretic computations for
//! comparing determinant and permanent complexity.
//!
//! Everything is exact: coefficients live in a [`Field`], which in practice
//! is [`Rational`].

pub mod combinat;
pub mod error;
pub mod flatten;
pub mod geometry;
pub mod hhh;
pub mod latin;
pub mod linalg;
pub mod poly;
pub mod rep;
pub mod scalar;
pub mod zoo;

pub use error::{Error, Result};
pub use scalar::Field;

pub type Rational = num_rational::BigRational;
pub type Poly = poly::Polynomial<Rational>;

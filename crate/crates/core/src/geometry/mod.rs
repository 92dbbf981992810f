//! Hessians, characteristic-polynomial coefficients of polynomial
//! matrices, compound matrices, determinant identities, dual-variety
//! dimensions and stabilizer Lie algebras.

mod identities;
mod polymatrix;
mod probes;

pub use identities::{
    cayley_check, charpoly_coeffs, discriminant_identity_holds, frobenius_quadric, hessian,
    trace_square_quadric, verify_discriminant_identity, verify_sfturbo, verify_sylvester_franke,
    CheckOutcome, SfturboCheck, SfturboReport, SylvesterFrankeReport,
};
pub use polymatrix::{charpoly_coeff_scalar, compound_scalar, PolyMatrix};
pub use probes::{
    dual_dimension_at, perm_special_point, rank_deficient_point, stabilizer_lie_dim,
};

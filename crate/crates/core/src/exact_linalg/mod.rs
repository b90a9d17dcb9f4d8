//! Exact integer linear algebra: canonical right-coset forms, minors and determinantal divisors.
//!
//! The only canonical form in this crate is the row-style Hermite form produced by [`hnf`]:
//! upper-triangular, positive diagonal, column-reduced above the diagonal.

mod divisors;
mod exact;
mod hnf;
mod local;
mod matrix;

pub use divisors::{
    abs_det_u64, determinant, determinantal_vector, invariant_factors, minor, same_double_coset, DeterminantalVector,
};
pub use hnf::hnf;
pub use local::{local_exponents, LocalTyper};
pub use matrix::IntMatrix;

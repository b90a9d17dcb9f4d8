//! The explicit amplifier `alpha_p = conj(a_p)`, `alpha_{p^2} = -1`, its exact evaluation on
//! eigenvalue data, and the product tables it relies on.
//!
//! Normalizing factors `p^{-(n-1)/2}` are carried as [`Surd`]s so every identity stays exact;
//! floating point appears only in the reported norms.

mod data;
mod normalization;
mod vector;

pub use data::{EigenvalueData, ExactComplex, PrimeRecord};
pub use normalization::{linearization_table, LinearizationTable, Surd};
pub use vector::{build_amplifier, dichotomy, evaluate, primes_up_to_sqrt, to_f64, AmplifierVector};

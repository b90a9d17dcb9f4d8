//! Exact arithmetic for the integral GL(n) Hecke algebra at a prime.
//!
//! - [`exact_linalg`]: canonical right-coset forms, minors, determinantal divisors.
//! - [`coset_enum`]: double-coset labels, degrees, representative tables, the sets `R_0`, `R_1`.
//! - [`hecke_algebra`]: structure constants, the `Psi` morphism, identity verification.
//! - [`amplifier`]: the explicit amplifier and its linearization tables.
//! - [`cli`]: the batch front end behind the `hecke` binary.

pub mod amplifier;
pub mod cli;
pub mod coset_enum;
pub mod error;
pub mod exact_linalg;
pub mod hecke_algebra;

pub use error::{Error, Result};

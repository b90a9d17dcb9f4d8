//! Double-coset arithmetic at a prime: structure constants, the map `Psi`, products at coprime
//! primes, and the checks of the explicit product formulas.

mod element;
mod mixed;
mod product;
mod psi;
mod verify;

pub use element::HeckeElement;
pub use mixed::{coprime_product, verify_coprime_bruteforce, CoprimeCheck, MixedLabel, PrimePart};
pub use product::{
    multiply, multiply_bruteforce, multiply_bruteforce_with_budget, multiply_with_budget, multiply_with_table,
    ProductDecomposition, PAIRWISE_BUDGET,
};
pub use psi::psi;
pub use verify::{
    fundamental_square, fundamental_square_terms, linearization_products, operator_product, verify_corollary,
    verify_corollary_with_budget, verify_theorem_a, verify_theorem_a_with_budget, Check, OperatorProduct,
    VerificationReport,
};

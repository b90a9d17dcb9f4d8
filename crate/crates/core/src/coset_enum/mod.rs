//! Double-coset labels, degrees, and canonical right-coset representatives.

mod cache;
mod degree;
mod enumerate;
mod label;
mod rsets;
mod table;

pub use cache::TableCache;
pub use degree::{
    closed_form_degree, degree, degree_formula_dij, degree_with_source, formula_degree, index_formula_degree, phi,
    DegreeSource, TheoremAShape,
};
pub use enumerate::{enumerate_right_cosets, DEFAULT_BUDGET};
pub use label::{is_prime, CosetLabel};
pub use rsets::{interior_vanishes, r0_cardinality, r0_set, r0_structure_holds, r1_cardinality, r1_set, R0Split};
pub use table::{CosetTable, TABLE_FORMAT_VERSION, TABLE_MAGIC};

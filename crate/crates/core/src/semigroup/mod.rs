//! Finite inverse semigroups with zero, as Cayley tables.
//!
//! Products follow the right-to-left convention of function composition:
//! `s·t` applies `t` first. Everything works on element indices; labels
//! are only for display.

mod catalog;
mod morphism;
mod order;
mod table;

use thiserror::Error;

pub use catalog::{
    antichain3, boolean_algebra2, boolean_algebra4, builtin, chain3, left_zero_band_file,
    null_semigroup_file, symmetric_inverse_monoid, BUILTIN_NAMES,
};
pub use morphism::{
    compose_maps, enumerate_homs, identity_map, is_homomorphism, is_morphism, zero_map, HomKind,
    HOM_SEARCH_CAP,
};
pub use order::{Classification, RelationReport};
pub use table::{
    verify_inverse_semigroup, Axiom, CayleyTable, Elem, TableFile, ValidationReport, Violation,
    TABULATION_CAP, VERIFY_CAP,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("table has {size} elements; exhaustive checks are capped at {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("not an inverse semigroup with zero: {0}")]
    Invalid(ValidationReport),
    #[error("elements {0} and {1} are not compatible")]
    NotCompatible(Elem, Elem),
    #[error("element {0} is not below {1}")]
    NotBelow(Elem, Elem),
    #[error("table is not a Boolean inverse semigroup")]
    NotBoolean,
    #[error("subset is not closed: {0}")]
    NotClosed(String),
}

//! Boolean inverse semigroups inside a ring: the regular representation of
//! the contracted semigroup algebra over the integers, the Boolean closure
//! `S″` of its image, and the comparison of `S″` with `B(S)`.

mod closure;
mod matrix;
mod russia;

use thiserror::Error;

use crate::booleanization::BooleanizationError;

pub use closure::{
    generate_boolean_closure, generate_e_prime, regular_representation, verify_additive_closure,
    AdditiveClosure, BooleanClosure, RegularRep, RepElement, S_PRIME_CAP,
};
pub use matrix::IntMatrix;
pub use russia::{russia_check, theta_star, RussiaReport, ThetaStar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("too many {what}: {size} exceeds the cap of {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("{hypothesis} fails at {witness}")]
    Violation {
        hypothesis: &'static str,
        witness: String,
    },
    #[error(transparent)]
    Booleanization(#[from] BooleanizationError),
}

//! The Booleanization `B(S)` of a finite inverse semigroup.
//!
//! For finite `S` every filter is principal, so the groupoids involved have
//! one arrow per join-prime (distributive route) or per nonzero element
//! (direct route), and `B(S)` is the semigroup of all partial bisections.

mod construct;
mod groupoid;
mod universal;

use thiserror::Error;

use crate::completion::CompletionError;
use crate::semigroup::{Elem, SemigroupError};

pub use crate::semigroup::{enumerate_homs, HomKind};
pub use construct::{
    booleanize, booleanize_distributive, direct_booleanize, filter_correspondence,
    groupoid_isomorphic, is_table_isomorphism, join_primes, prime_groupoid,
    proper_filter_groupoid, u_set, v_set, Booleanization, DirectBooleanization,
};
pub use groupoid::{Bisection, BisectionOp, FilterGroupoid, ARROW_CAP, MAX_ARROWS};
pub use universal::{boolean_hull, factor_through, BooleanHull, FactorThrough};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BooleanizationError {
    #[error("table is not distributive")]
    NotDistributive,
    #[error("target is not a Boolean inverse semigroup")]
    NotBoolean,
    #[error("arrows {0:?} do not form a partial bisection")]
    NotABisection(Vec<usize>),
    #[error("bisection {0:?} is not contained in {1:?}")]
    NotContained(Vec<usize>, Vec<usize>),
    #[error("element {0} is not below {1}")]
    NotBelow(Elem, Elem),
    #[error("too many {what}: {size} exceeds the cap of {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("construction is not closed: {0}")]
    NotClosed(String),
    #[error("V-set closure check failed: {0}")]
    ClosureMismatch(String),
    #[error("map is not a zero-preserving homomorphism")]
    NotHomomorphism,
    #[error("not a morphism: {0}")]
    NotMorphism(String),
    #[error("no join for {0:?} in the target")]
    JoinMissing(Vec<Elem>),
    #[error("not a distributive subalgebra: {0}")]
    NotDistributiveSubalgebra(String),
    #[error(transparent)]
    Completion(#[from] CompletionError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

//! The polycyclic monoid `P_n`, the Cuntz-Toeplitz monoid of maps between
//! languages `X + YA*`, and its quotient onto the Cuntz monoid `C_n`.

mod permmap;
mod poly;
mod quotient;
mod random;

pub use permmap::{
    pm_apply, pm_canonicalize, pm_compose, pm_fix, pm_inverse, pm_join, pm_leq, pm_meet, pm_relate,
    pm_subtract, restrict, PermMap, PermMapFile,
};
pub use poly::{embed_poly, orthogonal_generators, poly_leq, poly_meet, poly_product, poly_relate, PolyElement};
pub use quotient::{congruent, cuntz_meet, cuntz_product, quotient_theta, reduce_table_with, CuntzElement};
pub use random::{random_perm_map, random_perm_maps, random_poly, random_word, seeded_rng};

use thiserror::Error;

use crate::lang::LangError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CuntzError {
    #[error("alphabet of size {0} is too small; at least 2 symbols are required")]
    AlphabetTooSmall(usize),
    #[error("alphabet sizes differ: {0} and {1}")]
    AlphabetMismatch(usize, usize),
    #[error("pairs do not describe a function: {0}")]
    InconsistentGraph(String),
    #[error("pairs do not describe an injective map: {0}")]
    NotInjective(String),
    #[error("maps are not compatible")]
    NotCompatible,
    #[error("first map is not below the second")]
    NotBelow,
    #[error("language is not contained in the domain")]
    NotSublanguage,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Lang(#[from] LangError),
}

pub(crate) fn check_alphabet(n: usize) -> Result<(), CuntzError> {
    if n < 2 {
        return Err(CuntzError::AlphabetTooSmall(n));
    }
    Ok(())
}

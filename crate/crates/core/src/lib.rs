pub mod semigroup;
pub mod completion;
pub mod booleanization;
pub mod lang;
pub mod cuntz;
pub mod ring_rep;

//! Numerical semigroups: enumeration by genus, invariants, statistics over a
//! genus, and the counting machinery for multiplicity and embedding-dimension
//! deficits.

pub mod bijections;
mod bits;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod kunz;
pub mod kunzcount;
pub mod polybounds;
pub mod semigroup;
pub mod stats;

pub use bits::Bits256;
pub use enumerate::{count_genus, enumerate_genus, EnumerationPlan};
pub use error::{Error, Result};
pub use kunz::{kunz_of, semigroup_of_kunz, KunzVector};
pub use semigroup::{InvariantRecord, SemigroupSet};
pub use stats::{GenusAggregate, Invariant, Predicate};

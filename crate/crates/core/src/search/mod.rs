//! Enumeration up to isomorphism and counterexample mining.

pub mod canonical;
pub mod enumerate;
pub mod mine;

pub use canonical::{canonical_form, order_canonical_form, CanonicalForm};
pub use enumerate::{enumerate_lattices, enumerate_mult_structures, mult_lattices, SearchError};
pub use mine::{mine, MineResult, Query};

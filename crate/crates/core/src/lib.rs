//! Finite multiplicative lattices.

pub mod axioms;
pub mod check;
pub mod constructions;
pub mod elements;
pub mod family;
pub mod format;
pub mod hollow;
pub mod lattice;
pub mod search;
pub mod verify;

pub use lattice::{ElementId, LatticeError, MultLattice};

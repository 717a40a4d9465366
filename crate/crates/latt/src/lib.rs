//! A toolkit for finite bounded lattices and their weak
//! dicomplementations: construction, congruence lattices, exhaustive
//! enumeration of weak (di)complementations, representability, concept
//! algebras from formal contexts, and brute-force verification suites
//! for the classification of congruence-count maxima.
//!
//! The narrative guide lives in `book/`; its code snippets run as doc
//! tests against this crate.

pub mod bits;
pub mod canon;
pub mod congruence;
pub mod enumerate;
pub mod error;
pub mod expr;
pub mod fca;
pub mod lattice;
pub mod oracle;
pub mod verify;
pub mod wdl;

pub use bits::ElementSet;
pub use congruence::{ConLattice, Partition};
pub use error::{LattError, Result};
pub use expr::ConstructionExpr;
pub use fca::{Concept, FormalContext};
pub use lattice::FiniteLattice;
pub use wdl::{DicompLattice, DualWeakComplementation, WeakComplementation};

#[cfg(doctest)]
mod book_doctests;

//! Discrete rearrangements on the lattice graph `(Z^d, l1)`.
//!
//! The crate is organised around the objects needed to state and audit
//! Polya-Szego type inequalities on lattices:
//!
//! - [`lattice`]: lattice points, finitely supported functions, vertex
//!   boundaries and `L^p` norms of functions and their gradients.
//! - [`enumerations`]: labellings of the lattice (spiral, Wang-Wang,
//!   seeded l1-layered), isoperimetric profiles and enumeration audits.
//! - [`comparison`]: the universal comparison tree built from an
//!   isoperimetric profile, and the comparison function.
//! - [`rearrangement`]: the rearrangement `f*` along an enumeration and the
//!   gradient ratio `||grad f*|| / ||grad f||`.
//! - [`embedding`]: the map from lattice edges to comparison-tree paths with
//!   length and multiplicity audits.
//! - [`search`]: extremal-function search, an exact `p = 2` oracle and
//!   constant sweeps.
//! - [`cli`]: the command line front end used by the `rearrange-lab` binary.

// Positivity checks are written `!(v > 0)` so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod comparison;
pub mod embedding;
pub mod enumerations;
mod error;
pub mod lattice;
pub mod rearrangement;
pub mod search;

pub use error::{Error, Result};
pub use lattice::{Exponent, LatticeFunction, LatticePoint, Scalar};

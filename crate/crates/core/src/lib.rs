//! Exact combinatorics of the signed permutation groups.
//!
//! The crate computes, without floating point or truncation:
//!
//! * the group itself: windows, lengths, descents, Bruhat order, and the
//!   coset decomposition along the sign-change subgroups ([`group`]);
//! * a generalized Robinson-Schensted correspondence sending a signed
//!   permutation to a pair of standard bitableaux ([`tableaux`]);
//! * Kazhdan-Lusztig polynomials, their leading coefficients, and left
//!   cells for an arbitrary positive weighting of the two generator
//!   classes, including the two-parameter dominant order ([`kl`]);
//! * the cell representations and their identification as irreducible
//!   characters ([`reps`]).
//!
//! Everything downstream of the group tables is driven by [`laurent`],
//! a small exact Laurent-polynomial ring over an ordered monomial group.

pub mod error;
pub mod golden;
pub mod group;
pub mod kl;
pub mod laurent;
pub mod reps;
pub mod tableaux;

pub use error::{Error, Result};

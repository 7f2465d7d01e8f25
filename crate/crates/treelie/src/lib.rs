//! Exact symbolic computation in the tree Lie algebra of a once-punctured
//! genus-g surface.
//!
//! The algebra is generated, in each degree k, by uni-trivalent trees with
//! k internal vertices carrying cyclic orders and k+2 leaves labelled by a
//! fixed symplectic basis a_1, b_1, ..., a_g, b_g of the first homology of
//! the surface, modulo antisymmetry (AS) and Jacobi-type (IHX) relations.
//!
//! The crate provides:
//!
//! * canonical AS forms for planar trees and exact integer tree sums
//!   ([`tree`]),
//! * the Lie bracket by leaf gluing against the symplectic form and the
//!   tensor expansion that decides equality modulo AS and IHX ([`expand`]),
//! * block symplectic actions of integer matrices on leaf labels ([`gl`]),
//! * sparse integer lattices in Hermite normal form with membership,
//!   kernel and equality certificates, plus Smith normal form ([`lattice`]),
//! * generator enumeration and bracket-recipe spans for the colour-graded
//!   modules appearing in the degree-3 Johnson image ([`johnson`]),
//! * the two Lagrangian trace maps with both a closed-form and a tensor
//!   contraction route ([`trace`]),
//! * tensor-power coinvariants under the integer symplectic blocks
//!   ([`coinv`]),
//! * a registry of named verification claims with replayable proofs
//!   ([`claims`]) and deterministic JSON reporting ([`report`]).

pub mod cache;
pub mod claims;
pub mod coef;
pub mod coinv;
pub mod config;
pub mod expand;
pub mod gl;
pub mod johnson;
pub mod lattice;
pub mod parse;
pub mod report;
pub mod symplectic;
pub mod trace;
pub mod tree;

use thiserror::Error;

/// Errors surfaced by library operations.
///
/// `Usage` maps to CLI exit code 2, `Domain` to 3 and `Budget` to 4.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: unparsable expressions, bad flags, bad config keys.
    #[error("usage error: {0}")]
    Usage(String),
    /// Structurally valid input outside the mathematical domain:
    /// degree overflow, non-invertible matrices, empty supports.
    #[error("domain error: {0}")]
    Domain(String),
    /// A computation exceeded its configured budget and was cut short.
    #[error("budget exhausted: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;

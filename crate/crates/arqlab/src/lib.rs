//! Exact computation with finite dimensional bound quiver algebras.
//!
//! The crate builds algebras from quivers with relations (or from a handful
//! of standard constructions: Nakayama algebras, trivial extensions,
//! repetitive truncations, Brauer tree algebras, one-point extensions),
//! computes in their module categories with exact linear algebra, knits
//! Auslander-Reiten quivers, and searches for short cycles
//! X -> Y -> X of nonzero nonisomorphisms between indecomposables. For
//! selfinjective inputs it can certify a short-cycle-free verdict with a
//! slice-based structural explanation.
//!
//! Scalars are exact throughout: arbitrary-precision rationals or a prime
//! field. All searches are deterministic, so equal inputs give equal output
//! byte for byte.

pub mod algebra;
pub mod analysis;
pub mod artheory;
pub mod error;
pub mod export;
pub mod field;
pub mod mat;
pub mod module;
pub mod poly;
pub mod rng;
pub mod textfmt;
pub mod zoo;

pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};

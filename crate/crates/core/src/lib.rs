//! Exact calculus of characteristic numbers over tori and K3-Hilbert products,
//! and certification of rational bordism bases by block-triangular pairing
//! matrices with exactly computed determinants.
//!
//! Everything is computed over the rationals with arbitrary-precision
//! arithmetic; there is no floating point anywhere in the evaluation paths.
//! The crate is organised bottom-up:
//!
//! - [`partitions`]: integer partitions in a fixed canonical order, partition
//!   counting, and the expected ranks of the three bordism families.
//! - [`algebra`]: a graded-commutative polynomial/exterior algebra kernel with
//!   exact rational coefficients, canonical normal forms, and a plain-text
//!   serialization that round-trips.
//! - [`characters`]: Newton-Girard power-sum polynomials, the Chern-to-
//!   Pontryagin conversion, character components, and Whitney sums.
//! - [`torus`]: cohomology models of even tori carrying a distinguished line
//!   bundle or induced SU(2) bundle, with exact top-degree integration.
//! - [`catalog`]: manifold descriptors for the basis families, ingestion of
//!   K3-Hilbert Chern numbers, and conversion to Pontryagin numbers of
//!   arbitrary products.
//! - [`certificate`]: pairing-matrix assembly, exact determinants, and the
//!   basis certifier that emits machine-readable certificates.
//! - [`selftest`]: the cross-checks behind the `selftest` CLI subcommand.

pub mod algebra;
pub mod catalog;
pub mod certificate;
pub mod characters;
pub mod error;
pub mod partitions;
pub mod selftest;
pub mod torus;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

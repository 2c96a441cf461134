//! Classification engine for product-quotient surfaces with `p_g = q = 0`.
//!
//! Layers, bottom up: [`perm`] (finite permutation groups), [`fp`]
//! (finitely presented groups), [`geometry`] (numerical invariants),
//! [`enumerate`] (signatures, triples and families), [`pi1`] (fundamental
//! groups), and [`catalog`] / [`pipeline`] for inputs and reports.

pub mod catalog;
pub mod enumerate;
pub mod fp;
pub mod geometry;
pub mod perm;
pub mod pipeline;
pub mod pi1;
pub mod reference;
pub mod scalar;

pub use fp::{AbelianInvariants, Presentation, Word};
pub use geometry::Signature;
pub use perm::{PermGroup, Permutation};

/// Rational numbers used by the pipeline.
pub type Rational = num_rational::Ratio<i64>;
/// Arbitrary-precision rationals.
pub type BigRational = num_rational::Ratio<num_bigint::BigInt>;
/// Integer matrices with unbounded entries.
pub type IntMatrix = fp::Matrix<num_bigint::BigInt>;

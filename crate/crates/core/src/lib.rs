//! Geometric-algebra model of distributed representations.
//!
//! Atoms (roles and fillers) are random basis blades of `Cℓ_n`, sentences are
//! integer-weighted sums of blades built with the geometric product, and
//! questions are answered by multiplying a sentence with a (possibly reversed)
//! question blade and cleaning up the noisy result against a memory of every
//! known item.
//!
//! Module map:
//!
//! - [`algebra`]: bitmask blades, sparse multivectors, geometric product,
//!   reversion, inner product and a symbol-rewriting oracle.
//! - [`encoding`]: vocabularies, sentence constructions, questions, clean-up
//!   memory and single-trial recognition.
//! - [`cartan`]: Pauli/Kronecker matrix representation, signatures and the
//!   Hamming / Euclidean similarity measures.
//! - [`baselines`]: holographic reduced representations and binary spatter
//!   codes used for comparison.
//! - [`analysis`]: closed-form potential-answer estimators and the
//!   cancellation probability.
//! - [`corpus`]: the standard test memory and its question catalog.

pub mod algebra;
pub mod analysis;
pub mod baselines;
pub mod cartan;
pub mod corpus;
pub mod encoding;
mod error;

pub use algebra::{BladeMask, Multivector, SignedBlade};
pub use error::{Error, Result};

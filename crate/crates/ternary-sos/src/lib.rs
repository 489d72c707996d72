//! Constructive sum-of-three-squares decompositions of positive
//! semidefinite ternary quartic forms.
//!
//! The pipeline: bring a strictly positive quartic into the normal shape
//! z⁴ + f₂z² + f₃z + f₄ with f − z⁴ psd, seed norm-form solutions of
//! η² + f₂ξ² = 4f₂f₄ − f₃² at t = 0, track them along the pencil
//! f^{(t)} = t²z⁴ + f₂z² + f₃z + f₄ to t = 1, and reconstruct quadratic
//! triples p₁² + p₂² + p₃² = f. Forms with a real zero get a direct
//! constructive decomposition. Exact genericity invariants (discriminants,
//! resultants, and the Φ pencil invariant) guard every step.

pub mod dyadic;
pub mod error;
pub mod normforms;
pub mod phi;
pub mod polycore;
pub mod scalar;

pub use error::{Error, Result};

//! Luxemburg norms of Orlicz sequence spaces and enveloping-ball radii
//! of Szlenk derivations of the dual unit ball.
//!
//! The crate computes:
//!
//! - Luxemburg norms of finite-support sequences for posynomial Orlicz
//!   functions, with a closed form for the quartic family
//!   `At⁴ + Bt²` ([`orlicz`]);
//! - upper and lower enveloping-ball radius bounds from a modulus
//!   triple and equivalence constants, with exact and ℓ_p special
//!   cases ([`bounds`]);
//! - iterated derivation radii and ε-Szlenk indices ([`iteration`]);
//! - residual checks for the functional-equation characterization of
//!   power Orlicz functions ([`equation`]);
//! - the proof witness constructions on finite-truncation space models
//!   ([`witness`]).

pub mod bounds;
pub mod equation;
pub mod error;
pub mod iteration;
pub mod orlicz;
pub mod rng;
pub mod roots;
pub mod sparse;
pub mod textfmt;
pub mod witness;

pub use bounds::{EquivalenceConstants, ModulusTriple, RadiusProfile};
pub use error::{Error, Result};
pub use orlicz::{OrliczFunction, ValidationReport};
pub use sparse::SparseVector;

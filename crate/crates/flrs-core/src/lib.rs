//! Folded linearized Reed-Solomon (FLRS) codes in the sum-rank metric.
//!
//! The crate provides exact finite-field arithmetic ([`gf`]), skew polynomial
//! rings with generalized operator evaluation ([`skew`]), the FLRS code
//! construction ([`code`]), the fixed-weight uniform sum-rank error channel
//! ([`channel`]) and an interpolation-based decoder that runs either in list
//! mode or as a probabilistic unique decoder ([`decoder`]).

pub mod channel;
pub mod code;
pub mod decoder;
pub mod error;
pub mod gf;
pub mod skew;

pub use error::{Error, Result};
pub use gf::{FieldElement, FieldParams};

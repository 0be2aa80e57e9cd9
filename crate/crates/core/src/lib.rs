//! Symbolic and numeric verification toolkit for two-dimensional
//! Schrödinger equations with position-dependent mass.

mod error;
pub mod expr;
pub mod catalog;
pub mod dsl;
pub mod equivalence;
pub mod ops;
pub mod spectral;
pub mod suite;

pub use error::Error;

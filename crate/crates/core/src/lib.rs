//! Exact asymptotic eigenvalue expansions for one-dimensional Schrödinger
//! operators with periodic potentials, plus a floating-point monodromy oracle
//! for checking them.

pub mod coeffring;
pub mod diffpoly;
pub mod error;
pub mod jacobi;
pub mod numerics;
pub mod series;
pub mod trig;
pub mod weier;

pub use error::{Error, Result};

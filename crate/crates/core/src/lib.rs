//! Exact counting functions for the triangular lattice Z[ξ₃] and the
//! twelvefold module Z[ξ₁₂].

pub mod checks;
pub mod dirichlet;
pub mod error;
pub mod exact;
pub mod lattice;
pub mod modelset;
pub mod rings;
pub mod shelling;
pub mod window;
pub mod zeta;

pub use error::{Error, Result};
pub use exact::{Q3Element, Q3Vector, Rational};
pub use rings::{Plane, ZSqrt3, E3, Z12};

//! Heegaard Floer d-invariants of elliptic Seifert fibered spaces and of
//! surgeries on L-space knots, and the matching between the two.

pub mod error;
pub mod exactmath;
pub mod knots;
pub mod lattice;
pub mod obstruct;
pub mod plumbing;
pub mod seifert;
pub mod surgery;

pub use error::{Error, Result};
pub use exactmath::Rational;

//! Exact and extended-precision tools for additive recurrences, their
//! characteristic roots, Fibonacci/Lucas-type identities, lagged chaotic
//! maps and word-concatenation systems.

pub mod dynamics;
pub mod error;
pub mod identities;
pub mod polyalgebra;
pub mod real;
pub mod report;
pub mod rulecore;
pub mod triangles;
pub mod words;

pub use error::{Error, Result};
pub use polyalgebra::IntPolynomial;
pub use real::Real;
pub use rulecore::{IntegerSequence, RecurrenceRule};

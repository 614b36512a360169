//! j-Fibonacci/j-Lucas sequences, a small identity language, exhaustive
//! grid verification and single-edit correction search.

pub mod catalog;
pub mod discover;
pub mod expr;
pub mod jfl;

pub use catalog::{catalog, lookup, verify_identity, Grid, IdentityReport, IdentitySpec};
pub use discover::{balanced_sign_table, discover_correction, Correction, CorrectionReport, VariantSpace};
pub use expr::{IdentityExpr, SideValue};
pub use jfl::{jfib, jlucas, JFLPair};

//! Realizable mapping degrees between closed oriented spherical 3-manifolds.
//!
//! Fundamental groups are built as finite subgroups of SO(4); degrees of maps are
//! computed modulo the order of the target's fundamental group from the induced
//! homomorphism.

pub mod arith;
pub mod degrees;
pub mod error;
pub mod expr;
pub mod groups;
pub mod homs;
pub mod lens;
pub mod oracle;

pub use error::{Error, Result};

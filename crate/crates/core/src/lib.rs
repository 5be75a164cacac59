//! Signatures and metrics on unparameterised path space, computed exactly for
//! canonical lifts of piecewise linear paths.
//!
//! The crate is organised bottom-up:
//!
//! - [`tensor`]: the truncated free tensor algebra `T^(N)(R^d)`, group-like
//!   elements, shuffle products and signature-space metrics.
//! - [`path`]: piecewise linear paths, concatenation, reversal, constant-speed
//!   reparameterisation and tree reduction.
//! - [`signature`]: exact signatures via Chen products of segment exponentials.
//! - [`variation`]: p-variation functionals and the p-variation distance.
//! - [`unparam`]: tree-like equivalence classes and the distances between them.
//! - [`harness`]: counterexample families and quantitative checks.
//! - [`report`]: structured check results and their text and CSV forms.
//! - [`corpus`]: seeded random paths for the randomised checks.

pub mod corpus;
pub mod error;
pub mod harness;
pub mod path;
pub mod report;
pub mod signature;
pub mod tensor;
pub mod unparam;
pub mod variation;

pub use error::{Error, Result};
pub use path::PiecewiseLinearPath;
pub use report::VerificationReport;
pub use tensor::{GroupElement, TruncatedTensor, Word};
pub use unparam::UnparamPath;
pub use variation::{Partition, VariationResult};

/// Truncation level used when none is given.
pub const DEFAULT_LEVEL: usize = 4;

/// Dyadic refinement depth used for lifted p-variation when none is given.
pub const DEFAULT_REFINE: u32 = 4;

//! Exact computations with abstract Cuntz semigroups.
//!
//! Finite structures are handled by exhaustive enumeration over value tables;
//! the named infinite semigroups (`P̄`, `Z`, `R_q`, `M₁`, ...) are handled by
//! closed-form rules over exact rationals.

// Table code indexes several arrays by the same element; `add`/`mul` are
// fallible or carrier-relative and do not fit the operator traits.
#![allow(clippy::needless_range_loop, clippy::should_implement_trait, clippy::large_enum_variant)]

pub mod bivariant;
pub mod catalog;
pub mod error;
pub mod family;
pub mod finite;
pub mod numbers;
pub mod order;
pub mod paths;
pub mod repro;
pub mod structure_file;
pub mod tensor;

pub use error::{Error, Result};

/// Default limit on the number of candidate value tables an enumeration may visit.
pub const DEFAULT_BOUND: usize = 20_000;

/// Enumeration bound, overridable through `CUNTZLAB_BOUND`.
pub fn bound_from_env() -> usize {
    std::env::var("CUNTZLAB_BOUND").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_BOUND)
}

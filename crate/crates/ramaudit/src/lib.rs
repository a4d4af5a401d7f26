//! Exact-arithmetic verification toolkit for the numerical side of
//! ramification-theoretic nonexistence proofs.
//!
//! Everything that feeds a decision is computed in exact rational
//! arithmetic: ramification filtrations in lower/upper numbering,
//! root-discriminant bounds kept as factored radicals `∏ p^{e_p}` with
//! rational exponents, conductor-discriminant bookkeeping over ideal
//! labels, newform ramification levels, conductor-exponent case splits,
//! and brute-force facts about small finite groups and their modular
//! representations. Floating point appears only in rendered reports.
//!
//! The [`audit`] module replays whole proof chains from declarative JSON
//! scenarios and emits machine-checkable reports; the `ramaudit` binary
//! is a thin CLI over it.

pub mod audit;
pub mod bounds;
pub mod conductor;
pub mod exact;
pub mod filtration;
pub mod modrep;
pub mod newform;
pub(crate) mod par;

use thiserror::Error;

/// Crate-wide error type. Every violated precondition or internal
/// consistency failure is reported through a dedicated variant rather
/// than a panic, so audit runs can surface them as check failures.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument left the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A rational-prime label and an ideal label with the same name met
    /// in one radical.
    #[error("label conflict: {0}")]
    LabelConflict(String),

    /// An operation that needs plain rational primes saw an ideal label
    /// that was never pushed through `normalize_ideal_labels`.
    #[error("unnormalized ideal label `{0}` (apply normalize_ideal_labels first)")]
    UnnormalizedLabel(String),

    /// Two independent computations of the same quantity disagreed.
    /// This must never fire; it indicates corrupted input data.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    /// Structurally invalid input (length mismatch, bad chain, ...).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// Embedded reference data failed its self-check.
    #[error("table regression: {0}")]
    TableRegression(String),

    /// Scenario schema violations, with JSON-pointer-style locations.
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

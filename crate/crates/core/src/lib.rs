//! Numerical toolkit for sharp-constant trace Moser–Trudinger–Adams
//! inequalities.
//!
//! The crate computes the closed-form constants of the critical Sobolev
//! embeddings (unit-ball volumes, Riesz normalizations γ(α)/γ̃(α), the
//! combinatorial constant ℓᵏₙ, the parity constants β_{n,k,q} and the six
//! sharp thresholds), implements non-increasing rearrangements and Lorentz
//! quasi-norms with respect to arbitrary finite Radon measures, evaluates
//! Riesz potentials and finite-difference operators ∇ᵏ/Dᵏ on grids, realizes
//! the extremal test-function families (capacitary, logarithmic cap,
//! Alberico, weak-endpoint), and drives the theorem-level verification:
//! sub-threshold boundedness, super-threshold blow-up rate fits, Hardy and
//! one-dimensional exponential lemmas, and the trace Hansson–Brezis–Wainger
//! functional.
//!
//! The crate is `no_std` + `alloc`; all IO, CSV formats and the CLI live in
//! the companion `mta-cli` crate.

#![no_std]

extern crate alloc;

pub mod calibration;
pub mod constants;
pub mod grid;
pub mod measures;
pub mod potentials;
pub mod quad;
pub mod rearrangement;
pub mod testfun;
pub mod verify;

use core::fmt;

/// Crate-wide error type. Most failures are precondition violations.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter is outside its admissible range.
    Domain(&'static str),
    /// Grid geometry mismatch or unresolvable grid request.
    Grid(&'static str),
    /// A quadrature did not converge; carries the last residual.
    Quadrature(&'static str, f64),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Grid(m) => write!(f, "grid error: {m}"),
            Error::Quadrature(m, r) => write!(f, "quadrature error: {m} (residual {r:e})"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

/// Deterministic RNG used by every randomized suite in the crate.
pub fn seeded_rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

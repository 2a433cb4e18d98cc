//! Three-outcome permutationally-invariant Bell inequalities (PIBIs) for
//! n-qutrit systems.
//!
//! The crate builds and analyses the inequality
//!
//! ```text
//!     B = P̃₀ + P̃₀₀ − 2·P̃₀₁ ≥ 0
//! ```
//!
//! on symmetrised one- and two-body correlations of a (n parties, 2 settings,
//! 3 outcomes) Bell scenario, and everything derived from it:
//!
//! * [`polytope`] — local-deterministic strategies of the permutation-invariant
//!   polytope, the exact classical bound and its PSD certificate, facet checks.
//! * [`su3`] — exact su(3) operator constants (Gell-Mann, spin-1 dipole and
//!   quadrupole matrices) and the POVM settings used throughout.
//! * [`dicke`] / [`symrep`] — the totally symmetric (qutrit Dicke) subspace,
//!   collective operators, Bell operators and extremal eigenpairs.
//! * [`dimbounds`] — dimension-constrained single-particle bounds β_d,
//!   the analytic β_∞ = −1/2 check, Holstein–Primakoff finite-size energies.
//! * [`witness`] — closed-form Bell-correlation / dimension witnesses and the
//!   spin-nematic squeezing parameter.
//! * [`becdyn`] — spin-1 condensate spin-mixing dynamics in the symmetric
//!   subspace and witness-data trajectories.
//!
//! The crate is `no_std` (alloc only); all floating point goes through `libm`
//! via `num-traits`. Every value is immutable after construction and safe to
//! share across threads.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod becdyn;
pub mod dicke;
pub mod dimbounds;
pub mod mat;
pub mod nelder;
pub mod polytope;
pub mod rng;
pub mod sparse;
pub mod su3;
pub mod symrep;
pub mod witness;

use alloc::string::String;

pub use num_complex::Complex64;

/// Errors surfaced by the library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A precondition on the inputs was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// The inputs are structurally valid but outside the formula's domain
    /// (negative radicand, empty pseudospin subspace, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// An enumeration would exceed the configured budget.
    #[error("enumeration budget exceeded: {required} strategies required (budget n ≤ {budget})")]
    Budget { required: u128, budget: usize },
    /// An iterative solver failed to reach its target residual.
    #[error("solver did not converge: {0}")]
    Convergence(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the batch CLI: 1 input/domain, 2 budget,
    /// 3 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) | Error::Domain(_) => 1,
            Error::Budget { .. } => 2,
            Error::Convergence(_) => 3,
        }
    }
}

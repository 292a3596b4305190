//! Asymptotic eigenvalue expansions and spectral-determinant shooting for the
//! PT-symmetric family `-u'' - [(iz)^m + P_{m-1}(iz)] u = lambda u`.
//!
//! Two independent pipelines share the [`potential::Potential`] instance type:
//!
//! * the *expansion* side ([`series`] -> [`quadrature`] -> [`expansion`])
//!   produces the large-`n` eigenvalue predictors, and
//! * the *shooting* side ([`shooting`]) locates eigenvalues as zeros of a
//!   spectral determinant by ODE integration in the complex plane,
//!
//! so each can be used to validate the other.

pub mod error;
pub mod expansion;
pub mod parse;
pub mod potential;
pub mod quadrature;
pub mod report;
pub mod series;
pub mod shooting;

pub use error::{Error, Result};

//! Quantum Riemann-Hilbert problem for the resolved conifold.
//!
//! The crate is organised bottom-up: [`lattice`] holds the BPS data,
//! [`qtorus`] the exact noncommutative algebra, [`special`] the numerical
//! special functions, and [`rhsolver`] the solution functions `B_n`, `D_n`.

pub mod error;
pub mod lattice;
pub mod laurent;
pub mod qtorus;
pub mod residual;
pub mod rhsolver;
pub mod special;
pub mod verify;

pub use error::{QrhError, Result};

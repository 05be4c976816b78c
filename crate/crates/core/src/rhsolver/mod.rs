//! The solution layer: `B_n`, `D_n` with their validity predicates, jump and
//! reflection checks, limits, and the refined Chern-Simons partition function.

pub mod checks;
pub mod cs;
pub mod limits;
pub mod point;
pub mod solution;

pub use point::{b_predicates, d_predicates, Predicate, PredicateKind, SolutionPoint};
pub use solution::{b_n, d_n, log_b_n, log_d_n};

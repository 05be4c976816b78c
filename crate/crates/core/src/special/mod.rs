//! Numerical special functions: Bernoulli data, quadrature, the functions
//! `F` and `G`, their moments, asymptotics and normalised versions.

pub mod asymptotics;
pub mod bernoulli;
pub mod contour;
pub mod fg;
pub mod identities;
pub mod moments;
pub mod products;
pub mod quad;
pub mod starred;

pub use bernoulli::{bernoulli_numbers, bernoulli_poly, multiple_bernoulli, multiple_bernoulli_symbolic, zeta, MultiPoly};
pub use contour::{AdmissibleArc, ContourSpec, ContourValue, ExpRatio};
pub use fg::{log_f, log_f_contour, log_g, log_g_contour, EvalOptions, ExpVars, LogValue, OmegaTriple, Route};
pub use products::{f_product, log_qdilog, log_reflection_rhs_f, log_reflection_rhs_g, qdilog_numeric};
pub use quad::{integrate, QuadOptions, QuadResult};

//! Quantum torus algebra, quantum dilogarithm series and BPS automorphisms.

pub mod algebra;
pub mod automorphism;
pub mod series;

pub use algebra::{hat_product, i_map_eval, monomial_product, ExtendedMonomial, QTorusElement, QuadraticRefinement};
pub use automorphism::{
    bps_automorphism, delta_sector_rays, sector_automorphism_delta, sql_closed_form, sql_closed_form_twisted,
    AutomorphismResult, DeltaResult, RayAutomorphism,
};
pub use series::{conjugation_formula, dt_ray, dt_ray_for, qdilog_series, series_conjugate, RaySeries, Truncation};

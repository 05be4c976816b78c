//! Difference and reflection identities of `F`, `G`, `F*`, `G*` as
//! residual checks. Values are compared after exponentiation, so the
//! branch of each logarithm never matters.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{QrhError, Result};
use crate::residual::Residual;
use crate::special::fg::{log_f, log_g, EvalOptions, OmegaTriple};
use crate::special::products::{log_reflection_rhs_f, log_reflection_rhs_g};
use crate::special::starred::{log_f_star, log_g_star};

fn e2pi(w: Complex64) -> Complex64 {
    (Complex64::new(0.0, 2.0 * PI) * w).exp()
}

/// `F(z+ω̄1)/F(z) = 1/(1-x2)`.
pub fn dif_f_wbar(z: Complex64, a: Complex64, b: Complex64, tol: f64, opts: &EvalOptions) -> Result<Residual> {
    let lhs = (log_f(z + a, a, b, opts)?.log - log_f(z, a, b, opts)?.log).exp();
    Ok(Residual::compare("F(z+ω̄1)/F(z) = 1/(1-x2)", lhs, 1.0 / (1.0 - e2pi(z / b)), tol))
}

/// `F(z+ω2)/F(z) = 1/(1-x1)`.
pub fn dif_f_w2(z: Complex64, a: Complex64, b: Complex64, tol: f64, opts: &EvalOptions) -> Result<Residual> {
    let lhs = (log_f(z + b, a, b, opts)?.log - log_f(z, a, b, opts)?.log).exp();
    Ok(Residual::compare("F(z+ω2)/F(z) = 1/(1-x1)", lhs, 1.0 / (1.0 - e2pi(z / a)), tol))
}

/// `G(z+ω1)/G(z) = 1/F(z+ω̄1|ω̃1,ω2)`.
pub fn dif_g1(z: Complex64, om: &OmegaTriple, tol: f64, opts: &EvalOptions) -> Result<Residual> {
    let lhs = (log_g(z + om.w1, om, opts)?.log - log_g(z, om, opts)?.log).exp();
    let rhs = (-log_f(z + om.bar(), om.wt1, om.w2, opts)?.log).exp();
    Ok(Residual::compare("G(z+ω1)/G(z) = 1/F(z+ω̄1|ω̃1,ω2)", lhs, rhs, tol))
}

/// `G(z+ω̃1)/G(z) = 1/F(z+ω̄1|ω1,ω2)`.
pub fn dif_g2(z: Complex64, om: &OmegaTriple, tol: f64, opts: &EvalOptions) -> Result<Residual> {
    let lhs = (log_g(z + om.wt1, om, opts)?.log - log_g(z, om, opts)?.log).exp();
    let rhs = (-log_f(z + om.bar(), om.w1, om.w2, opts)?.log).exp();
    Ok(Residual::compare("G(z+ω̃1)/G(z) = 1/F(z+ω̄1|ω1,ω2)", lhs, rhs, tol))
}

/// `F*(z+ω̄1)/F*(z) = 1/(1-x2)`.
pub fn diff_f(z: Complex64, a: Complex64, b: Complex64, tol: f64, opts: &EvalOptions) -> Result<Residual> {
    let lhs = (log_f_star(z + a, a, b, opts)?.log - log_f_star(z, a, b, opts)?.log).exp();
    Ok(Residual::compare("F*(z+ω̄1)/F*(z) = 1/(1-x2)", lhs, 1.0 / (1.0 - e2pi(z / b)), tol))
}

/// `G*(z+ω1)/G*(z) = 1/F*(z+ω̄1|ω̃1,ω2)`, requires `Im(ω1/ω̃1) > 0`.
pub fn diff_g1(z: Complex64, om: &OmegaTriple, tol: f64, opts: &EvalOptions) -> Result<Residual> {
    if (om.w1 / om.wt1).im <= 0.0 {
        return Err(QrhError::precondition("Im(ω1/ω̃1) > 0"));
    }
    let lhs = (log_g_star(z + om.w1, om, opts)?.log - log_g_star(z, om, opts)?.log).exp();
    let rhs = (-log_f_star(z + om.bar(), om.wt1, om.w2, opts)?.log).exp();
    Ok(Residual::compare("G*(z+ω1)/G*(z) = 1/F*(z+ω̄1|ω̃1,ω2)", lhs, rhs, tol))
}

/// `G*(z+ω̃1)/G*(z) = 1/F*(z+ω̄1|ω1,ω2)`, requires `Im(ω̃1/ω1) > 0`.
pub fn diff_g2(z: Complex64, om: &OmegaTriple, tol: f64, opts: &EvalOptions) -> Result<Residual> {
    if (om.wt1 / om.w1).im <= 0.0 {
        return Err(QrhError::precondition("Im(ω̃1/ω1) > 0"));
    }
    let lhs = (log_g_star(z + om.wt1, om, opts)?.log - log_g_star(z, om, opts)?.log).exp();
    let rhs = (-log_f_star(z + om.bar(), om.w1, om.w2, opts)?.log).exp();
    Ok(Residual::compare("G*(z+ω̃1)/G*(z) = 1/F*(z+ω̄1|ω1,ω2)", lhs, rhs, tol))
}

/// `F(z+ω2|ω̄1,ω2)·F(z|ω̄1,-ω2)` against its product form.
pub fn ff1(z: Complex64, a: Complex64, b: Complex64, tol: f64, opts: &EvalOptions) -> Result<Residual> {
    let lhs = (log_f(z + b, a, b, opts)?.log + log_f(z, a, -b, opts)?.log).exp();
    let rhs = log_reflection_rhs_f(z, a, b, opts.product_tol)?.exp();
    Ok(Residual::compare("F(z+ω2|ω̄1,ω2)·F(z|ω̄1,-ω2) = product", lhs, rhs, tol))
}

/// `G(z+ω2|…,ω2)·G(z|…,-ω2)` against the double product.
pub fn gg1(z: Complex64, om: &OmegaTriple, tol: f64, opts: &EvalOptions) -> Result<Residual> {
    let lhs = (log_g(z + om.w2, om, opts)?.log + log_g(z, &om.with_w2(-om.w2), opts)?.log).exp();
    let rhs = log_reflection_rhs_g(z, om.w1, om.wt1, om.w2, opts.product_tol)?.exp();
    Ok(Residual::compare("G(z+ω2|…,ω2)·G(z|…,-ω2) = double product", lhs, rhs, tol))
}

/// `F*(z|ω̄1,ω2)·F*(z|ω̄1,-ω2)` against the same product as [`ff1`].
pub fn ff2(z: Complex64, a: Complex64, b: Complex64, tol: f64, opts: &EvalOptions) -> Result<Residual> {
    let lhs = (log_f_star(z, a, b, opts)?.log + log_f_star(z, a, -b, opts)?.log).exp();
    let rhs = log_reflection_rhs_f(z, a, b, opts.product_tol)?.exp();
    Ok(Residual::compare("F*(z|ω̄1,ω2)·F*(z|ω̄1,-ω2) = product", lhs, rhs, tol))
}

/// `G*(z|…,ω2)·G*(z|…,-ω2) = P(z)/P(Δω1)` where `P` is the double product
/// of [`gg1`]. The normalisation of `G*` by `G(Δω1)` carries through the
/// reflection, which is where the `P(Δω1)` comes from.
pub fn gg2(z: Complex64, om: &OmegaTriple, tol: f64, opts: &EvalOptions) -> Result<Residual> {
    let lhs = (log_g_star(z, om, opts)?.log + log_g_star(z, &om.with_w2(-om.w2), opts)?.log).exp();
    let p = |x| log_reflection_rhs_g(x, om.w1, om.wt1, om.w2, opts.product_tol);
    let rhs = (p(z)? - p(om.delta())?).exp();
    Ok(Residual::compare("G*(z|…,ω2)·G*(z|…,-ω2) = P(z)/P(Δω1)", lhs, rhs, tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn om() -> OmegaTriple {
        // ω1 = w - tτ/2, ω̃1 = w + tτ/2, ω2 = -t at w = 1, t = -0.2+0.7i, τ = 0.15i
        let t = c(-0.2, 0.7);
        let ht = t * c(0.0, 0.075);
        OmegaTriple::new(1.0 - ht, 1.0 + ht, -t)
    }

    #[test]
    fn difference_relations() {
        let opts = EvalOptions::default();
        let (z, a, b) = (c(0.3, 0.4), c(1.0, 0.0), c(0.2, -0.7));
        for r in [
            dif_f_wbar(z, a, b, 1e-8, &opts).unwrap(),
            dif_f_w2(z, a, b, 1e-8, &opts).unwrap(),
            dif_g1(z, &om(), 1e-8, &opts).unwrap(),
            dif_g2(z, &om(), 1e-8, &opts).unwrap(),
            diff_f(z, a, b, 1e-8, &opts).unwrap(),
        ] {
            assert!(r.pass, "{r:?}");
        }
        // Im(ω1/ω̃1) > 0 at this triple
        let r = diff_g1(z, &om(), 1e-8, &opts).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(diff_g2(z, &om(), 1e-8, &opts).unwrap_err(), QrhError::precondition("Im(ω̃1/ω1) > 0"));
    }

    #[test]
    fn reflection_relations() {
        let opts = EvalOptions::default();
        let (z, a, b) = (c(0.3, 0.4), c(1.0, 0.0), c(0.2, -0.7));
        for r in [
            ff1(z, a, b, 1e-8, &opts).unwrap(),
            ff2(z, a, b, 1e-8, &opts).unwrap(),
            gg1(z, &om(), 1e-8, &opts).unwrap(),
            gg2(z, &om(), 1e-8, &opts).unwrap(),
        ] {
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn unnormalised_gg2_misses_by_p_delta() {
        let opts = EvalOptions::default();
        let z = c(0.3, 0.4);
        let o = om();
        let lhs = (log_g_star(z, &o, &opts).unwrap().log + log_g_star(z, &o.with_w2(-o.w2), &opts).unwrap().log).exp();
        let pz = log_reflection_rhs_g(z, o.w1, o.wt1, o.w2, 1e-16).unwrap().exp();
        let pd = log_reflection_rhs_g(o.delta(), o.w1, o.wt1, o.w2, 1e-16).unwrap().exp();
        assert!((lhs - pz).norm() > 1e-5 * pz.norm());
        assert!((lhs * pd - pz).norm() < 1e-8 * pz.norm());
    }
}

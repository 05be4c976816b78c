//! The normalised functions `F* = F·e^{Q_F}` and
//! `G* = G(z)/G(Δω1)·e^{Q_G}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{QrhError, Result};
use crate::special::bernoulli::{multiple_bernoulli, zeta2};
use crate::special::fg::{log_f, log_g, EvalOptions, LogValue, OmegaTriple};
use crate::special::moments::{f_moment, g_moment};

/// `Q_F(z|ω̄1,ω2) = -f_{-2}/ω2 + f_{-1}/2 + (πi/12)(ω2/ω̄1)`, with its
/// quadrature error.
pub fn q_f(z: Complex64, wbar: Complex64, w2: Complex64, opts: &EvalOptions) -> Result<(Complex64, f64)> {
    if w2.norm() == 0.0 {
        return Err(QrhError::precondition("ω2 != 0"));
    }
    let m2 = f_moment(-2, z, wbar, opts)?;
    let m1 = f_moment(-1, z, wbar, opts)?;
    let q = -m2.value() / w2 + m1.value() / 2.0 + Complex64::new(0.0, PI / 12.0) * w2 / wbar;
    Ok((q, m2.error() / w2.norm() + m1.error() / 2.0))
}

/// `log F*(z|ω̄1,ω2)`.
pub fn log_f_star(z: Complex64, wbar: Complex64, w2: Complex64, opts: &EvalOptions) -> Result<LogValue> {
    let (q, qe) = q_f(z, wbar, w2, opts)?;
    let f = log_f(z, wbar, w2, opts)?;
    Ok(LogValue {
        log: f.log + q,
        error: f.error + qe,
        route: f.route,
    })
}

pub fn f_star(z: Complex64, wbar: Complex64, w2: Complex64, opts: &EvalOptions) -> Result<Complex64> {
    Ok(log_f_star(z, wbar, w2, opts)?.exp())
}

/// The four predicates under which `G*` is defined.
pub fn g_star_predicates(z: Complex64, om: &OmegaTriple) -> Vec<(&'static str, bool)> {
    let d = om.delta();
    vec![
        ("Im(z/ω1) > 0", (z / om.w1).im > 0.0),
        ("Im(z/ω̃1) > 0", (z / om.wt1).im > 0.0),
        ("Im(Δω1/ω1) > 0", (d / om.w1).im > 0.0),
        ("Im(Δω1/ω̃1) > 0", (d / om.wt1).im > 0.0),
    ]
}

fn check_g_star(z: Complex64, om: &OmegaTriple) -> Result<()> {
    om.check_nonzero()?;
    match g_star_predicates(z, om).into_iter().find(|(_, ok)| !ok) {
        Some((name, _)) => Err(QrhError::precondition(name)),
        None => Ok(()),
    }
}

/// `Q_G(z|ω1,ω̃1,ω2)`.
pub fn q_g(z: Complex64, om: &OmegaTriple, opts: &EvalOptions) -> Result<(Complex64, f64)> {
    check_g_star(z, om)?;
    let d = om.delta();
    let g2z = g_moment(-2, z, om.w1, om.wt1, opts)?;
    let g2d = g_moment(-2, d, om.w1, om.wt1, opts)?;
    let g1z = g_moment(-1, z, om.w1, om.wt1, opts)?;
    let g1d = g_moment(-1, d, om.w1, om.wt1, opts)?;
    let pair = [om.w1, om.wt1];
    let b12 = multiple_bernoulli(1, z + om.bar(), &pair)? - multiple_bernoulli(1, om.w1, &pair)?;
    let q = -(g2z.value() - g2d.value()) / om.w2
        + 0.5 * (g1z.value() - g1d.value())
        + b12 * zeta2() * om.w2 / Complex64::new(0.0, 2.0 * PI);
    let err = (g2z.error() + g2d.error()) / om.w2.norm() + 0.5 * (g1z.error() + g1d.error());
    Ok((q, err))
}

/// `log G*(z|ω1,ω̃1,ω2)`.
pub fn log_g_star(z: Complex64, om: &OmegaTriple, opts: &EvalOptions) -> Result<LogValue> {
    let (q, qe) = q_g(z, om, opts)?;
    let gz = log_g(z, om, opts)?;
    let gd = log_g(om.delta(), om, opts)?;
    Ok(LogValue {
        log: gz.log - gd.log + q,
        error: gz.error + gd.error + qe,
        route: gz.route,
    })
}

pub fn g_star(z: Complex64, om: &OmegaTriple, opts: &EvalOptions) -> Result<Complex64> {
    Ok(log_g_star(z, om, opts)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn q_f_is_periodic_in_wbar() {
        let opts = EvalOptions::default();
        let (z, a, b) = (c(0.3, 0.4), c(1.0, 0.0), c(0.2, -0.7));
        let q0 = q_f(z, a, b, &opts).unwrap().0;
        let q1 = q_f(z + a, a, b, &opts).unwrap().0;
        // equal up to the branch of f_{-1}/2 = -log(1-x1)/2, which is single-valued here
        assert!((q0 - q1).norm() < 1e-11);
    }

    #[test]
    fn g_star_names_the_failed_predicate() {
        let opts = EvalOptions::default();
        let om = OmegaTriple::new(c(0.95, -0.02), c(1.05, 0.02), c(0.2, -0.7));
        assert_eq!(
            log_g_star(c(0.3, 0.4), &om, &opts).unwrap_err(),
            QrhError::precondition("Im(Δω1/ω1) > 0")
        );
        let om = OmegaTriple::new(c(1.05, 0.02), c(0.95, -0.02), c(0.2, -0.7));
        assert_eq!(
            log_g_star(c(0.3, -0.4), &om, &opts).unwrap_err(),
            QrhError::precondition("Im(z/ω1) > 0")
        );
    }

    #[test]
    fn g_star_is_one_at_delta() {
        // G*(Δω1) = exp(Q_G(Δω1)) and Q_G(Δω1) reduces to the B_{1,2} term,
        // which vanishes because Δω1 + ω̄1 = ω1
        let opts = EvalOptions::default();
        let om = OmegaTriple::new(c(1.05, 0.02), c(0.95, -0.02), c(0.2, -0.7));
        let v = g_star(om.delta(), &om, &opts).unwrap();
        assert!((v - 1.0).norm() < 1e-12);
    }
}

//! The functions `F(z|ω̄1,ω2)` and `G(z|ω1,ω̃1,ω2)`, evaluated in log form
//! from their integral representations, the product formula, or the
//! difference equations when `z` lies outside the strip.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{QrhError, Result};
use crate::special::contour::{ContourSpec, ExpRatio};
use crate::special::products::{f_product_cost, log_f_product};

const MAX_SHIFT: i64 = 40;
/// Above this many expected factors the contour route is preferred.
const PRODUCT_BUDGET: f64 = 2.0e5;

fn two_pi_i() -> Complex64 {
    Complex64::new(0.0, 2.0 * PI)
}

/// `(ω1, ω̃1, ω2)` with `ω̄1 = (ω1+ω̃1)/2` and `Δω1 = (ω1-ω̃1)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OmegaTriple {
    pub w1: Complex64,
    pub wt1: Complex64,
    pub w2: Complex64,
}

impl OmegaTriple {
    pub fn new(w1: Complex64, wt1: Complex64, w2: Complex64) -> Self {
        Self { w1, wt1, w2 }
    }

    pub fn bar(&self) -> Complex64 {
        0.5 * (self.w1 + self.wt1)
    }

    pub fn delta(&self) -> Complex64 {
        0.5 * (self.w1 - self.wt1)
    }

    pub fn with_w2(&self, w2: Complex64) -> Self {
        Self { w2, ..*self }
    }

    pub fn check_nonzero(&self) -> Result<()> {
        for (w, name) in [(self.w1, "ω1 != 0"), (self.wt1, "ω̃1 != 0"), (self.w2, "ω2 != 0")] {
            if w.norm() == 0.0 {
                return Err(QrhError::precondition(name));
            }
        }
        Ok(())
    }
}

/// `x_1 = e^{2πiz/ω̄1}`, `x_2 = e^{2πiz/ω2}`, `q_1 = e^{2πiω2/ω̄1}`,
/// `q_2 = e^{2πiω1/ω2}`, `q̃_2 = e^{2πiω̃1/ω2}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpVars {
    pub x1: Complex64,
    pub x2: Complex64,
    pub q1: Complex64,
    pub q2: Complex64,
    pub qt2: Complex64,
}

impl ExpVars {
    pub fn new(z: Complex64, om: &OmegaTriple) -> Self {
        let e = |w: Complex64| (two_pi_i() * w).exp();
        Self {
            x1: e(z / om.bar()),
            x2: e(z / om.w2),
            q1: e(om.w2 / om.bar()),
            q2: e(om.w1 / om.w2),
            qt2: e(om.wt1 / om.w2),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Product,
    Contour,
    /// Contour at `z - m·ω` followed by `m` difference-equation steps.
    Shifted(i64),
}

/// A logarithm (defined modulo `2πi`) with an error estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LogValue {
    pub log: Complex64,
    pub error: f64,
    pub route: Route,
}

impl LogValue {
    pub fn exp(&self) -> Complex64 {
        self.log.exp()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalOptions {
    pub contour: ContourSpec,
    pub product_tol: f64,
    /// Angle `ε₊` in the rotation `c = e^{-i(θ+ε₊)}` of the moment integrals.
    pub eps_plus: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            contour: ContourSpec::default(),
            product_tol: 1e-16,
            eps_plus: 1e-3,
        }
    }
}

impl EvalOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            contour: ContourSpec::with_tol(tol),
            ..Default::default()
        }
    }
}

pub fn f_integrand(z: Complex64, a: Complex64, b: Complex64) -> ExpRatio {
    ExpRatio {
        pref: Complex64::new(1.0, 0.0),
        mu: z,
        power: -1,
        omegas: vec![a, b],
    }
}

pub fn g_integrand(z: Complex64, om: &OmegaTriple) -> ExpRatio {
    ExpRatio {
        pref: Complex64::new(-1.0, 0.0),
        mu: z + om.bar(),
        power: -1,
        omegas: vec![om.w1, om.wt1, om.w2],
    }
}

/// `log F(z|a,b) = ∫_C e^{zs} / ((e^{as}-1)(e^{bs}-1)) ds/s`.
pub fn log_f_contour(z: Complex64, a: Complex64, b: Complex64, spec: &ContourSpec) -> Result<LogValue> {
    if a.norm() == 0.0 || b.norm() == 0.0 {
        return Err(QrhError::precondition("ω̄1 != 0 and ω2 != 0"));
    }
    let ig = f_integrand(z, a, b);
    if ig.arc().is_none() {
        return Err(QrhError::Region {
            predicate: "z, ω̄1, ω2, ω̄1+ω2-z in a common open half-plane".into(),
        });
    }
    let v = ig.integrate(spec)?;
    Ok(LogValue {
        log: v.value(),
        error: v.error(),
        route: Route::Contour,
    })
}

/// `log G(z|ω1,ω̃1,ω2) = ∫_C -e^{(z+ω̄1)s} / ((e^{ω1 s}-1)(e^{ω̃1 s}-1)(e^{ω2 s}-1)) ds/s`.
pub fn log_g_contour(z: Complex64, om: &OmegaTriple, spec: &ContourSpec) -> Result<LogValue> {
    om.check_nonzero()?;
    let ig = g_integrand(z, om);
    if ig.arc().is_none() {
        return Err(QrhError::Region {
            predicate: "ω1, ω̃1, ω2, z+ω̄1, ω̄1+ω2-z in a common open half-plane".into(),
        });
    }
    let v = ig.integrate(spec)?;
    Ok(LogValue {
        log: v.value(),
        error: v.error(),
        route: Route::Contour,
    })
}

/// `log(1 - w)`.
fn log1m(w: Complex64) -> Result<Complex64> {
    let f = 1.0 - w;
    if f.norm() < 1e-300 {
        return Err(QrhError::Singular { kind: "pole".into() });
    }
    Ok(f.ln())
}

/// `log F(z|a,b)` by the cheapest applicable route. `F` is symmetric in
/// `a, b`, so the product formula applies whenever `Im(a/b) != 0`.
pub fn log_f(z: Complex64, a: Complex64, b: Complex64, opts: &EvalOptions) -> Result<LogValue> {
    if a.norm() == 0.0 || b.norm() == 0.0 {
        return Err(QrhError::precondition("ω̄1 != 0 and ω2 != 0"));
    }
    let (pa, pb) = if (a / b).im > 0.0 { (a, b) } else { (b, a) };
    if f_product_cost(pa, pb) < PRODUCT_BUDGET {
        let log = log_f_product(z, pa, pb, opts.product_tol)?;
        return Ok(LogValue {
            log,
            error: 1e-15 * (1.0 + log.norm()) * f_product_cost(pa, pb).sqrt(),
            route: Route::Product,
        });
    }
    if f_integrand(z, a, b).arc().is_some() {
        return log_f_contour(z, a, b, &opts.contour);
    }
    // F(y + a) = F(y) / (1 - e^{2πi y/b})
    for m in (1..=MAX_SHIFT).flat_map(|m| [m, -m]) {
        let y = z - (m as f64) * a;
        if f_integrand(y, a, b).arc().is_none() {
            continue;
        }
        let base = log_f_contour(y, a, b, &opts.contour)?;
        let mut log = base.log;
        for j in steps(m) {
            let x2 = (two_pi_i() * (y + (j as f64) * a) / b).exp();
            log -= m.signum() as f64 * log1m(x2)?;
        }
        return Ok(LogValue {
            log,
            error: base.error,
            route: Route::Shifted(m),
        });
    }
    Err(QrhError::Region {
        predicate: "z reachable from the integration strip by shifts of ω̄1".into(),
    })
}

/// Offsets `j` whose factors connect `F(y)` to `F(y + m·a)`.
fn steps(m: i64) -> Vec<i64> {
    if m > 0 {
        (0..m).collect()
    } else {
        (m..0).collect()
    }
}

/// `log G(z|ω1,ω̃1,ω2)`: the contour when admissible, otherwise shifted by
/// multiples of `ω1` using `G(y+ω1) = G(y) / F(y+ω̄1|ω̃1,ω2)`.
pub fn log_g(z: Complex64, om: &OmegaTriple, opts: &EvalOptions) -> Result<LogValue> {
    om.check_nonzero()?;
    if g_integrand(z, om).arc().is_some() {
        return log_g_contour(z, om, &opts.contour);
    }
    for m in (1..=MAX_SHIFT).flat_map(|m| [m, -m]) {
        let y = z - (m as f64) * om.w1;
        if g_integrand(y, om).arc().is_none() {
            continue;
        }
        let base = log_g_contour(y, om, &opts.contour)?;
        let mut log = base.log;
        let mut error = base.error;
        for j in steps(m) {
            let f = log_f(y + (j as f64) * om.w1 + om.bar(), om.wt1, om.w2, opts)?;
            log -= m.signum() as f64 * f.log;
            error += f.error;
        }
        return Ok(LogValue {
            log,
            error,
            route: Route::Shifted(m),
        });
    }
    Err(QrhError::Region {
        predicate: "z reachable from the integration strip by shifts of ω1".into(),
    })
}

/// Difference of two logs reduced to `Im ∈ (-π, π]`.
pub fn wrap_log(d: Complex64) -> Complex64 {
    let im = d.im - 2.0 * PI * ((d.im + PI) / (2.0 * PI)).floor();
    Complex64::new(d.re, if im <= -PI { im + 2.0 * PI } else { im })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        wrap_log(a - b).norm() < tol
    }

    #[test]
    fn contour_matches_product() {
        let (z, a, b) = (c(0.3, 0.4), c(1.0, 0.0), c(0.2, -0.7));
        let ct = log_f_contour(z, a, b, &ContourSpec::default()).unwrap();
        let pr = log_f_product(z, a, b, 1e-16).unwrap();
        assert!(close(ct.log, pr, 1e-12), "{} vs {}", ct.log, pr);
        assert!(ct.error < 1e-12);
    }

    #[test]
    fn symmetric_in_parameters() {
        let (z, a, b) = (c(0.5, 0.2), c(1.0, 0.3), c(0.4, -0.6));
        let x = log_f_contour(z, a, b, &ContourSpec::default()).unwrap().log;
        let y = log_f_contour(z, b, a, &ContourSpec::default()).unwrap().log;
        assert!((x - y).norm() < 1e-12);
    }

    #[test]
    fn shifted_route_agrees_with_product() {
        let (a, b) = (c(1.0, 0.0), c(0.2, -0.7));
        let z = c(5.0, -3.0);
        assert!(f_integrand(z, a, b).arc().is_none());
        let opts = EvalOptions::default();
        let pr = log_f_product(z, a, b, 1e-16).unwrap();
        let mut y = z;
        let mut log = Complex64::new(0.0, 0.0);
        while f_integrand(y, a, b).arc().is_none() {
            y -= a;
            log -= log1m((two_pi_i() * y / b).exp()).unwrap();
        }
        log += log_f_contour(y, a, b, &opts.contour).unwrap().log;
        assert!(close(log, pr, 1e-11));
        assert_eq!(log_f(z, a, b, &opts).unwrap().route, Route::Product);
    }

    #[test]
    fn g_difference_equations() {
        let om = OmegaTriple::new(c(1.05, 0.02), c(0.95, -0.02), c(0.2, -0.7));
        let opts = EvalOptions::default();
        let z = c(0.3, 0.4);
        let g = |z| log_g(z, &om, &opts).unwrap().log;
        let f1 = log_f(z + om.bar(), om.wt1, om.w2, &opts).unwrap().log;
        assert!(close(g(z + om.w1) - g(z), -f1, 1e-11));
        let f2 = log_f(z + om.bar(), om.w1, om.w2, &opts).unwrap().log;
        assert!(close(g(z + om.wt1) - g(z), -f2, 1e-11));
    }

    #[test]
    fn g_shifted_route() {
        let om = OmegaTriple::new(c(1.05, 0.02), c(0.95, -0.02), c(0.2, -0.7));
        let opts = EvalOptions::default();
        let z = c(5.0, -3.0);
        let v = log_g(z, &om, &opts).unwrap();
        assert!(matches!(v.route, Route::Shifted(m) if m > 0));
        // one more step by the difference equation lands on the same value
        let w = log_g(z - om.w1, &om, &opts).unwrap();
        let f = log_f(z - om.w1 + om.bar(), om.wt1, om.w2, &opts).unwrap();
        assert!(close(v.log, w.log - f.log, 1e-10));
    }

    #[test]
    fn zero_parameters_rejected() {
        let om = OmegaTriple::new(c(1.0, 0.0), c(0.0, 0.0), c(0.2, -0.7));
        assert!(log_g(c(0.3, 0.4), &om, &EvalOptions::default()).unwrap_err().is_precondition());
        assert!(log_f(c(0.3, 0.4), c(0.0, 0.0), c(1.0, 0.0), &EvalOptions::default())
            .unwrap_err()
            .is_precondition());
    }

    #[test]
    fn wrap_reduces_imaginary_part() {
        let w = wrap_log(c(0.1, 3.0 * PI + 0.2));
        assert!((w - c(0.1, -PI + 0.2)).norm() < 1e-14);
    }
}

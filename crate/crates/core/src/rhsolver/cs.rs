//! The refined Chern-Simons partition function as a ratio of triple sines,
//! and its match with `D_0`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{QrhError, Result};
use crate::residual::Residual;
use crate::rhsolver::point::{d_predicates, require, SolutionPoint};
use crate::rhsolver::solution::{d0_periods, log_d0_unchecked};
use crate::special::bernoulli::multiple_bernoulli;
use crate::special::contour::AdmissibleArc;
use crate::special::fg::{log_g, EvalOptions, OmegaTriple};
use crate::special::starred::q_g;

/// `log sin_3(z|ω1,ω̃1,ω2) = -(πi/6)B_{3,3}(z|ω) + log G(z-ω̄1|ω)`.
pub fn log_sin3(z: Complex64, om: &OmegaTriple, opts: &EvalOptions) -> Result<Complex64> {
    if AdmissibleArc::of(&[om.w1, om.wt1, om.w2]).is_none() {
        return Err(QrhError::precondition("ω1, ω̃1, ω2 on the same side of a line through 0"));
    }
    let b33 = multiple_bernoulli(3, z, &[om.w1, om.wt1, om.w2])?;
    Ok(Complex64::new(0.0, -PI / 6.0) * b33 + log_g(z - om.bar(), om, opts)?.log)
}

/// `(δ̄, μ̄, β)` for the Chern-Simons side.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CsParameters {
    pub delta: Complex64,
    pub mu: Complex64,
    pub beta: Complex64,
}

impl CsParameters {
    /// The point with `δ̄μ̄ = v`, `√β = w-tτ/2`, `1/√β = w+tτ/2`, `δ̄ = -t`.
    /// This needs `(w-tτ/2)(w+tτ/2) = 1`, so `w` is solved from `t` and `τ`.
    pub fn from_solution(v: Complex64, t: Complex64, tau: Complex64) -> (Self, SolutionPoint) {
        let s = t * tau / 2.0;
        let w = (1.0 + s * s).sqrt();
        let sb = w - s;
        let cs = Self {
            delta: -t,
            mu: v / -t,
            beta: sb * sb,
        };
        (cs, SolutionPoint { v, w, t, tau, n: 0 })
    }

    /// The solution point this corresponds to.
    pub fn to_solution(&self) -> SolutionPoint {
        let sb = self.beta.sqrt();
        let w = (sb + 1.0 / sb) / 2.0;
        let t = -self.delta;
        SolutionPoint {
            v: self.delta * self.mu,
            w,
            t,
            tau: (1.0 / sb - sb) / t,
            n: 0,
        }
    }

    fn prefactor(&self) -> Complex64 {
        self.beta / (self.mu - (1.0 - self.beta) / 2.0).sqrt()
    }

    fn periods(&self) -> OmegaTriple {
        let sb = self.beta.sqrt();
        OmegaTriple::new(1.0 / sb, sb, self.delta)
    }
}

/// `Z = β/√(μ̄-(1-β)/2) · sin_3(½(√β+1/√β)+δ̄μ̄ | 1/√β, √β, δ̄) / sin_3(√β | 1/√β, √β, δ̄)`.
pub fn refined_cs_partition(cs: &CsParameters, opts: &EvalOptions) -> Result<Complex64> {
    let om = cs.periods();
    let sb = cs.beta.sqrt();
    let num = log_sin3((sb + 1.0 / sb) / 2.0 + cs.delta * cs.mu, &om, opts)?;
    let den = log_sin3(sb, &om, opts)?;
    Ok(cs.prefactor() * (num - den).exp())
}

/// The same quantity from `D_0`: `D_0·e^{-Q_G(v)}` is `G(v)/G(Δω1)`, and
/// `sin_3(v+w)/sin_3(w-tτ/2) = G(v)/G(Δω1) · e^{-(πi/6)(B_{3,3}(v+w) - B_{3,3}(w-tτ/2))}`.
pub fn cs_from_d0(cs: &CsParameters, opts: &EvalOptions) -> Result<Complex64> {
    let p = cs.to_solution();
    require(&d_predicates(&p))?;
    let om = d0_periods(p.w, p.t, p.tau);
    let d0 = log_d0_unchecked(p.v, p.w, p.t, p.tau, opts)?.log;
    let (qg, _) = q_g(p.v, &om, opts)?;
    let ws = [om.w1, om.wt1, om.w2];
    let b = multiple_bernoulli(3, p.v + p.w, &ws)? - multiple_bernoulli(3, om.w1, &ws)?;
    Ok(cs.prefactor() * (d0 - qg + Complex64::new(0.0, -PI / 6.0) * b).exp())
}

pub fn cs_match(cs: &CsParameters, tol: f64, opts: &EvalOptions) -> Result<Residual> {
    let z = refined_cs_partition(cs, opts)?;
    let d = cs_from_d0(cs, opts)?;
    Ok(Residual::compare(
        format!("Z_cs = adjusted D_0 at δ̄={:.4}, μ̄={:.4}, β={:.4}", cs.delta, cs.mu, cs.beta),
        z,
        d,
        tol,
    ))
}

/// Five solution points `(v, t, τ)` inside the `D_0` region, mapped to the
/// Chern-Simons side.
pub fn default_cs_points() -> Vec<CsParameters> {
    let c = Complex64::new;
    [
        (c(0.3, 0.4), c(-0.2, 0.7), c(0.0, 0.15)),
        (c(0.25, 0.5), c(-0.2, 0.7), c(0.0, 0.1)),
        (c(0.3, 0.4), c(-0.3, 0.8), c(0.02, 0.12)),
        (c(0.4, 0.3), c(-0.1, 0.6), c(0.0, 0.2)),
        (c(0.2, 0.45), c(-0.25, 0.65), c(-0.02, 0.08)),
    ]
    .into_iter()
    .map(|(v, t, tau)| CsParameters::from_solution(v, t, tau).0)
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_maps_round_trip() {
        let (cs, p) = CsParameters::from_solution(Complex64::new(0.3, 0.4), Complex64::new(-0.2, 0.7), Complex64::new(0.0, 0.15));
        let q = cs.to_solution();
        for (a, b) in [(p.v, q.v), (p.w, q.w), (p.t, q.t), (p.tau, q.tau)] {
            assert!((a - b).norm() < 1e-13, "{a} vs {b}");
        }
        let om = d0_periods(p.w, p.t, p.tau);
        assert!((om.w1 * om.wt1 - 1.0).norm() < 1e-13);
    }

    #[test]
    fn matches_d0() {
        let opts = EvalOptions::default();
        for cs in default_cs_points() {
            let r = cs_match(&cs, 1e-8, &opts).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn beta_one_is_finite() {
        let opts = EvalOptions::default();
        let cs = CsParameters {
            delta: Complex64::new(0.2, -0.7),
            mu: Complex64::new(0.3, 0.4) / Complex64::new(0.2, -0.7),
            beta: Complex64::new(1.0, 0.0),
        };
        let z = refined_cs_partition(&cs, &opts).unwrap();
        assert!(z.norm().is_finite() && z.norm() > 0.0);
        // β = 1 is outside the D_0 region: Im(τ/2) = 0
        assert!(cs_from_d0(&cs, &opts).unwrap_err().to_string().contains("Im(τ/2) > 0"));
    }

    #[test]
    fn sin3_is_homogeneous() {
        let opts = EvalOptions::default();
        let om = OmegaTriple::new(Complex64::new(1.05, 0.02), Complex64::new(0.95, -0.02), Complex64::new(0.2, -0.7));
        let z = Complex64::new(1.3, 0.4);
        let c = Complex64::from_polar(1.7, 0.3);
        let scaled = OmegaTriple::new(c * om.w1, c * om.wt1, c * om.w2);
        let a = log_sin3(z, &om, &opts).unwrap().exp();
        let b = log_sin3(c * z, &scaled, &opts).unwrap().exp();
        assert!((a - b).norm() < 1e-10 * a.norm(), "{a} vs {b}");
    }
}

//! The moment integrals `f^c_m` and `g^c_m` and the residue lemma.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{QrhError, Result};
use crate::residual::Residual;
use crate::special::bernoulli::zeta;
use crate::special::contour::{moment_rotation, ContourSpec, ContourValue, ExpRatio};
use crate::special::fg::EvalOptions;

/// Evaluates `ig` on the contour rotated by `c`, or at any rotation in the
/// same admissible arc.
fn integrate_rotated(ig: &ExpRatio, c: Complex64, spec: &ContourSpec) -> Result<ContourValue> {
    let arc = ig.arc().ok_or_else(|| QrhError::Divergent("no admissible rotation for the moment integrand".into()))?;
    if !arc.contains(c) {
        return Err(QrhError::Region {
            predicate: format!("rotation c = {c:.6} admissible for the moment integrand"),
        });
    }
    let mut s = *spec;
    s.rotation = Some(c);
    ig.integrate(&s)
}

/// `f^c_m(z, ω̄1) = ∫_{cC} e^{zs} s^m / (e^{ω̄1 s} - 1) ds`.
pub fn f_moment(m: i32, z: Complex64, wbar: Complex64, opts: &EvalOptions) -> Result<ContourValue> {
    if wbar.norm() == 0.0 {
        return Err(QrhError::precondition("ω̄1 != 0"));
    }
    if (z / wbar).im <= 0.0 {
        return Err(QrhError::precondition("Im(z/ω̄1) > 0"));
    }
    let ig = ExpRatio {
        pref: Complex64::new(1.0, 0.0),
        mu: z,
        power: m,
        omegas: vec![wbar],
    };
    integrate_rotated(&ig, moment_rotation(z, opts.eps_plus), &opts.contour)
}

/// `g^c_m(z, ω1, ω̃1) = ∫_{cC} -e^{(z+ω̄1)s} s^m / ((e^{ω1 s} - 1)(e^{ω̃1 s} - 1)) ds`.
pub fn g_moment(m: i32, z: Complex64, w1: Complex64, wt1: Complex64, opts: &EvalOptions) -> Result<ContourValue> {
    if w1.norm() == 0.0 || wt1.norm() == 0.0 {
        return Err(QrhError::precondition("ω1 != 0 and ω̃1 != 0"));
    }
    if (z / w1).im <= 0.0 {
        return Err(QrhError::precondition("Im(z/ω1) > 0"));
    }
    if (z / wt1).im <= 0.0 {
        return Err(QrhError::precondition("Im(z/ω̃1) > 0"));
    }
    let ig = ExpRatio {
        pref: Complex64::new(-1.0, 0.0),
        mu: z + 0.5 * (w1 + wt1),
        power: m,
        omegas: vec![w1, wt1],
    };
    integrate_rotated(&ig, moment_rotation(z, opts.eps_plus), &opts.contour)
}

/// Right side of the residue lemma,
/// `(d-1)ζ(d)/(2πi) · (ω/2πi)^{d-2}`, with `(d-1)ζ(d)` read as 1 at `d = 1`.
pub fn residue_lemma_rhs(omega: Complex64, d: u32) -> Complex64 {
    let tpi = Complex64::new(0.0, 2.0 * PI);
    let lead = if d == 1 { 1.0 } else { (d as f64 - 1.0) * zeta(d) };
    lead / tpi * (omega / tpi).powi(d as i32 - 2)
}

/// Compares `-∫_C e^{ωs} s^{1-d} / (e^{ωs} - 1)² ds` with the closed form.
pub fn residue_lemma_check(omega: Complex64, d: u32, tol: f64, opts: &EvalOptions) -> Result<Residual> {
    if d == 0 {
        return Err(QrhError::precondition("d >= 1"));
    }
    if omega.re <= 0.0 {
        return Err(QrhError::precondition("Re(ω) > 0"));
    }
    let ig = ExpRatio {
        pref: Complex64::new(-1.0, 0.0),
        mu: omega,
        power: 1 - d as i32,
        omegas: vec![omega, omega],
    };
    let v = ig.integrate(&opts.contour)?;
    Ok(
        Residual::compare(format!("residue lemma d={d} ω={omega}"), v.value(), residue_lemma_rhs(omega, d), tol)
            .with_detail(format!("quadrature error {:.2e}", v.error())),
    )
}

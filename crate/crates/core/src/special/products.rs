//! Infinite-product evaluations: the numerical quantum dilogarithm, the
//! product formula for `F`, and the right-hand sides of the reflection
//! identities.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{QrhError, Result};

const MAX_FACTORS: usize = 10_000_000;

fn two_pi_i() -> Complex64 {
    Complex64::new(0.0, 2.0 * PI)
}

/// `Σ_{k>=0} log(1 - x q^k)`, summed until the tail is below `tol`.
pub fn log_qdilog(x: Complex64, q: Complex64, tol: f64) -> Result<Complex64> {
    let aq = q.norm();
    if aq >= 1.0 {
        return Err(QrhError::DivergentProduct(format!("|q| < 1 (|q| = {aq})")));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut term = x;
    for k in 0..MAX_FACTORS {
        let f = 1.0 - term;
        if f.norm() < tol {
            return Err(QrhError::Singular {
                kind: format!("zero (factor {k} within {tol:e} of 0)"),
            });
        }
        acc += (-term).ln_1p();
        term *= q;
        let t = term.norm();
        if !t.is_finite() {
            return Err(QrhError::DivergentProduct(format!("non-finite factor at k = {k}")));
        }
        // |Σ_{j>k} log(1 - x q^j)| <= Σ 2|x q^j| once |x q^j| < 1/2
        if t < 0.5 && 2.0 * t / (1.0 - aq) < tol {
            return Ok(acc);
        }
    }
    Err(QrhError::DivergentProduct(format!("no convergence within {MAX_FACTORS} factors")))
}

trait Ln1p {
    fn ln_1p(self) -> Self;
}

impl Ln1p for Complex64 {
    /// `log(1 + w)` accurate for small `|w|`.
    fn ln_1p(self) -> Self {
        let w = self;
        if w.norm() < 1e-4 {
            // w - w²/2 + w³/3 - w⁴/4 + w⁵/5
            let mut s = Complex64::new(0.0, 0.0);
            let mut p = w;
            for k in 1..=6 {
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                s += p * (sign / k as f64);
                p *= w;
            }
            s
        } else {
            (1.0 + w).ln()
        }
    }
}

/// `(x;q)_∞ = Π_{k>=0}(1 - x q^k)` for `|q| < 1`.
pub fn qdilog_numeric(x: Complex64, q: Complex64, tol: f64) -> Result<Complex64> {
    Ok(log_qdilog(x, q, tol)?.exp())
}

/// Exponentiated variables `x_1 = e^{2πiz/ω̄1}`, `x_2 = e^{2πiz/ω2}`,
/// `p = e^{2πiω̄1/ω2}`.
fn f_vars(z: Complex64, a: Complex64, b: Complex64) -> (Complex64, Complex64, Complex64) {
    (
        (two_pi_i() * z / a).exp(),
        (two_pi_i() * z / b).exp(),
        (two_pi_i() * a / b).exp(),
    )
}

/// `log F(z|a,b)` from
/// `F = Π_{k>=1}(1 - x_1 q_1^{-k})^{-1} Π_{k>=0}(1 - x_2 p^k)`,
/// valid for `Im(a/b) > 0`.
pub fn log_f_product(z: Complex64, a: Complex64, b: Complex64, tol: f64) -> Result<Complex64> {
    if (a / b).im <= 0.0 {
        return Err(QrhError::precondition("Im(ω̄1/ω2) > 0"));
    }
    let (x1, x2, p) = f_vars(z, a, b);
    // q_1^{-1} directly: q_1 itself overflows once Im(ω2/ω̄1) << 0
    let qi = (-two_pi_i() * b / a).exp();
    Ok(log_qdilog(x2, p, tol)? - log_qdilog(x1 * qi, qi, tol)?)
}

pub fn f_product(z: Complex64, a: Complex64, b: Complex64, tol: f64) -> Result<Complex64> {
    Ok(log_f_product(z, a, b, tol)?.exp())
}

/// Expected number of factors for the product formula, a cost proxy used
/// when choosing between evaluation routes.
pub fn f_product_cost(a: Complex64, b: Complex64) -> f64 {
    let r1 = -2.0 * PI * (b / a).im;
    let r2 = 2.0 * PI * (a / b).im;
    if r1 <= 0.0 || r2 <= 0.0 {
        return f64::INFINITY;
    }
    40.0 / r1 + 40.0 / r2
}

/// Right side of `F(z+ω2|ω̄1,ω2) F(z|ω̄1,-ω2)`:
/// `Π_{k>=0}(1 - x_2 p^k) / Π_{k>=1}(1 - x_2^{-1} p^k)`.
pub fn log_reflection_rhs_f(z: Complex64, a: Complex64, b: Complex64, tol: f64) -> Result<Complex64> {
    if (a / b).im <= 0.0 {
        return Err(QrhError::precondition("Im(ω̄1/ω2) > 0"));
    }
    let (_, x2, p) = f_vars(z, a, b);
    Ok(log_qdilog(x2, p, tol)? - log_qdilog(p / x2, p, tol)?)
}

/// `Σ_{k1>=0} log(x q2^{k1+1/2} q̃2^{1/2}; q̃2)_∞`, the double product
/// `Π_{k1,k2>=0}(1 - x q2^{k1+1/2} q̃2^{k2+1/2})` in log form.
fn log_double_product(x: Complex64, q2h: Complex64, qt2h: Complex64, tol: f64) -> Result<Complex64> {
    let q2 = q2h * q2h;
    let qt2 = qt2h * qt2h;
    let (a2, at2) = (q2.norm(), qt2.norm());
    if a2 >= 1.0 || at2 >= 1.0 {
        return Err(QrhError::DivergentProduct(format!(
            "|q2| < 1 and |q̃2| < 1 (|q2| = {a2}, |q̃2| = {at2})"
        )));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut lead = x * q2h * qt2h;
    for _ in 0..MAX_FACTORS {
        acc += log_qdilog(lead, qt2, tol)?;
        lead *= q2;
        let t = lead.norm();
        if t < 0.5 && 2.0 * t / ((1.0 - a2) * (1.0 - at2)) < tol {
            return Ok(acc);
        }
    }
    Err(QrhError::DivergentProduct(format!("no convergence within {MAX_FACTORS} rows")))
}

/// Right side of `G(z+ω2|ω1,ω̃1,ω2) G(z|ω1,ω̃1,-ω2)`:
/// `Π(1 - x_2 q_2^{k1+1/2} q̃_2^{k2+1/2}) Π(1 - x_2^{-1} q_2^{k1+1/2} q̃_2^{k2+1/2})`.
pub fn log_reflection_rhs_g(z: Complex64, w1: Complex64, wt1: Complex64, w2: Complex64, tol: f64) -> Result<Complex64> {
    if (w1 / w2).im <= 0.0 {
        return Err(QrhError::precondition("Im(ω1/ω2) > 0"));
    }
    if (wt1 / w2).im <= 0.0 {
        return Err(QrhError::precondition("Im(ω̃1/ω2) > 0"));
    }
    let x2 = (two_pi_i() * z / w2).exp();
    let q2h = (two_pi_i() * w1 / (2.0 * w2)).exp();
    let qt2h = (two_pi_i() * wt1 / (2.0 * w2)).exp();
    Ok(log_double_product(x2, q2h, qt2h, tol)? + log_double_product(1.0 / x2, q2h, qt2h, tol)?)
}

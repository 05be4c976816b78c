//! Jump, reflection and symmetry checks for `B_n` and `D_n`.

use num_complex::Complex64;

use crate::error::{QrhError, Result};
use crate::lattice::{conifold_bps, ChargeVector};
use crate::residual::Residual;
use crate::rhsolver::point::SolutionPoint;
use crate::rhsolver::solution::{log_b0_reflected, log_b_n, log_d0_reflected, log_d_n};
use crate::special::fg::EvalOptions;

const MAX_TERMS: usize = 100_000;

fn log1m(u: Complex64) -> Complex64 {
    (1.0 - u).ln()
}

/// `Π_{k=0}^{n-1} (1 - q^{(1-n+2k)/2} X)^{-1}` in log form.
fn log_d_jump(qh: Complex64, big_x: Complex64, n: i64) -> Complex64 {
    (0..n).map(|k| -log1m(qh.powi((1 - n + 2 * k) as i32) * big_x)).sum()
}

/// `B_{n+1}/B_n = (1 - x y^n)^{-1}`.
pub fn b_wallcrossing(p: &SolutionPoint, tol: f64, opts: &EvalOptions) -> Result<Residual> {
    let lhs = (log_b_n(&p.with_n(p.n + 1), opts)?.log - log_b_n(p, opts)?.log).exp();
    let rhs = 1.0 / (1.0 - p.x() * p.y().powi(p.n as i32));
    Ok(Residual::compare(format!("B_{}/B_{} = (1-xy^{})^-1", p.n + 1, p.n, p.n), lhs, rhs, tol))
}

/// `D_{n+1}/D_n = Π_{k<n} (1 - q^{(1-n+2k)/2} x y^n)^{-1}`.
pub fn d_wallcrossing(p: &SolutionPoint, tol: f64, opts: &EvalOptions) -> Result<Residual> {
    let lhs = (log_d_n(&p.with_n(p.n + 1), opts)?.log - log_d_n(p, opts)?.log).exp();
    let rhs = log_d_jump(p.q_half(), p.x() * p.y().powi(p.n as i32), p.n).exp();
    Ok(Residual::compare(
        format!("D_{}/D_{} = Π_k (1-q^((1-n+2k)/2) xy^{})^-1", p.n + 1, p.n, p.n),
        lhs,
        rhs,
        tol,
    ))
}

/// Sum of `f(j)` for `j >= start` until `bound(j)` is below `tol`.
fn sum_until(start: i64, tol: f64, mut f: impl FnMut(i64) -> Complex64, bound: impl Fn(i64) -> f64) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for j in start..start + MAX_TERMS as i64 {
        acc += f(j);
        if bound(j + 1) < tol {
            return Ok(acc);
        }
    }
    Err(QrhError::DivergentProduct(format!("no convergence within {MAX_TERMS} factors")))
}

/// `Π_{n>=0}(1 - x y^n) · Π_{n>=1}(1 - x^{-1} y^n)^{-1}` in log form.
pub fn log_b0_reflection_rhs(p: &SolutionPoint, tol: f64) -> Result<Complex64> {
    let (x, y) = (p.x(), p.y());
    let ay = y.norm();
    if ay >= 1.0 {
        return Err(QrhError::DivergentProduct(format!("|y| < 1 (|y| = {ay})")));
    }
    let xm = x.norm().max(1.0 / x.norm());
    let bound = |n: i64| 2.0 * xm * ay.powi(n as i32) / (1.0 - ay);
    let a = sum_until(0, tol, |n| log1m(x * y.powi(n as i32)), bound)?;
    let b = sum_until(1, tol, |n| log1m(y.powi(n as i32) / x), bound)?;
    Ok(a - b)
}

/// The three product families on the right of the `D_0` reflection, in log form.
pub fn log_d0_reflection_rhs(p: &SolutionPoint, tol: f64) -> Result<Complex64> {
    let (x, y, qh) = (p.x(), p.y(), p.q_half());
    let r = y.norm() * qh.norm().max(1.0 / qh.norm());
    if r >= 1.0 {
        return Err(QrhError::DivergentProduct(format!("|y|·max(|q^{{1/2}}|^±1) < 1 (= {r})")));
    }
    let xm = x.norm().max(1.0 / x.norm());
    let row = |n: i64| {
        let yn = y.powi(n as i32);
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..n {
            let e = (1 - n + 2 * k) as i32;
            acc += log1m(qh.powi(e) * x * yn) + log1m(qh.powi(e) * yn / x);
            acc -= log1m(qh.powi(e + 1) * yn) + log1m(qh.powi(e - 1) * yn);
        }
        acc
    };
    let bound = |n: i64| 8.0 * xm * (n as f64 + 1.0) * qh.norm().max(1.0 / qh.norm()) * r.powi(n as i32) / (1.0 - r).powi(2);
    sum_until(1, tol, row, bound)
}

/// `B_0(t)·B_0(-t)` against its product form.
pub fn b0_reflection(p: &SolutionPoint, tol: f64, opts: &EvalOptions) -> Result<Residual> {
    let p0 = p.with_n(0);
    let lhs = (log_b_n(&p0, opts)?.log + log_b0_reflected(&p0, opts)?.log).exp();
    let rhs = log_b0_reflection_rhs(&p0, opts.product_tol)?.exp();
    Ok(Residual::compare("B_0(t)·B_0(-t) = Π(1-xy^n)·Π(1-x^-1 y^n)^-1", lhs, rhs, tol))
}

/// `D_0(t)·D_0(-t)` against its three product families.
pub fn d0_reflection(p: &SolutionPoint, tol: f64, opts: &EvalOptions) -> Result<Residual> {
    let p0 = p.with_n(0);
    let lhs = (log_d_n(&p0, opts)?.log + log_d0_reflected(&p0, opts)?.log).exp();
    let rhs = log_d0_reflection_rhs(&p0, opts.product_tol)?.exp();
    Ok(Residual::compare("D_0(t)·D_0(-t) = three product families", lhs, rhs, tol)
        .with_detail("D_0(-t) taken with tτ fixed".to_string()))
}

/// `B_m/B_0` and `D_m/D_0` against the composed jumps, for `m = 1..=mmax`.
pub fn telescoping(p: &SolutionPoint, mmax: i64, tol: f64, opts: &EvalOptions) -> Result<Vec<Residual>> {
    let p0 = p.with_n(0);
    let (lb0, ld0) = (log_b_n(&p0, opts)?.log, log_d_n(&p0, opts)?.log);
    let (x, y, qh) = (p.x(), p.y(), p.q_half());
    let mut out = Vec::new();
    for m in 1..=mmax {
        let pm = p.with_n(m);
        let jb: Complex64 = (0..m).map(|n| -log1m(x * y.powi(n as i32))).sum();
        let jd: Complex64 = (0..m).map(|n| log_d_jump(qh, x * y.powi(n as i32), n)).sum();
        out.push(Residual::compare(
            format!("B_{m}/B_0 = composed jumps"),
            (log_b_n(&pm, opts)?.log - lb0).exp(),
            jb.exp(),
            tol,
        ));
        out.push(Residual::compare(
            format!("D_{m}/D_0 = composed jumps"),
            (log_d_n(&pm, opts)?.log - ld0).exp(),
            jd.exp(),
            tol,
        ));
    }
    Ok(out)
}

/// `x_γ(t) = exp(-Z(γ)/t)` from the lattice central charge.
fn x_of(p: &SolutionPoint, g: ChargeVector, t: Complex64) -> Result<Complex64> {
    let s = conifold_bps(p.v, p.w)?;
    Ok((-s.central_charge(g) / t).exp())
}

/// The extension `R_{-ℓ,-γm}(t') = R_{ℓ,γm}(-t')` on the mirrored half-plane,
/// checked against the `σ`-image of the jump across `-ℓ_n`:
/// `S_q(-ℓ_n)(x_{-β∨}) = (1 - x_{-β-nδ})^{-1} x_{-β∨}`, with `x` evaluated at `t' = -t`.
pub fn symmetry_extension(p: &SolutionPoint, tol: f64, opts: &EvalOptions) -> Result<Vec<Residual>> {
    let tm = -p.t;
    let ext_b = |n: i64| -> Result<Complex64> { Ok(log_b_n(&p.with_n(n).with_t(-tm), opts)?.log) };
    let ext_d = |n: i64| -> Result<Complex64> { Ok(log_d_n(&p.with_n(n).with_t(-tm), opts)?.log) };
    let xm = x_of(p, -ChargeVector::electric(1, p.n), tm)?;
    let lhs_b = (ext_b(p.n + 1)? - ext_b(p.n)?).exp();
    let lhs_d = (ext_d(p.n + 1)? - ext_d(p.n)?).exp();
    Ok(vec![
        Residual::compare(
            format!("R_(-ℓ_{},-β∨) jump at -t = σ-image", p.n),
            lhs_b,
            1.0 / (1.0 - xm),
            tol,
        ),
        Residual::compare(
            format!("R_(-ℓ_{},-δ∨) jump at -t = σ-image", p.n),
            lhs_d,
            log_d_jump(p.q_half(), xm, p.n).exp(),
            tol,
        ),
    ])
}

/// `R_{ℓ,γm}·R_{ℓ,-γm} = 1`. The inverted charge is defined as the
/// reciprocal, so this holds by construction and is reported as such.
pub fn inversion() -> Residual {
    Residual::exact(
        "R_(ℓ,γm)·R_(ℓ,-γm) = 1",
        true,
        Some("constructional: R_(ℓ,-γm) is defined as 1/R_(ℓ,γm)".into()),
    )
}

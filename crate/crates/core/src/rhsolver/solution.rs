//! The solution functions `B_n` and `D_n`.

use num_complex::Complex64;

use crate::error::{QrhError, Result};
use crate::rhsolver::point::{b_predicates, d_predicates, require, SolutionPoint};
use crate::special::fg::{EvalOptions, LogValue, OmegaTriple};
use crate::special::starred::{log_f_star, log_g_star};

/// `log B_0(v,w,t) = log F*(v|w,-t)`, without the predicate check.
pub fn log_b0_unchecked(v: Complex64, w: Complex64, t: Complex64, opts: &EvalOptions) -> Result<LogValue> {
    log_f_star(v, w, -t, opts)
}

/// The periods `(w-tτ/2, w+tτ/2, -t)` of `D_0`.
pub fn d0_periods(w: Complex64, t: Complex64, tau: Complex64) -> OmegaTriple {
    let s = t * tau / 2.0;
    OmegaTriple::new(w - s, w + s, -t)
}

/// `log D_0(v,w,t) = log G*(v|w-tτ/2,w+tτ/2,-t)`, without the predicate check.
pub fn log_d0_unchecked(v: Complex64, w: Complex64, t: Complex64, tau: Complex64, opts: &EvalOptions) -> Result<LogValue> {
    log_g_star(v, &d0_periods(w, t, tau), opts)
}

/// `log B_n = log B_0(v+nw, w, t)`.
pub fn log_b_n(p: &SolutionPoint, opts: &EvalOptions) -> Result<LogValue> {
    require(&b_predicates(p))?;
    log_b0_unchecked(p.v + p.w * p.n as f64, p.w, p.t, opts)
}

pub fn b_n(p: &SolutionPoint, opts: &EvalOptions) -> Result<Complex64> {
    Ok(log_b_n(p, opts)?.exp())
}

/// `log D_n = log D_0(v+nw-ntτ/2, w, t) + Σ_{k<n} log B_0(v+nw+(1-n+2k)tτ/2, w+tτ/2, t)`.
pub fn log_d_n(p: &SolutionPoint, opts: &EvalOptions) -> Result<LogValue> {
    if p.n < 0 {
        return Err(QrhError::precondition("n >= 0"));
    }
    require(&d_predicates(p))?;
    let s = p.half_shift();
    let n = p.n as f64;
    let mut acc = log_d0_unchecked(p.v + p.w * n - s * n, p.w, p.t, p.tau, opts)?;
    for k in 0..p.n {
        let zk = p.v + p.w * n + s * (1 - p.n + 2 * k) as f64;
        let b = log_b0_unchecked(zk, p.w + s, p.t, opts)?;
        acc.log += b.log;
        acc.error += b.error;
    }
    Ok(acc)
}

pub fn d_n(p: &SolutionPoint, opts: &EvalOptions) -> Result<Complex64> {
    Ok(log_d_n(p, opts)?.exp())
}

/// `B_0` at `-t`. The half-plane predicate `Im(v/(-t)) > 0` fails there by
/// construction, so only `Im(v/w) > 0`, which `F*` needs, is enforced.
pub fn log_b0_reflected(p: &SolutionPoint, opts: &EvalOptions) -> Result<LogValue> {
    if (p.v / p.w).im <= 0.0 {
        return Err(QrhError::precondition("Im(v/w) > 0"));
    }
    log_b0_unchecked(p.v, p.w, -p.t, opts)
}

/// `D_0` at `-t`, read with `tτ` held fixed: `G*(v|w-tτ/2,w+tτ/2,t)`.
/// The right side of the reflection is invariant under `q^{1/2} -> q^{-1/2}`,
/// and this is the reading under which the `G*` predicates still hold.
pub fn log_d0_reflected(p: &SolutionPoint, opts: &EvalOptions) -> Result<LogValue> {
    let base = p.with_n(0);
    let preds: Vec<_> = d_predicates(&base)
        .into_iter()
        .filter(|q| q.kind != crate::rhsolver::point::PredicateKind::THalfPlane)
        .collect();
    require(&preds)?;
    let om = d0_periods(p.w, p.t, p.tau).with_w2(p.t);
    log_g_star(p.v, &om, opts)
}

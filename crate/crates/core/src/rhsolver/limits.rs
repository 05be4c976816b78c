//! Small- and large-`t` behaviour of `B_n`, `D_n` and the admissible `τ`
//! region.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{QrhError, Result};
use crate::lattice::RayGeometry;
use crate::residual::Residual;
use crate::rhsolver::point::{b_predicates, d_predicates, Predicate, SolutionPoint};
use crate::rhsolver::solution::{log_b_n, log_d_n};
use crate::special::asymptotics::linear_slope;
use crate::special::fg::{EvalOptions, LogValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SolutionKind {
    B,
    D,
}

impl SolutionKind {
    pub fn label(&self) -> &'static str {
        match self {
            Self::B => "B",
            Self::D => "D",
        }
    }

    pub fn log_eval(&self, p: &SolutionPoint, opts: &EvalOptions) -> Result<LogValue> {
        match self {
            Self::B => log_b_n(p, opts),
            Self::D => log_d_n(p, opts),
        }
    }

    pub fn predicates(&self, p: &SolutionPoint) -> Vec<Predicate> {
        match self {
            Self::B => b_predicates(p),
            Self::D => d_predicates(p),
        }
    }
}

/// Richardson table for samples at `h_0·ratio^j`, assuming an expansion
/// in integer powers of `h`. Returns the extrapolated value and the
/// difference between the last two diagonal entries.
pub fn richardson(values: &[Complex64], ratio: f64) -> (Complex64, f64) {
    let n = values.len();
    let mut table = values.to_vec();
    let mut prev_diag = table[n - 1];
    let mut diag = table[n - 1];
    for level in 1..n {
        let f = ratio.powi(-(level as i32));
        for j in 0..n - level {
            table[j] = (f * table[j + 1] - table[j]) / (f - 1.0);
        }
        prev_diag = diag;
        diag = table[0];
    }
    (diag, (diag - prev_diag).norm())
}

fn check_sweep_region(p: &SolutionPoint, t: Complex64) -> Result<()> {
    let geo = RayGeometry::new(p.v, p.w)?;
    if !geo.in_v_region(p.n, t) {
        return Err(QrhError::Region {
            predicate: format!("sweep point t = {t:.6} in V({}) = H_ℓ(n-1) ∪ H_ℓn", p.n),
        });
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitReport {
    pub kind: SolutionKind,
    pub n: i64,
    pub ts: Vec<Complex64>,
    pub values: Vec<Complex64>,
    pub extrapolated: Complex64,
    pub extrapolation_error: f64,
}

impl LimitReport {
    pub fn residual(&self, tol: f64) -> Residual {
        Residual::compare_abs(
            format!("{}_{} -> 1 as t -> 0", self.kind.label(), self.n),
            self.extrapolated,
            Complex64::new(1.0, 0.0),
            tol,
        )
        .with_detail(format!(
            "Richardson over {} points, |t| from {:.3e} to {:.3e}, table error {:.2e}",
            self.ts.len(),
            self.ts[0].norm(),
            self.ts[self.ts.len() - 1].norm(),
            self.extrapolation_error
        ))
    }
}

/// Samples `R_n(t_0·ratio^j)`, `j < points`, along the ray of `p.t` and
/// extrapolates to `t = 0`.
pub fn qrh_limit(kind: SolutionKind, p: &SolutionPoint, ratio: f64, points: usize, opts: &EvalOptions) -> Result<LimitReport> {
    if !(0.0 < ratio && ratio < 1.0) || points < 2 {
        return Err(QrhError::InvalidArgument("0 < ratio < 1 and at least two points".into()));
    }
    let mut ts = Vec::with_capacity(points);
    let mut values = Vec::with_capacity(points);
    for j in 0..points {
        let t = p.t * ratio.powi(j as i32);
        check_sweep_region(p, t)?;
        ts.push(t);
        values.push(kind.log_eval(&p.with_t(t), opts)?.exp());
    }
    let (extrapolated, extrapolation_error) = richardson(&values, ratio);
    Ok(LimitReport {
        kind,
        n: p.n,
        ts,
        values,
        extrapolated,
        extrapolation_error,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub kind: SolutionKind,
    pub n: i64,
    pub radii: Vec<f64>,
    pub log_abs: Vec<f64>,
    /// Slope of `log|R|` against `log|t|`.
    pub exponent: f64,
}

impl GrowthReport {
    /// Passes when the exponent is finite; the bound `|t|^{-k} < |R| < |t|^k`
    /// then holds for any `k` above `|exponent|` and large `|t|`.
    pub fn residual(&self) -> Residual {
        let finite = self.exponent.is_finite() && self.log_abs.iter().all(|v| v.is_finite());
        Residual::exact(
            format!("{}_{} polynomial growth as |t| -> ∞", self.kind.label(), self.n),
            finite,
            Some(format!(
                "exponent {:.4} over |t| in [{:.1}, {:.1}]",
                self.exponent,
                self.radii[0],
                self.radii[self.radii.len() - 1]
            )),
        )
    }
}

/// `log|R_n(r·t/|t|)|` over `radii` and its log-log slope.
pub fn qrh_growth(kind: SolutionKind, p: &SolutionPoint, radii: &[f64], opts: &EvalOptions) -> Result<GrowthReport> {
    if radii.len() < 2 {
        return Err(QrhError::InvalidArgument("at least two radii".into()));
    }
    let dir = p.t / p.t.norm();
    let mut log_abs = Vec::with_capacity(radii.len());
    for &r in radii {
        let t = dir * r;
        check_sweep_region(p, t)?;
        log_abs.push(kind.log_eval(&p.with_t(t), opts)?.log.re);
    }
    let lr: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
    let exponent = linear_slope(&lr, &log_abs);
    Ok(GrowthReport {
        kind,
        n: p.n,
        radii: radii.to_vec(),
        log_abs,
        exponent,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TauSample {
    pub tau: Complex64,
    pub admissible: bool,
    pub failed: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TauRegion {
    pub n: i64,
    pub samples: Vec<TauSample>,
    pub admissible_count: usize,
}

/// Evaluates the `D_n` and `B_n` checklists on each `τ` of the grid.
pub fn region_neighborhood_tau(p: &SolutionPoint, grid: &[Complex64]) -> TauRegion {
    let samples: Vec<TauSample> = grid
        .iter()
        .map(|&tau| {
            let q = p.with_tau(tau);
            let failed: Vec<String> = b_predicates(&q)
                .into_iter()
                .chain(d_predicates(&q))
                .filter(|x| !x.holds)
                .map(|x| format!("{} ({})", x.name, x.kind.describe()))
                .collect();
            TauSample {
                tau,
                admissible: failed.is_empty(),
                failed,
            }
        })
        .collect();
    let admissible_count = samples.iter().filter(|s| s.admissible).count();
    TauRegion {
        n: p.n,
        samples,
        admissible_count,
    }
}

/// `τ = a + bi` for `a` in `{-0.2, -0.1, 0, 0.1, 0.2}` and `b` in
/// `{1e-3, 1e-2, 0.05, 0.15, 0.5, 1, 3}`.
pub fn default_tau_grid() -> Vec<Complex64> {
    let mut g = Vec::new();
    for b in [1e-3, 1e-2, 0.05, 0.15, 0.5, 1.0, 3.0] {
        for a in [-0.2, -0.1, 0.0, 0.1, 0.2] {
            g.push(Complex64::new(a, b));
        }
    }
    g
}

/// `D_n` along `τ_j -> 0`, for comparison with the unrefined solution.
/// Nothing is asserted about the limit.
pub fn d_tau_sweep(p: &SolutionPoint, taus: &[Complex64], opts: &EvalOptions) -> Vec<(Complex64, Result<Complex64>)> {
    taus.iter()
        .map(|&tau| (tau, log_d_n(&p.with_tau(tau), opts).map(|l| l.exp())))
        .collect()
}

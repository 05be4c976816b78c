//! Asymptotic expansions of `log F` and `log G` as `ω2 → 0` and `ω2 → ∞`,
//! with empirical order and coefficient checks.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{QrhError, Result};
use crate::residual::Residual;
use crate::special::bernoulli::{bernoulli_numbers, bernoulli_poly, multiple_bernoulli, rat_to_f64, zeta2, zeta3};
use crate::special::fg::{log_f, log_f_contour, log_g, log_g_contour, wrap_log, EvalOptions, OmegaTriple};
use crate::special::moments::{f_moment, g_moment};

/// Which function an expansion describes, with its fixed periods.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Family {
    /// `F(z|ω̄1,ω2)`.
    F { wbar: Complex64 },
    /// `G(z|ω1,ω̃1,ω2)`.
    G { w1: Complex64, wt1: Complex64 },
}

impl Family {
    pub fn label(&self) -> &'static str {
        match self {
            Family::F { .. } => "F",
            Family::G { .. } => "G",
        }
    }

    fn moment(&self, m: i32, z: Complex64, opts: &EvalOptions) -> Result<(Complex64, f64)> {
        let v = match *self {
            Family::F { wbar } => f_moment(m, z, wbar, opts)?,
            Family::G { w1, wt1 } => g_moment(m, z, w1, wt1, opts)?,
        };
        Ok((v.value(), v.error()))
    }

    fn log_value(&self, z: Complex64, w2: Complex64, opts: &EvalOptions) -> Result<(Complex64, f64)> {
        let v = match *self {
            Family::F { wbar } => log_f(z, wbar, w2, opts)?,
            Family::G { w1, wt1 } => log_g(z, &OmegaTriple::new(w1, wt1, w2), opts)?,
        };
        Ok((v.log, v.error))
    }

    /// Contour values only, so that a sweep stays on one branch.
    fn log_contour(&self, z: Complex64, w2: Complex64, opts: &EvalOptions) -> Result<(Complex64, f64)> {
        let v = match *self {
            Family::F { wbar } => log_f_contour(z, wbar, w2, &opts.contour)?,
            Family::G { w1, wt1 } => log_g_contour(z, &OmegaTriple::new(w1, wt1, w2), &opts.contour)?,
        };
        Ok((v.log, v.error))
    }
}

fn check_sector(z: Complex64, w2: Complex64) -> Result<()> {
    if (z / w2).im <= 0.0 {
        return Err(QrhError::Region {
            predicate: format!("ω2 = {w2:.6} in H = {{a : Im(z/a) > 0}}"),
        });
    }
    Ok(())
}

/// Coefficients `B_k/k!` for `k = 0..=kmax`.
fn bernoulli_weights(kmax: usize) -> Vec<f64> {
    let b = bernoulli_numbers(kmax);
    let mut fact = 1.0;
    b.iter()
        .enumerate()
        .map(|(k, bk)| {
            if k > 0 {
                fact *= k as f64;
            }
            rat_to_f64(bk) / fact
        })
        .collect()
}

/// Moments `m_{k-2}` for `k = 0..=kmax`.
fn moments(family: &Family, z: Complex64, kmax: usize, opts: &EvalOptions) -> Result<Vec<(Complex64, f64)>> {
    (0..=kmax).map(|k| family.moment(k as i32 - 2, z, opts)).collect()
}

fn partial_from(weights: &[f64], mom: &[(Complex64, f64)], w2: Complex64) -> (Complex64, f64) {
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for (k, (w, (m, e))) in weights.iter().zip(mom).enumerate() {
        let p = w2.powi(k as i32 - 1) * *w;
        value += p * m;
        err += p.norm() * e;
    }
    (value, err)
}

/// `S_K = Σ_{k=0}^{K} B_k ω2^{k-1}/k! · m_{k-2}(z)` with `m` the `f` or `g`
/// moments, and its quadrature error.
pub fn partial_sum(family: &Family, z: Complex64, w2: Complex64, k: usize, opts: &EvalOptions) -> Result<(Complex64, f64)> {
    check_sector(z, w2)?;
    let mom = moments(family, z, k, opts)?;
    Ok(partial_from(&bernoulli_weights(k), &mom, w2))
}

/// Leading power of `log - S_K`: one less than the first index above `K`
/// with `B_k != 0`.
pub fn predicted_order(k: usize) -> usize {
    let b = bernoulli_numbers(k + 3);
    (k + 1..=k + 3).find(|&j| rat_to_f64(&b[j]) != 0.0).expect("B_{2j} never vanishes") - 1
}

/// Empirical remainder order on a sweep `ω2 = r·dir`.
#[derive(Debug, Clone, Serialize)]
pub struct OrderReport {
    pub family: &'static str,
    pub k: usize,
    pub radii: Vec<f64>,
    pub remainders: Vec<f64>,
    pub slope: f64,
    pub nearest: i64,
    pub predicted: usize,
    pub pass: bool,
}

impl OrderReport {
    pub fn residual(&self, tol: f64) -> Residual {
        let name = format!("{} remainder order K={}", self.family, self.k);
        let r = Residual::compare_abs(
            name,
            Complex64::new(self.slope, 0.0),
            Complex64::new(self.predicted as f64, 0.0),
            tol,
        );
        let pass = r.pass && self.pass;
        Residual { pass, ..r }.with_detail(format!(
            "slope {:.4}, nearest integer {}, predicted {}, K {}",
            self.slope, self.nearest, self.predicted, self.k
        ))
    }
}

/// Least-squares slope of `y` against `x`.
pub fn linear_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    linear_slope(&lx, &ly)
}

/// Sweeps `ω2 = r·dir` over `radii` and fits the order of `|log - S_K|`.
/// Passes when the slope is within `tol` of an integer that is `>= K` and
/// equals [`predicted_order`].
pub fn remainder_order(
    family: &Family,
    z: Complex64,
    dir: Complex64,
    k: usize,
    radii: &[f64],
    tol: f64,
    opts: &EvalOptions,
) -> Result<OrderReport> {
    if radii.len() < 2 {
        return Err(QrhError::InvalidArgument("at least two radii".into()));
    }
    let dir = dir / dir.norm();
    check_sector(z, dir)?;
    let mom = moments(family, z, k, opts)?;
    let weights = bernoulli_weights(k);
    let mut remainders = Vec::with_capacity(radii.len());
    for &r in radii {
        let w2 = dir * r;
        let (log, _) = family.log_value(z, w2, opts)?;
        let (s, _) = partial_from(&weights, &mom, w2);
        remainders.push(wrap_log(log - s).norm());
    }
    let slope = loglog_slope(radii, &remainders);
    let nearest = slope.round() as i64;
    let predicted = predicted_order(k);
    let pass = (slope - nearest as f64).abs() <= tol && nearest >= k as i64 && nearest == predicted as i64;
    Ok(OrderReport {
        family: family.label(),
        k,
        radii: radii.to_vec(),
        remainders,
        slope,
        nearest,
        predicted,
        pass,
    })
}

/// One fitted coefficient of the large-`ω2` expansion against its closed form.
#[derive(Debug, Clone, Serialize)]
pub struct FittedCoefficient {
    pub term: &'static str,
    pub fitted: Complex64,
    pub expected: Complex64,
}

/// Closed-form growth coefficients: for `F` the `ω2` and `log ω2` terms, for
/// `G` the `ω2²`, `ω2` and `log ω2` terms.
pub fn infinity_coefficients(family: &Family, z: Complex64) -> Result<Vec<(&'static str, Complex64)>> {
    match *family {
        Family::F { wbar } => Ok(vec![
            ("ω2", Complex64::new(0.0, -PI / 12.0) / wbar),
            ("log ω2", bernoulli_poly(1, z / wbar)),
        ]),
        Family::G { w1, wt1 } => {
            let x = z + 0.5 * (w1 + wt1);
            let pair = [w1, wt1];
            let b02 = multiple_bernoulli(0, x, &pair)?;
            let b12 = multiple_bernoulli(1, x, &pair)?;
            let b22 = multiple_bernoulli(2, x, &pair)?;
            Ok(vec![
                ("ω2²", b02 * zeta3() / (4.0 * PI * PI)),
                ("ω2", -b12 * zeta2() / Complex64::new(0.0, 2.0 * PI)),
                ("log ω2", -b22 / 2.0),
            ])
        }
    }
}

/// Fits `log F` or `log G` on `ω2 = r·dir` to the growth terms plus
/// `1, ω2^{-1}, ω2^{-2}, ω2^{-3}` by complex least squares.
pub fn fit_infinity(family: &Family, z: Complex64, dir: Complex64, radii: &[f64], opts: &EvalOptions) -> Result<Vec<FittedCoefficient>> {
    let dir = dir / dir.norm();
    check_sector(z, dir)?;
    match *family {
        Family::F { wbar } => {
            if (z / wbar).im <= 0.0 {
                return Err(QrhError::precondition("Im(z/ω̄1) > 0"));
            }
        }
        Family::G { w1, wt1 } => {
            if (z / w1).im <= 0.0 {
                return Err(QrhError::precondition("Im(z/ω1) > 0"));
            }
            if (z / wt1).im <= 0.0 {
                return Err(QrhError::precondition("Im(z/ω̃1) > 0"));
            }
        }
    }
    let growth: &[&dyn Fn(Complex64) -> Complex64] = match family {
        Family::F { .. } => &[&|b| b, &|b| b.ln()],
        Family::G { .. } => &[&|b| b * b, &|b| b, &|b| b.ln()],
    };
    let cols = growth.len() + 4;
    if radii.len() < cols {
        return Err(QrhError::InvalidArgument(format!("at least {cols} radii")));
    }
    let mut a = DMatrix::<Complex64>::zeros(radii.len(), cols);
    let mut y = DVector::<Complex64>::zeros(radii.len());
    for (i, &r) in radii.iter().enumerate() {
        let b = dir * r;
        for (j, g) in growth.iter().enumerate() {
            a[(i, j)] = g(b);
        }
        for p in 0..4 {
            a[(i, growth.len() + p)] = b.powi(-(p as i32));
        }
        y[i] = family.log_contour(z, b, opts)?.0;
    }
    let scale: Vec<f64> = (0..cols).map(|j| a.column(j).norm()).collect();
    for (j, s) in scale.iter().enumerate() {
        a.column_mut(j).unscale_mut(*s);
    }
    let sol = a
        .svd(true, true)
        .solve(&y, 1e-15)
        .map_err(|e| QrhError::Consistency(format!("least squares: {e}")))?;
    let expected = infinity_coefficients(family, z)?;
    Ok(expected
        .into_iter()
        .enumerate()
        .map(|(j, (term, e))| FittedCoefficient {
            term,
            fitted: sol[j] / scale[j],
            expected: e,
        })
        .collect())
}

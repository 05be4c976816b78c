//! Named identity checks with absolute and relative residuals.

use num_complex::Complex64;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// Floating-point comparison against a tolerance.
    Numeric,
    /// Exact rational comparison; residual is 0 or the check fails.
    Exact,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Residual {
    pub name: String,
    pub kind: CheckKind,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_c")]
    pub lhs: Option<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_c")]
    pub rhs: Option<Complex64>,
    pub abs: f64,
    pub rel: f64,
    pub tol: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn ser_opt_c<S: serde::Serializer>(v: &Option<Complex64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(c) => [c.re, c.im].serialize(s),
        None => s.serialize_none(),
    }
}

impl Residual {
    /// Compares `lhs` with `rhs`; passes when the relative residual
    /// `|lhs - rhs| / max(|rhs|, tiny)` is below `tol`.
    pub fn compare(name: impl Into<String>, lhs: Complex64, rhs: Complex64, tol: f64) -> Self {
        let abs = (lhs - rhs).norm();
        let rel = abs / rhs.norm().max(f64::MIN_POSITIVE);
        Self {
            name: name.into(),
            kind: CheckKind::Numeric,
            lhs: Some(lhs),
            rhs: Some(rhs),
            abs,
            rel,
            tol,
            pass: rel.is_finite() && rel < tol,
            detail: None,
        }
    }

    /// Passes when the absolute residual is below `tol`, for quantities
    /// expected to vanish or to equal 1.
    pub fn compare_abs(name: impl Into<String>, lhs: Complex64, rhs: Complex64, tol: f64) -> Self {
        let mut r = Self::compare(name, lhs, rhs, tol);
        r.pass = r.abs.is_finite() && r.abs < tol;
        r
    }

    pub fn exact(name: impl Into<String>, equal: bool, detail: Option<String>) -> Self {
        Self {
            name: name.into(),
            kind: CheckKind::Exact,
            lhs: None,
            rhs: None,
            abs: if equal { 0.0 } else { 1.0 },
            rel: if equal { 0.0 } else { 1.0 },
            tol: 0.0,
            pass: equal,
            detail,
        }
    }

    /// A numeric check that could not be evaluated.
    pub fn failed(name: impl Into<String>, tol: f64, why: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            kind: CheckKind::Numeric,
            lhs: None,
            rhs: None,
            abs: f64::INFINITY,
            rel: f64::INFINITY,
            tol,
            pass: false,
            detail: Some(why.into()),
        }
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }
}

//! Solution points and the validity predicates of `B_n` and `D_n`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QrhError, Result};

/// A point `(v, w, t, τ)` together with the sector index `n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionPoint {
    pub v: Complex64,
    pub w: Complex64,
    pub t: Complex64,
    pub tau: Complex64,
    pub n: i64,
}

impl Default for SolutionPoint {
    /// `v = 0.3+0.4i, w = 1, t = -0.2+0.7i, τ = 0.15i, n = 0`.
    fn default() -> Self {
        Self {
            v: Complex64::new(0.3, 0.4),
            w: Complex64::new(1.0, 0.0),
            t: Complex64::new(-0.2, 0.7),
            tau: Complex64::new(0.0, 0.15),
            n: 0,
        }
    }
}

impl SolutionPoint {
    pub fn with_n(&self, n: i64) -> Self {
        Self { n, ..*self }
    }

    pub fn with_t(&self, t: Complex64) -> Self {
        Self { t, ..*self }
    }

    pub fn with_tau(&self, tau: Complex64) -> Self {
        Self { tau, ..*self }
    }

    /// `tτ/2`.
    pub fn half_shift(&self) -> Complex64 {
        self.t * self.tau / 2.0
    }

    /// `q^{1/2} = e^{πiτ}`.
    pub fn q_half(&self) -> Complex64 {
        (Complex64::new(0.0, PI) * self.tau).exp()
    }

    /// `x = e^{-2πiv/t}`.
    pub fn x(&self) -> Complex64 {
        (Complex64::new(0.0, -2.0 * PI) * self.v / self.t).exp()
    }

    /// `y = e^{-2πiw/t}`.
    pub fn y(&self) -> Complex64 {
        (Complex64::new(0.0, -2.0 * PI) * self.w / self.t).exp()
    }
}

/// What a predicate constrains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PredicateKind {
    /// A condition on `(v, w)` alone.
    StabilityPoint,
    /// Membership of `t` in the half-plane the formula is posed on.
    THalfPlane,
    /// A condition that holds for small enough `τ` in the upper half-plane.
    TauNeighborhood,
}

impl PredicateKind {
    pub fn describe(&self) -> &'static str {
        match self {
            Self::StabilityPoint => "outside M_+",
            Self::THalfPlane => "outside t half-plane",
            Self::TauNeighborhood => "outside τ-neighborhood",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Predicate {
    pub name: String,
    pub kind: PredicateKind,
    /// The imaginary part that must be positive.
    pub value: f64,
    pub holds: bool,
}

impl Predicate {
    fn im_positive(name: impl Into<String>, kind: PredicateKind, q: Complex64) -> Self {
        Self {
            name: name.into(),
            kind,
            value: q.im,
            holds: q.im > 0.0,
        }
    }
}

/// Predicates for `B_n`: `Im((v+nw)/w) > 0` and `Im((v+nw)/(-t)) > 0`.
pub fn b_predicates(p: &SolutionPoint) -> Vec<Predicate> {
    let z = p.v + p.w * p.n as f64;
    vec![
        Predicate::im_positive("Im((v+nw)/w) > 0", PredicateKind::StabilityPoint, z / p.w),
        Predicate::im_positive("Im((v+nw)/(-t)) > 0", PredicateKind::THalfPlane, z / -p.t),
    ]
}

/// Predicates for `D_n`: those of the `D_0` factor at `v+nw-ntτ/2` and of
/// each `B_0` factor at `v+nw+(1-n+2k)tτ/2` with period `w+tτ/2`.
pub fn d_predicates(p: &SolutionPoint) -> Vec<Predicate> {
    use PredicateKind::*;
    let s = p.half_shift();
    let n = p.n as f64;
    let z = p.v + p.w * n - s * n;
    let (w1, wt1) = (p.w - s, p.w + s);
    let mut out = vec![
        Predicate::im_positive("Im((v+nw-ntτ/2)/(w-tτ/2)) > 0", TauNeighborhood, z / w1),
        Predicate::im_positive("Im((v+nw-ntτ/2)/(w+tτ/2)) > 0", TauNeighborhood, z / wt1),
        Predicate::im_positive("Im((v+nw-ntτ/2)/(-t)) > 0", THalfPlane, z / -p.t),
        Predicate::im_positive("Im((-tτ/2)/(w-tτ/2)) > 0", TauNeighborhood, -s / w1),
        Predicate::im_positive("Im((-tτ/2)/(w+tτ/2)) > 0", TauNeighborhood, -s / wt1),
        Predicate::im_positive("Im(τ/2) > 0", TauNeighborhood, p.tau / 2.0),
    ];
    for k in 0..p.n.max(0) {
        let zk = p.v + p.w * n + s * (1 - p.n + 2 * k) as f64;
        out.push(Predicate::im_positive(
            format!("Im((v+nw+(1-n+2k)tτ/2)/(w+tτ/2)) > 0 at k={k}"),
            TauNeighborhood,
            zk / wt1,
        ));
        out.push(Predicate::im_positive(
            format!("Im((v+nw+(1-n+2k)tτ/2)/(-t)) > 0 at k={k}"),
            THalfPlane,
            zk / -p.t,
        ));
    }
    out
}

/// Turns failed predicates into an error naming each of them.
pub fn require(preds: &[Predicate]) -> Result<()> {
    let failed: Vec<String> = preds
        .iter()
        .filter(|p| !p.holds)
        .map(|p| format!("{} ({})", p.name, p.kind.describe()))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(QrhError::precondition(failed.join("; ")))
    }
}

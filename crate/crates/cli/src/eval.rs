//! Evaluation targets.

use clap::ValueEnum;
use conifold_qrh::rhsolver::cs::{refined_cs_partition, CsParameters};
use conifold_qrh::rhsolver::{b_predicates, d_predicates, log_b_n, log_d_n, Predicate, SolutionPoint};
use conifold_qrh::special::fg::{log_f, log_g, EvalOptions, LogValue, OmegaTriple};
use conifold_qrh::special::moments::{f_moment, g_moment};
use conifold_qrh::special::products::log_qdilog;
use conifold_qrh::special::starred::{g_star_predicates, log_f_star, log_g_star};
use conifold_qrh::special::{bernoulli_poly, multiple_bernoulli};
use conifold_qrh::{QrhError, Result};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::params::{complex, int, Kind, ParamSpec, Params};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    #[value(name = "qdilog")]
    Qdilog,
    #[value(name = "F")]
    F,
    #[value(name = "G")]
    G,
    #[value(name = "Fstar")]
    Fstar,
    #[value(name = "Gstar")]
    Gstar,
    #[value(name = "Bn")]
    Bn,
    #[value(name = "Dn")]
    Dn,
    #[value(name = "Z_cs")]
    ZCs,
    #[value(name = "bernoulli")]
    Bernoulli,
    #[value(name = "multiple_bernoulli")]
    MultipleBernoulli,
    #[value(name = "moments")]
    Moments,
}

// ω1 = w - tτ/2, ω̃1 = w + tτ/2, ω2 = -t at the default solution point
const F_PARAMS: &[ParamSpec] = &[complex("z", "0.3+0.4i"), complex("wbar", "1"), complex("w2", "0.2-0.7i")];
const G_PARAMS: &[ParamSpec] = &[
    complex("z", "0.3+0.4i"),
    complex("w1", "1.0525+0.015i"),
    complex("wt1", "0.9475-0.015i"),
    complex("w2", "0.2-0.7i"),
];
const SOLUTION_PARAMS: &[ParamSpec] = &[
    complex("v", "0.3+0.4i"),
    complex("w", "1"),
    complex("t", "-0.2+0.7i"),
    complex("tau", "0.15i"),
    int("n", "0"),
];
const FAMILIES: &[&str] = &["f", "g"];
const QDILOG_PARAMS: &[ParamSpec] = &[complex("x", "0.5"), complex("q", "0.5")];
// the image of (v, t, τ) = (0.3+0.4i, -0.2+0.7i, 0.15i)
const CS_PARAMS: &[ParamSpec] = &[
    complex("delta", "0.2-0.7i"),
    complex("mu", "-0.41509433962264153+0.5471698113207548i"),
    complex("beta", "1.11017174392239+0.033270537041800566i"),
];
const BERNOULLI_PARAMS: &[ParamSpec] = &[int("n", "2"), complex("z", "0")];
const MULTIPLE_BERNOULLI_PARAMS: &[ParamSpec] = &[
    int("n", "2"),
    int("r", "2"),
    complex("z", "0"),
    complex("w1", "1"),
    complex("w2", "1"),
    complex("w3", "1"),
];
const MOMENT_PARAMS: &[ParamSpec] = &[
    ParamSpec {
        name: "family",
        kind: Kind::Word(FAMILIES),
        default: "f",
    },
    int("m", "-2"),
    complex("z", "0.3+0.4i"),
    complex("wbar", "1"),
    complex("w1", "1.0525+0.015i"),
    complex("wt1", "0.9475-0.015i"),
];

impl Target {
    pub fn name(&self) -> &'static str {
        match self {
            Target::Qdilog => "qdilog",
            Target::F => "F",
            Target::G => "G",
            Target::Fstar => "Fstar",
            Target::Gstar => "Gstar",
            Target::Bn => "Bn",
            Target::Dn => "Dn",
            Target::ZCs => "Z_cs",
            Target::Bernoulli => "bernoulli",
            Target::MultipleBernoulli => "multiple_bernoulli",
            Target::Moments => "moments",
        }
    }

    pub fn params(&self) -> &'static [ParamSpec] {
        match self {
            Target::Qdilog => QDILOG_PARAMS,
            Target::F | Target::Fstar => F_PARAMS,
            Target::G | Target::Gstar => G_PARAMS,
            Target::Bn | Target::Dn => SOLUTION_PARAMS,
            Target::ZCs => CS_PARAMS,
            Target::Bernoulli => BERNOULLI_PARAMS,
            Target::MultipleBernoulli => MULTIPLE_BERNOULLI_PARAMS,
            Target::Moments => MOMENT_PARAMS,
        }
    }
}

pub fn solution_point(p: &Params) -> SolutionPoint {
    SolutionPoint {
        v: p.c("v"),
        w: p.c("w"),
        t: p.c("t"),
        tau: p.c("tau"),
        n: p.int("n"),
    }
}

fn g_triple(p: &Params) -> OmegaTriple {
    OmegaTriple::new(p.c("w1"), p.c("wt1"), p.c("w2"))
}

fn pred_json(ps: &[Predicate]) -> Vec<Value> {
    ps.iter()
        .map(|q| json!({ "name": q.name, "kind": q.kind, "value": q.value, "holds": q.holds }))
        .collect()
}

fn im_pred(name: &str, q: Complex64) -> Value {
    json!({ "name": name, "value": q.im, "holds": q.im > 0.0 })
}

/// The validity predicates of the target at these parameters, evaluated
/// without computing the function.
pub fn predicates(target: Target, p: &Params) -> Vec<Value> {
    match target {
        Target::Bn => pred_json(&b_predicates(&solution_point(p))),
        Target::Dn => pred_json(&d_predicates(&solution_point(p))),
        Target::Fstar => vec![im_pred("Im(z/ω̄1) > 0", p.c("z") / p.c("wbar"))],
        Target::Gstar => {
            let om = g_triple(p);
            g_star_predicates(p.c("z"), &om)
                .into_iter()
                .map(|(name, holds)| json!({ "name": name, "holds": holds }))
                .collect()
        }
        Target::ZCs => {
            let cs = cs_params(p);
            pred_json(&d_predicates(&cs.to_solution()))
        }
        _ => Vec::new(),
    }
}

fn cs_params(p: &Params) -> CsParameters {
    CsParameters {
        delta: p.c("delta"),
        mu: p.c("mu"),
        beta: p.c("beta"),
    }
}

#[derive(Clone, Debug)]
pub struct Evaluation {
    pub value: Complex64,
    pub log: Option<Complex64>,
    pub error: f64,
    pub route: Option<String>,
}

impl Evaluation {
    fn plain(value: Complex64, error: f64) -> Self {
        Self {
            value,
            log: None,
            error,
            route: None,
        }
    }

    fn from_log(l: LogValue) -> Self {
        Self {
            value: l.exp(),
            log: Some(l.log),
            error: l.error * l.exp().norm(),
            route: Some(format!("{:?}", l.route).to_lowercase()),
        }
    }
}

pub fn evaluate(target: Target, p: &Params, opts: &EvalOptions) -> Result<Evaluation> {
    match target {
        Target::Qdilog => {
            let l = log_qdilog(p.c("x"), p.c("q"), opts.product_tol)?;
            let mut e = Evaluation::plain(l.exp(), opts.product_tol * l.exp().norm());
            e.log = Some(l);
            Ok(e)
        }
        Target::F => Ok(Evaluation::from_log(log_f(p.c("z"), p.c("wbar"), p.c("w2"), opts)?)),
        Target::G => Ok(Evaluation::from_log(log_g(p.c("z"), &g_triple(p), opts)?)),
        Target::Fstar => Ok(Evaluation::from_log(log_f_star(p.c("z"), p.c("wbar"), p.c("w2"), opts)?)),
        Target::Gstar => Ok(Evaluation::from_log(log_g_star(p.c("z"), &g_triple(p), opts)?)),
        Target::Bn => Ok(Evaluation::from_log(log_b_n(&solution_point(p), opts)?)),
        Target::Dn => Ok(Evaluation::from_log(log_d_n(&solution_point(p), opts)?)),
        Target::ZCs => {
            let z = refined_cs_partition(&cs_params(p), opts)?;
            Ok(Evaluation::plain(z, opts.contour.quad.rel_tol * z.norm()))
        }
        Target::Bernoulli => {
            let n = usize::try_from(p.int("n")).map_err(|_| QrhError::precondition("n >= 0"))?;
            Ok(Evaluation::plain(bernoulli_poly(n, p.c("z")), 0.0))
        }
        Target::MultipleBernoulli => {
            let n = usize::try_from(p.int("n")).map_err(|_| QrhError::precondition("n >= 0"))?;
            let r = p.int("r");
            if !(1..=3).contains(&r) {
                return Err(QrhError::precondition("1 <= r <= 3"));
            }
            let ws: Vec<Complex64> = ["w1", "w2", "w3"][..r as usize].iter().map(|k| p.c(k)).collect();
            Ok(Evaluation::plain(multiple_bernoulli(n, p.c("z"), &ws)?, 0.0))
        }
        Target::Moments => {
            let m = i32::try_from(p.int("m")).map_err(|_| QrhError::precondition("m fits in 32 bits"))?;
            let v = if p.word("family") == "f" {
                f_moment(m, p.c("z"), p.c("wbar"), opts)?
            } else {
                g_moment(m, p.c("z"), p.c("w1"), p.c("wt1"), opts)?
            };
            Ok(Evaluation::plain(v.value(), v.error()))
        }
    }
}

/// `|B_n - 1|` style distance used by sweeps of the solution functions.
pub fn distance_from_one(target: Target, v: Complex64) -> Option<f64> {
    matches!(target, Target::Bn | Target::Dn).then(|| (v - 1.0).norm())
}

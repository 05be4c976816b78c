//! Named verification suites. Each suite returns its checks as
//! [`Residual`] records in a fixed order, so reports are reproducible.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use serde::Serialize;

use crate::error::{QrhError, Result};
use crate::lattice::{conifold_bps, ChargeVector};
use crate::qtorus::{bps_automorphism, qdilog_series, sector_automorphism_delta, RaySeries, Truncation};
use crate::laurent::{rat, rat_int, LaurentPoly};
use crate::residual::{CheckKind, Residual};
use crate::rhsolver::checks::{b0_reflection, b_wallcrossing, d0_reflection, d_wallcrossing, inversion, symmetry_extension, telescoping};
use crate::rhsolver::cs::{cs_match, default_cs_points, log_sin3, refined_cs_partition, CsParameters};
use crate::rhsolver::limits::{qrh_growth, qrh_limit, region_neighborhood_tau, SolutionKind};
use crate::rhsolver::point::{b_predicates, d_predicates, SolutionPoint};
use crate::rhsolver::solution::d0_periods;
use crate::special::asymptotics::{fit_infinity, remainder_order, Family};
use crate::special::bernoulli::{bernoulli_numbers, bernoulli_poly, multiple_bernoulli, rat_to_f64};
use crate::special::fg::{log_f_contour, EvalOptions, OmegaTriple};
use crate::special::identities::{diff_f, diff_g1, dif_f_w2, dif_f_wbar, dif_g1, dif_g2, ff1, ff2, gg1, gg2};
use crate::special::moments::residue_lemma_check;
use crate::special::products::{f_product, qdilog_numeric};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Algebra,
    Dilog,
    Bernoulli,
    Difference,
    Reflection,
    Asymptotics,
    Wallcrossing,
    QrhLimits,
    CsMatch,
    All,
}

impl Suite {
    /// Every concrete suite, in report order.
    pub const EACH: [Suite; 9] = [
        Suite::Algebra,
        Suite::Dilog,
        Suite::Bernoulli,
        Suite::Difference,
        Suite::Reflection,
        Suite::Asymptotics,
        Suite::Wallcrossing,
        Suite::QrhLimits,
        Suite::CsMatch,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Dilog => "dilog",
            Suite::Bernoulli => "bernoulli",
            Suite::Difference => "difference",
            Suite::Reflection => "reflection",
            Suite::Asymptotics => "asymptotics",
            Suite::Wallcrossing => "wallcrossing",
            Suite::QrhLimits => "qrh-limits",
            Suite::CsMatch => "cs-match",
            Suite::All => "all",
        }
    }

    /// The concrete suites this name stands for.
    pub fn expand(&self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::EACH.to_vec(),
            s => vec![*s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = QrhError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain([Suite::All].iter())
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| QrhError::InvalidArgument(format!("unknown suite '{s}'")))
    }
}

/// Tolerances by kind of check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    /// Relative residual of identities and cross-representation checks.
    pub identity: f64,
    /// Absolute distance of an extrapolated `t -> 0` limit from 1.
    pub limit: f64,
    /// Distance of a fitted remainder slope from the nearest integer.
    pub order: f64,
    /// Relative error of fitted large-`ω2` coefficients.
    pub fit: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            identity: 1e-8,
            limit: 1e-6,
            order: 0.2,
            fit: 1e-4,
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub point: SolutionPoint,
    pub tol: Tolerances,
    /// Ray order `N` and `q`-cutoff `K` of the exact algebra suite.
    pub truncation: Truncation,
    /// Bidegree of the sector composition.
    pub sector_order: usize,
    /// Largest `n` in the wall-crossing checks; limits use `n <= 2`.
    pub n_max: i64,
    /// Points per identity in the difference and reflection grids.
    pub grid_points: usize,
    /// Points in the contour/product comparison.
    pub cross_points: usize,
    pub seed: u64,
    pub opts: EvalOptions,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            point: SolutionPoint::default(),
            tol: Tolerances::default(),
            truncation: Truncation::new(6, 24),
            sector_order: 2,
            n_max: 3,
            grid_points: 10,
            cross_points: 20,
            seed: 7,
            opts: EvalOptions::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub pass: bool,
    pub checks: Vec<Residual>,
    /// Largest relative residual among numeric checks.
    pub max_rel: f64,
}

impl SuiteReport {
    fn new(suite: Suite, checks: Vec<Residual>) -> Self {
        let pass = !checks.is_empty() && checks.iter().all(|c| c.pass);
        let max_rel = checks
            .iter()
            .filter(|c| c.kind == CheckKind::Numeric)
            .map(|c| c.rel)
            .fold(0.0, f64::max);
        Self {
            suite,
            pass,
            checks,
            max_rel,
        }
    }
}

/// A check that errored becomes a failed record naming the error.
fn settle(name: impl Into<String>, tol: f64, r: Result<Residual>) -> Residual {
    match r {
        Ok(r) => r,
        Err(e) => Residual::failed(name, tol, e.to_string()),
    }
}

fn settle_all(name: impl Into<String>, tol: f64, r: Result<Vec<Residual>>) -> Vec<Residual> {
    match r {
        Ok(v) => v,
        Err(e) => vec![Residual::failed(name, tol, e.to_string())],
    }
}

/// Runs one concrete suite.
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> SuiteReport {
    let checks = match suite {
        Suite::Algebra => algebra(cfg),
        Suite::Dilog => dilog(cfg),
        Suite::Bernoulli => bernoulli(cfg),
        Suite::Difference => difference(cfg),
        Suite::Reflection => reflection(cfg),
        Suite::Asymptotics => asymptotics(cfg),
        Suite::Wallcrossing => wallcrossing(cfg),
        Suite::QrhLimits => qrh_limits(cfg),
        Suite::CsMatch => cs(cfg),
        Suite::All => unreachable!("expanded by run"),
    };
    SuiteReport::new(suite, checks)
}

/// Runs `suite` (expanding `all`) with one thread per concrete suite and
/// returns the reports in the order of [`Suite::EACH`].
pub fn run(suite: Suite, cfg: &VerifyConfig) -> Vec<SuiteReport> {
    let suites = suite.expand();
    std::thread::scope(|s| {
        let handles: Vec<_> = suites.iter().map(|&x| s.spawn(move || run_suite(x, cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    })
}

fn algebra(cfg: &VerifyConfig) -> Vec<Residual> {
    let mut out = Vec::new();
    let tr = cfg.truncation;
    let p = cfg.point;
    let structure = match conifold_bps(p.v, p.w) {
        Ok(s) => s,
        Err(e) => return vec![Residual::failed("conifold BPS structure", 0.0, e.to_string())],
    };
    let mut rays: Vec<(String, ChargeVector)> = (0..=4).map(|n| (format!("ℓ_{n}"), ChargeVector::electric(1, n))).collect();
    rays.push(("ℓ_∞".into(), ChargeVector::DELTA));
    let gammas = [
        ("β∨", ChargeVector::BETA_DUAL),
        ("δ∨", ChargeVector::DELTA_DUAL),
        ("β", ChargeVector::BETA),
        ("δ", ChargeVector::DELTA),
    ];
    for (ray, dir) in &rays {
        for (gname, g) in gammas {
            let name = format!("S_q({ray})(y_{gname}) = closed form, N={} K={}", tr.n, tr.k);
            out.push(match bps_automorphism(&structure, *dir, g, tr) {
                Ok(r) => Residual::exact(
                    name,
                    r.matches && r.certified && r.twisted_matches,
                    Some(format!("{} terms", r.conjugated.len())),
                ),
                Err(e) => Residual::exact(name, false, Some(e.to_string())),
            });
        }
    }
    let str_ = Truncation::new(cfg.sector_order, tr.k.max(8));
    for (gname, g) in [("β∨", ChargeVector::BETA_DUAL), ("δ∨", ChargeVector::DELTA_DUAL)] {
        let name = format!("S_q(Δ)(x_{gname}) = ordered ray composition, bidegree ({0},{0})", cfg.sector_order);
        out.push(match sector_automorphism_delta(g, str_) {
            Ok(r) => Residual::exact(name, r.matches && r.certified, Some(format!("{} terms", r.composed.len()))),
            Err(e) => Residual::exact(name, false, Some(e.to_string())),
        });
    }
    out
}

fn dilog(cfg: &VerifyConfig) -> Vec<Residual> {
    let tol = cfg.tol.identity;
    let pt = cfg.opts.product_tol;
    let c = Complex64::new;
    let mut out = vec![
        settle(
            "(0;q)_∞ = 1",
            tol,
            qdilog_numeric(c(0.0, 0.0), c(0.5, 0.0), pt).map(|v| Residual::compare("(0;q)_∞ = 1", v, c(1.0, 0.0), tol)),
        ),
        settle(
            "(x;0)_∞ = 1-x",
            tol,
            qdilog_numeric(c(0.3, 0.2), c(0.0, 0.0), pt).map(|v| Residual::compare("(x;0)_∞ = 1-x", v, c(0.7, -0.2), tol)),
        ),
    ];
    let brute: Complex64 = (0..200).map(|k| c(1.0 - 0.5 * 0.5f64.powi(k), 0.0)).product();
    out.push(settle(
        "(1/2;1/2)_∞ = 200-factor product",
        tol,
        qdilog_numeric(c(0.5, 0.0), c(0.5, 0.0), pt).map(|v| Residual::compare("(1/2;1/2)_∞ = 200-factor product", v, brute, tol)),
    ));

    let tr = cfg.truncation;
    let b = ChargeVector::BETA;
    let e = qdilog_series(&LaurentPoly::one(), b, tr);
    let eq = qdilog_series(&LaurentPoly::q_half_pow(2), b, tr);
    let rhs = RaySeries::from_coeffs(b, tr.n, vec![LaurentPoly::one(), LaurentPoly::constant(rat_int(-1))]);
    let name = format!("E_q(x)·E_q(qx)^-1 = 1-x through order {}", tr.n);
    out.push(match eq.inverse().and_then(|inv| e.mul(&inv)) {
        Ok(lhs) => Residual::exact(name, lhs.agrees_with(&rhs) && lhs.window_covers(&rhs), None),
        Err(err) => Residual::exact(name, false, Some(err.to_string())),
    });

    let mut rng = StdRng::seed_from_u64(cfg.seed);
    for (i, (z, a, bb)) in cross_points(&mut rng, cfg.cross_points).into_iter().enumerate() {
        let name = format!("exp(contour log F) = product F, point {i}");
        let r = log_f_contour(z, a, bb, &cfg.opts.contour).and_then(|lc| {
            let prod = f_product(z, a, bb, pt)?;
            Ok(Residual::compare(name.clone(), lc.exp(), prod, tol)
                .with_detail(format!("z={z:.4}, ω̄1={a:.4}, ω2={bb:.4}")))
        });
        out.push(settle(name, tol, r));
    }
    out
}

/// `(z, ω̄1, ω2)` with `arg ω̄1 ∈ (0, 0.5)`, `arg ω2 ∈ (-0.9, -0.3)`, moduli in
/// `(0.7, 1.3)` and `z` inside the parallelogram they span, where both the
/// contour and the product converge.
fn cross_points(rng: &mut StdRng, n: usize) -> Vec<(Complex64, Complex64, Complex64)> {
    (0..n)
        .map(|_| {
            let a = Complex64::from_polar(rng.random_range(0.7..1.3), rng.random_range(0.0..0.5));
            let b = Complex64::from_polar(rng.random_range(0.7..1.3), rng.random_range(-0.9..-0.3));
            let z = a * rng.random_range(0.15..0.85) + b * rng.random_range(0.15..0.85);
            (z, a, b)
        })
        .collect()
}

fn bernoulli(cfg: &VerifyConfig) -> Vec<Residual> {
    let tol = cfg.tol.identity;
    let c = Complex64::new;
    let one = c(1.0, 0.0);
    let mut out = vec![
        Residual::compare("B_0(z) = 1", bernoulli_poly(0, c(0.3, -1.2)), one, tol),
        Residual::compare("B_1(0) = -1/2", bernoulli_poly(1, c(0.0, 0.0)), c(-0.5, 0.0), tol),
        Residual::compare("B_2(0) = 1/6", bernoulli_poly(2, c(0.0, 0.0)), c(1.0 / 6.0, 0.0), tol),
    ];
    let bn = bernoulli_numbers(12);
    out.push(Residual::exact(
        "B_12 = -691/2730",
        bn[12] == rat(-691, 2730),
        Some(format!("{}", rat_to_f64(&bn[12]))),
    ));
    let (w1, w2) = (c(1.0, 0.2), c(0.4, -0.9));
    out.push(settle(
        "B_{0,2}(z|ω1,ω2) = 1/(ω1ω2)",
        tol,
        multiple_bernoulli(0, c(0.3, 0.4), &[w1, w2]).map(|v| Residual::compare("B_{0,2}(z|ω1,ω2) = 1/(ω1ω2)", v, 1.0 / (w1 * w2), tol)),
    ));
    out.push(settle(
        "B_{2,2}(0|1,1) = 5/6",
        tol,
        multiple_bernoulli(2, c(0.0, 0.0), &[one, one]).map(|v| Residual::compare("B_{2,2}(0|1,1) = 5/6", v, c(5.0 / 6.0, 0.0), tol)),
    ));
    let (z, om) = (c(0.3, 0.4), [c(1.0, 0.1), c(0.9, -0.1), c(0.2, -0.7)]);
    let k = Complex64::from_polar(1.3, 0.7);
    for (n, r) in [(3usize, 3usize), (4, 3), (2, 2)] {
        let name = format!("B_{{{n},{r}}}(cz|cω) = c^{}·B_{{{n},{r}}}(z|ω)", n as i32 - r as i32);
        let ws = &om[..r];
        let scaled: Vec<Complex64> = ws.iter().map(|w| k * w).collect();
        let res = multiple_bernoulli(n, z, ws).and_then(|base| {
            let lhs = multiple_bernoulli(n, k * z, &scaled)?;
            Ok(Residual::compare(name.clone(), lhs, k.powi(n as i32 - r as i32) * base, tol))
        });
        out.push(settle(name, tol, res));
    }
    for omega in [one, c(1.0, 0.2), c(0.7, -0.3)] {
        for d in 1..=4 {
            out.push(settle(
                format!("residue lemma d={d} ω={omega}"),
                tol,
                residue_lemma_check(omega, d, tol, &cfg.opts),
            ));
        }
    }
    out
}

/// Pseudo-random solution points near `base` satisfying every `B_0` and
/// `D_0` predicate. Their `(v, w, -t)` and `(v | w∓tτ/2, -t)` are the
/// admissible arguments of the `F` and `G` identities.
pub fn admissible_points(base: &SolutionPoint, n: usize, seed: u64) -> Vec<SolutionPoint> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let v = base.v + Complex64::new(rng.random_range(-0.15..0.15), rng.random_range(-0.15..0.15));
        let w = base.w * Complex64::from_polar(rng.random_range(0.8..1.2), rng.random_range(-0.15..0.15));
        let t = base.t * Complex64::from_polar(rng.random_range(0.7..1.3), rng.random_range(-0.2..0.2));
        let tau = Complex64::new(rng.random_range(-0.05..0.05), rng.random_range(0.05..0.2));
        let p = SolutionPoint { v, w, t, tau, n: 0 };
        if b_predicates(&p).iter().chain(d_predicates(&p).iter()).all(|q| q.holds) {
            out.push(p);
        }
    }
    out
}

fn fg_args(p: &SolutionPoint) -> (Complex64, Complex64, Complex64, OmegaTriple) {
    (p.v, p.w, -p.t, d0_periods(p.w, p.t, p.tau))
}

fn difference(cfg: &VerifyConfig) -> Vec<Residual> {
    let tol = cfg.tol.identity;
    let o = &cfg.opts;
    let mut out = Vec::new();
    let pts = admissible_points(&cfg.point, cfg.grid_points, cfg.seed.wrapping_add(1));
    type FCheck = fn(Complex64, Complex64, Complex64, f64, &EvalOptions) -> Result<Residual>;
    type GCheck = fn(Complex64, &OmegaTriple, f64, &EvalOptions) -> Result<Residual>;
    let f_checks: [(&str, FCheck); 3] = [
        ("F(z+ω̄1)/F(z)", dif_f_wbar),
        ("F(z+ω2)/F(z)", dif_f_w2),
        ("F*(z+ω̄1)/F*(z)", diff_f),
    ];
    let g_checks: [(&str, GCheck); 3] = [
        ("G(z+ω1)/G(z)", dif_g1),
        ("G(z+ω̃1)/G(z)", dif_g2),
        ("G*(z+ω1)/G*(z)", diff_g1),
    ];
    for (label, f) in f_checks {
        for (i, p) in pts.iter().enumerate() {
            let (z, a, b, _) = fg_args(p);
            out.push(settle(format!("{label}, point {i}"), tol, f(z, a, b, tol, o).map(|r| tag(r, i))));
        }
    }
    for (label, g) in g_checks {
        for (i, p) in pts.iter().enumerate() {
            let (z, _, _, om) = fg_args(p);
            out.push(settle(format!("{label}, point {i}"), tol, g(z, &om, tol, o).map(|r| tag(r, i))));
        }
    }
    out
}

fn tag(r: Residual, i: usize) -> Residual {
    let name = format!("{}, point {i}", r.name);
    Residual { name, ..r }
}

fn reflection(cfg: &VerifyConfig) -> Vec<Residual> {
    let tol = cfg.tol.identity;
    let o = &cfg.opts;
    let pts = admissible_points(&cfg.point, cfg.grid_points, cfg.seed.wrapping_add(2));
    let mut out = Vec::new();
    for (label, f) in [("FF1", ff1 as fn(_, _, _, _, &_) -> _), ("FF2", ff2)] {
        for (i, p) in pts.iter().enumerate() {
            let (z, a, b, _) = fg_args(p);
            out.push(settle(format!("{label}, point {i}"), tol, f(z, a, b, tol, o).map(|r| tag(r, i))));
        }
    }
    for (label, g) in [("GG1", gg1 as fn(_, &_, _, &_) -> _), ("GG2", gg2)] {
        for (i, p) in pts.iter().enumerate() {
            let (z, _, _, om) = fg_args(p);
            out.push(settle(format!("{label}, point {i}"), tol, g(z, &om, tol, o).map(|r| tag(r, i))));
        }
    }
    out
}

fn asymptotics(cfg: &VerifyConfig) -> Vec<Residual> {
    let o = &cfg.opts;
    let c = Complex64::new;
    let mut out = Vec::new();
    let near: Vec<f64> = (0..6).map(|m| 0.25 * 0.5f64.powi(m)).collect();
    for fam in [Family::F { wbar: c(1.0, 0.0) }, Family::G { w1: c(1.05, 0.02), wt1: c(0.95, -0.02) }] {
        for k in 1..=3 {
            let name = format!("{} remainder order, K={k}", fam.label());
            let r = remainder_order(&fam, c(0.3, 0.4), c(0.2, -0.7), k, &near, cfg.tol.order, o).map(|rep| rep.residual(cfg.tol.order));
            out.push(settle(name, cfg.tol.order, r));
        }
    }
    let far: Vec<f64> = (0..11).map(|j| 16.0 * 2f64.powf(j as f64 / 2.0)).collect();
    let dir = Complex64::from_polar(1.0, -0.6);
    for (fam, z) in [
        (Family::F { wbar: c(1.0, 0.0) }, c(0.3, 0.4)),
        (Family::G { w1: c(1.0, 0.1), wt1: c(0.9, -0.1) }, c(0.2, 0.6)),
    ] {
        match fit_infinity(&fam, z, dir, &far, o) {
            Ok(fits) => out.extend(fits.into_iter().map(|fc| {
                Residual::compare(format!("{} coefficient of {} as ω2 -> ∞", fam.label(), fc.term), fc.fitted, fc.expected, cfg.tol.fit)
            })),
            Err(e) => out.push(Residual::failed(format!("{} large-ω2 fit", fam.label()), cfg.tol.fit, e.to_string())),
        }
    }
    out
}

fn wallcrossing(cfg: &VerifyConfig) -> Vec<Residual> {
    let tol = cfg.tol.identity;
    let o = &cfg.opts;
    let p = cfg.point.with_n(0);
    let mut out = Vec::new();
    for n in 0..=cfg.n_max {
        let pn = p.with_n(n);
        out.push(settle(format!("B jump at n={n}"), tol, b_wallcrossing(&pn, tol, o)));
        out.push(settle(format!("D jump at n={n}"), tol, d_wallcrossing(&pn, tol, o)));
    }
    out.push(settle("B_0 reflection", tol, b0_reflection(&p, tol, o)));
    out.push(settle("D_0 reflection", tol, d0_reflection(&p, tol, o)));
    out.extend(settle_all("telescoping", tol, telescoping(&p, cfg.n_max + 1, tol, o)));
    for n in 0..=cfg.n_max {
        out.extend(settle_all(format!("symmetry extension n={n}"), tol, symmetry_extension(&p.with_n(n), tol, o)));
    }
    out.push(inversion());
    out
}

fn qrh_limits(cfg: &VerifyConfig) -> Vec<Residual> {
    let o = &cfg.opts;
    let p = cfg.point;
    let mut out = Vec::new();
    let ns: Vec<i64> = (0..=cfg.n_max.min(2)).collect();
    let region = region_neighborhood_tau(&p.with_n(*ns.last().unwrap_or(&0)), &[p.tau]);
    out.push(Residual::exact(
        format!("τ = {} admissible for n <= {}", p.tau, ns.last().unwrap_or(&0)),
        ns.iter().all(|&n| region_neighborhood_tau(&p.with_n(n), &[p.tau]).admissible_count == 1),
        region.samples.first().filter(|s| !s.admissible).map(|s| s.failed.join("; ")),
    ));
    for &n in &ns {
        for kind in [SolutionKind::B, SolutionKind::D] {
            let name = format!("{}_{n} -> 1 as t -> 0", kind.label());
            out.push(settle(name, cfg.tol.limit, qrh_limit(kind, &p.with_n(n), 0.5, 8, o).map(|r| r.residual(cfg.tol.limit))));
        }
    }
    let radii: Vec<f64> = (0..6).map(|j| 8.0 * 2f64.powi(j)).collect();
    for &n in &ns {
        let pn = p.with_n(n);
        out.push(settle(
            format!("B_{n} polynomial growth"),
            0.0,
            qrh_growth(SolutionKind::B, &pn, &radii, o).map(|g| g.residual()),
        ));
        // the D predicates need |tτ| small against |w| along the whole sweep
        let small = pn.with_tau(Complex64::new(0.0, 1e-3));
        out.push(settle(
            format!("D_{n} polynomial growth at τ = 0.001i"),
            0.0,
            qrh_growth(SolutionKind::D, &small, &radii, o).map(|g| g.residual()),
        ));
    }
    out
}

fn cs(cfg: &VerifyConfig) -> Vec<Residual> {
    let tol = cfg.tol.identity;
    let o = &cfg.opts;
    let mut out: Vec<Residual> = default_cs_points()
        .iter()
        .enumerate()
        .map(|(i, p)| settle(format!("Z_cs = adjusted D_0, point {i}"), tol, cs_match(p, tol, o).map(|r| tag(r, i))))
        .collect();
    let at_one = CsParameters {
        delta: Complex64::new(0.2, -0.7),
        mu: Complex64::new(0.3, 0.4) / Complex64::new(0.2, -0.7),
        beta: Complex64::new(1.0, 0.0),
    };
    out.push(match refined_cs_partition(&at_one, o) {
        Ok(z) => Residual::exact("Z_cs finite and nonzero at β = 1", z.is_finite() && z.norm() > 0.0, Some(format!("Z = {z:.10}"))),
        Err(e) => Residual::exact("Z_cs finite and nonzero at β = 1", false, Some(e.to_string())),
    });
    let om = OmegaTriple::new(Complex64::new(1.05, 0.02), Complex64::new(0.95, -0.02), Complex64::new(0.2, -0.7));
    let z = Complex64::new(1.3, 0.4);
    let k = Complex64::from_polar(1.7, 0.3);
    let scaled = OmegaTriple::new(k * om.w1, k * om.wt1, k * om.w2);
    let name = "sin_3(cz|cω) = sin_3(z|ω)";
    let r = log_sin3(z, &om, o).and_then(|a| Ok(Residual::compare(name, log_sin3(k * z, &scaled, o)?.exp(), a.exp(), tol)));
    out.push(settle(name, tol, r));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.iter().chain([Suite::All].iter()) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), *s);
        }
        assert!("nope".parse::<Suite>().is_err());
        assert_eq!(Suite::All.expand().len(), 9);
    }

    #[test]
    fn admissible_points_are_admissible_and_seeded() {
        let a = admissible_points(&SolutionPoint::default(), 10, 3);
        let b = admissible_points(&SolutionPoint::default(), 10, 3);
        assert_eq!(a, b);
        for p in &a {
            assert!(d_predicates(p).iter().all(|q| q.holds));
        }
    }

    #[test]
    fn failed_checks_fail_the_suite() {
        let r = SuiteReport::new(Suite::Dilog, vec![Residual::failed("x", 1e-8, "boom")]);
        assert!(!r.pass);
        assert!(!SuiteReport::new(Suite::Dilog, vec![]).pass);
    }
}

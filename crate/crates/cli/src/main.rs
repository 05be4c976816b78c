//! `qrh`: evaluate the special and solution functions, run verification
//! suites, sweep a parameter, or inspect the admissible `τ` region.

mod eval;
mod params;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use conifold_qrh::lattice::{RayGeometry, DEFAULT_NMAX};
use conifold_qrh::qtorus::Truncation;
use conifold_qrh::rhsolver::limits::{default_tau_grid, region_neighborhood_tau};
use conifold_qrh::rhsolver::{b_predicates, d_predicates};
use conifold_qrh::special::asymptotics::{loglog_slope, partial_sum, Family};
use conifold_qrh::special::fg::{wrap_log, EvalOptions};
use conifold_qrh::verify::{self, Suite, VerifyConfig};
use conifold_qrh::QrhError;
use num_complex::Complex64;
use serde_json::{json, Value};

use eval::{distance_from_one, evaluate, predicates, solution_point, Target};
use params::{complex, complex_json, int, parse_complex, ParamSpec, Params};
use report::{num, Format, Report};

const SCHEMA: u32 = 1;

const EXIT_CHECK: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "qrh", version, about = "Quantum Riemann-Hilbert problem for the resolved conifold")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function: `qrh eval Bn n=2 t=-0.1+0.5i`.
    Eval(EvalArgs),
    /// Run a verification suite: `qrh verify wallcrossing`.
    Verify(VerifyArgs),
    /// Tabulate a target along a geometric or linear schedule of one parameter.
    Sweep(SweepArgs),
    /// Evaluate the B_n and D_n predicates over a grid of τ.
    Region(RegionArgs),
}

#[derive(Args)]
struct Common {
    /// NAME=VALUE, complex values written as 1.5, 2i or 1.5-2i.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct EvalArgs {
    /// Target, optionally followed by NAME=VALUE assignments.
    #[arg(value_name = "TARGET | NAME=VALUE")]
    positional: Vec<String>,
    #[arg(long, value_enum)]
    target: Option<Target>,
    /// Relative tolerance of the contour quadrature.
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name; same as --suite.
    #[arg(value_name = "SUITE")]
    positional: Option<String>,
    /// algebra, dilog, bernoulli, difference, reflection, asymptotics,
    /// wallcrossing, qrh-limits, cs-match or all.
    #[arg(long)]
    suite: Option<String>,
    /// Relative tolerance of identity checks (default 1e-8).
    #[arg(long)]
    tol: Option<f64>,
    /// Ray order N of the exact algebra checks (default 6).
    #[arg(long = "order-N")]
    order_n: Option<usize>,
    /// q-cutoff K of the exact algebra checks (default 24).
    #[arg(long = "order-K")]
    order_k: Option<i64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Schedule {
    Geometric,
    Linear,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(value_name = "TARGET | NAME=VALUE")]
    positional: Vec<String>,
    #[arg(long, value_enum)]
    target: Option<Target>,
    /// NAME:START:RATIO:COUNT; RATIO is the step for a linear schedule.
    #[arg(long)]
    sweep: String,
    #[arg(long, value_enum, default_value_t = Schedule::Geometric)]
    schedule: Schedule,
    /// Relative tolerance of the contour quadrature.
    #[arg(long)]
    tol: Option<f64>,
    /// For F and G: order of the small-ω2 partial sum whose remainder is tabulated.
    #[arg(long = "order-K")]
    order_k: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct RegionArgs {
    #[arg(value_name = "NAME=VALUE")]
    positional: Vec<String>,
    #[command(flatten)]
    common: Common,
}

/// Why a command stopped early, with its exit code.
enum Failure {
    Usage(String),
    Eval(QrhError),
}

impl From<QrhError> for Failure {
    fn from(e: QrhError) -> Self {
        Failure::Eval(e)
    }
}

fn error_code(e: &QrhError) -> u8 {
    if e.is_precondition() {
        EXIT_PRECONDITION
    } else {
        EXIT_NUMERICAL
    }
}

fn error_json(e: &QrhError) -> Value {
    let kind = if e.is_precondition() { "precondition" } else { "numerical" };
    json!({ "kind": kind, "message": e.to_string() })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let (out, format) = match &cli.command {
        Command::Eval(a) => (a.common.out.clone(), a.common.format),
        Command::Verify(a) => (a.common.out.clone(), a.common.format),
        Command::Sweep(a) => (a.common.out.clone(), a.common.format),
        Command::Region(a) => (a.common.out.clone(), a.common.format),
    };
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Region(a) => cmd_region(a),
    };
    match result {
        Ok((report, code)) => {
            if let Err(e) = report.write(format, out.as_deref()) {
                eprintln!("qrh: cannot write report: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
            ExitCode::from(code)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("qrh: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Eval(e)) => {
            eprintln!("qrh: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}

/// Splits positionals into an optional target name and assignments.
fn target_and_params(positional: &[String], flag: Option<Target>, params: &[String]) -> Result<(Target, Vec<String>), Failure> {
    let mut assigns: Vec<String> = params.to_vec();
    let mut named = None;
    for p in positional {
        if p.contains('=') {
            assigns.push(p.clone());
        } else if named.is_none() {
            named = Some(Target::from_str(p, false).map_err(|_| {
                let known: Vec<&str> = Target::value_variants().iter().map(|t| t.name()).collect();
                Failure::Usage(format!("unknown target '{p}' (expected one of: {})", known.join(", ")))
            })?);
        } else {
            return Err(Failure::Usage(format!("unexpected argument '{p}'")));
        }
    }
    let target = match (named, flag) {
        (Some(a), Some(b)) if a != b => return Err(Failure::Usage("conflicting targets".into())),
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => return Err(Failure::Usage("a target is required".into())),
    };
    Ok((target, assigns))
}

fn eval_options(tol: Option<f64>) -> Result<EvalOptions, Failure> {
    match tol {
        None => Ok(EvalOptions::default()),
        Some(t) if t > 0.0 && t.is_finite() => Ok(EvalOptions::with_tol(t)),
        Some(t) => Err(Failure::Usage(format!("--tol must be positive, got {t}"))),
    }
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn cmd_eval(a: EvalArgs) -> Result<(Report, u8), Failure> {
    let (target, assigns) = target_and_params(&a.positional, a.target, &a.common.params)?;
    let params = Params::resolve(target.params(), &assigns).map_err(Failure::Usage)?;
    let opts = eval_options(a.tol)?;
    let start = Instant::now();
    let preds = predicates(target, &params);
    let mut rec = json!({
        "schema": SCHEMA,
        "command": "eval",
        "target": target.name(),
        "input": params.echo(),
        "tol": opts.contour.quad.rel_tol,
        "predicates": preds,
    });
    let (code, row) = match evaluate(target, &params, &opts) {
        Ok(e) => {
            rec["value"] = complex_json(e.value);
            rec["error"] = json!(e.error);
            if let Some(l) = e.log {
                rec["log"] = complex_json(l);
            }
            if let Some(r) = e.route {
                rec["route"] = json!(r);
            }
            (0, vec![target.name().to_string(), num(e.value.re), num(e.value.im), num(e.error), String::new()])
        }
        Err(err) => {
            eprintln!("qrh: {err}");
            rec["error"] = error_json(&err);
            (error_code(&err), vec![target.name().to_string(), String::new(), String::new(), String::new(), err.to_string()])
        }
    };
    rec["timing"] = json!({ "wall_ms": ms(start) });
    Ok((
        Report {
            json: rec,
            header: vec!["target", "re", "im", "error", "failure"],
            rows: vec![row],
        },
        code,
    ))
}

const VERIFY_PARAMS: &[ParamSpec] = &[
    complex("v", "0.3+0.4i"),
    complex("w", "1"),
    complex("t", "-0.2+0.7i"),
    complex("tau", "0.15i"),
    int("seed", "7"),
];

fn cmd_verify(a: VerifyArgs) -> Result<(Report, u8), Failure> {
    let name = match (&a.positional, &a.suite) {
        (Some(x), Some(y)) if x != y => return Err(Failure::Usage("conflicting suites".into())),
        (Some(x), _) | (None, Some(x)) => x.clone(),
        (None, None) => "all".to_string(),
    };
    let suite: Suite = name.parse().map_err(|e: QrhError| Failure::Usage(e.to_string()))?;
    let params = Params::resolve(VERIFY_PARAMS, &a.common.params).map_err(Failure::Usage)?;
    let mut cfg = VerifyConfig::default();
    cfg.point.v = params.c("v");
    cfg.point.w = params.c("w");
    cfg.point.t = params.c("t");
    cfg.point.tau = params.c("tau");
    cfg.seed = params.int("seed") as u64;
    if let Some(t) = a.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Failure::Usage(format!("--tol must be positive, got {t}")));
        }
        cfg.tol.identity = t;
    }
    cfg.truncation = Truncation::new(a.order_n.unwrap_or(cfg.truncation.n), a.order_k.unwrap_or(cfg.truncation.k));

    let start = Instant::now();
    let reports = verify::run(suite, &cfg);
    let pass = reports.iter().all(|r| r.pass);
    let failed: usize = reports.iter().map(|r| r.checks.iter().filter(|c| !c.pass).count()).sum();
    let total: usize = reports.iter().map(|r| r.checks.len()).sum();
    for r in &reports {
        eprintln!(
            "{:<13} {}  {} checks, max rel {:.2e}",
            r.suite.name(),
            if r.pass { "PASS" } else { "FAIL" },
            r.checks.len(),
            r.max_rel
        );
    }
    let rows = reports
        .iter()
        .flat_map(|r| {
            r.checks.iter().map(move |c| {
                vec![
                    r.suite.name().to_string(),
                    c.name.clone(),
                    format!("{:?}", c.kind).to_lowercase(),
                    num(c.abs),
                    num(c.rel),
                    num(c.tol),
                    c.pass.to_string(),
                    c.detail.clone().unwrap_or_default(),
                ]
            })
        })
        .collect();
    let json = json!({
        "schema": SCHEMA,
        "command": "verify",
        "suite": suite.name(),
        "config": {
            "point": params.echo(),
            "tol": cfg.tol,
            "order_N": cfg.truncation.n,
            "order_K": cfg.truncation.k,
        },
        "pass": pass,
        "checks": total,
        "failed": failed,
        "suites": reports,
        "timing": { "wall_ms": ms(start) },
    });
    Ok((
        Report {
            json,
            header: vec!["suite", "check", "kind", "abs", "rel", "tol", "pass", "detail"],
            rows,
        },
        if pass { 0 } else { EXIT_CHECK },
    ))
}

struct SweepSpec {
    name: String,
    start: Complex64,
    step: Complex64,
    count: usize,
}

fn parse_sweep(s: &str) -> Result<SweepSpec, Failure> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 4 {
        return Err(Failure::Usage(format!("--sweep expects NAME:START:RATIO:COUNT, got '{s}'")));
    }
    let count: usize = parts[3]
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("sweep count must be a non-negative integer, got '{}'", parts[3])))?;
    if count == 0 {
        return Err(Failure::Usage("empty schedule: sweep count is 0".into()));
    }
    Ok(SweepSpec {
        name: parts[0].trim().to_string(),
        start: parse_complex(parts[1]).map_err(Failure::Usage)?,
        step: parse_complex(parts[2]).map_err(Failure::Usage)?,
        count,
    })
}

fn cmd_sweep(a: SweepArgs) -> Result<(Report, u8), Failure> {
    let (target, assigns) = target_and_params(&a.positional, a.target, &a.common.params)?;
    let mut params = Params::resolve(target.params(), &assigns).map_err(Failure::Usage)?;
    let sw = parse_sweep(&a.sweep)?;
    if !params.is_complex(&sw.name) {
        return Err(Failure::Usage(format!("'{}' is not a complex parameter of {}", sw.name, target.name())));
    }
    let family = match (a.order_k, target) {
        (None, _) => None,
        (Some(_), Target::F) => Some(Family::F { wbar: params.c("wbar") }),
        (Some(_), Target::G) => Some(Family::G {
            w1: params.c("w1"),
            wt1: params.c("wt1"),
        }),
        (Some(_), _) => return Err(Failure::Usage("--order-K applies to F and G sweeps".into())),
    };
    let opts = eval_options(a.tol)?;
    let start = Instant::now();
    let base = params.echo();
    let mut rows = Vec::with_capacity(sw.count);
    let mut json_rows = Vec::with_capacity(sw.count);
    let (mut abscissa, mut remainders, mut distances) = (Vec::new(), Vec::new(), Vec::new());
    for j in 0..sw.count {
        let x = match a.schedule {
            Schedule::Geometric => sw.start * sw.step.powi(j as i32),
            Schedule::Linear => sw.start + sw.step * j as f64,
        };
        params.set_complex(&sw.name, x).map_err(Failure::Usage)?;
        let e = evaluate(target, &params, &opts)?;
        let mut rec = json!({ "param": complex_json(x), "value": complex_json(e.value), "error": e.error });
        let mut row = vec![num(x.re), num(x.im), num(e.value.re), num(e.value.im), num(e.error), String::new(), String::new()];
        if let Some(d) = distance_from_one(target, e.value) {
            rec["distance_from_one"] = json!(d);
            row[5] = num(d);
            distances.push(d);
        }
        if let (Some(fam), Some(k)) = (&family, a.order_k) {
            let w2 = params.c("w2");
            let (s, _) = partial_sum(fam, params.c("z"), w2, k, &opts)?;
            let log = e.log.unwrap_or_else(|| e.value.ln());
            let r = wrap_log(log - s).norm();
            rec["remainder"] = json!(r);
            row[6] = num(r);
            abscissa.push(w2.norm());
            remainders.push(r);
        }
        json_rows.push(rec);
        rows.push(row);
    }
    let mut summary = json!({});
    if !distances.is_empty() {
        summary["monotone_approach"] = json!(distances.windows(2).all(|w| w[1] <= w[0]));
        summary["last_distance_from_one"] = json!(distances[distances.len() - 1]);
    }
    if remainders.len() >= 2 {
        summary["order_K"] = json!(a.order_k);
        summary["remainder_slope"] = json!(loglog_slope(&abscissa, &remainders));
    }
    let json = json!({
        "schema": SCHEMA,
        "command": "sweep",
        "target": target.name(),
        "input": base,
        "sweep": {
            "param": sw.name,
            "schedule": format!("{:?}", a.schedule).to_lowercase(),
            "start": complex_json(sw.start),
            "step": complex_json(sw.step),
            "count": sw.count,
        },
        "tol": opts.contour.quad.rel_tol,
        "rows": json_rows,
        "summary": summary,
        "timing": { "wall_ms": ms(start) },
    });
    Ok((
        Report {
            json,
            header: vec!["param_re", "param_im", "re", "im", "error", "distance_from_one", "remainder"],
            rows,
        },
        0,
    ))
}

fn cmd_region(a: RegionArgs) -> Result<(Report, u8), Failure> {
    let mut assigns = a.common.params.clone();
    assigns.extend(a.positional.iter().cloned());
    let params = Params::resolve(Target::Dn.params(), &assigns).map_err(Failure::Usage)?;
    let p = solution_point(&params);
    let start = Instant::now();
    let geo = RayGeometry::new(p.v, p.w)?;
    let ray = geo.classify_ray(p.t, DEFAULT_NMAX)?;
    let mut grid = default_tau_grid();
    if !grid.contains(&p.tau) {
        grid.push(p.tau);
    }
    let region = region_neighborhood_tau(&p, &grid);
    let rows = region
        .samples
        .iter()
        .map(|s| vec![num(s.tau.re), num(s.tau.im), s.admissible.to_string(), s.failed.join("; ")])
        .collect();
    let json = json!({
        "schema": SCHEMA,
        "command": "region",
        "input": params.echo(),
        "t_ray": ray,
        "t_in_v_region": geo.in_v_region(p.n, p.t),
        "predicates": { "B": b_predicates(&p), "D": d_predicates(&p) },
        "tau_region": region,
        "timing": { "wall_ms": ms(start) },
    });
    Ok((
        Report {
            json,
            header: vec!["tau_re", "tau_im", "admissible", "failed"],
            rows,
        },
        0,
    ))
}

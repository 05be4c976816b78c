//! One PASS/FAIL line per acceptance criterion. Exits nonzero on any FAIL.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use conifold_qrh::residual::Residual;
use conifold_qrh::verify::{run, run_suite, Suite, SuiteReport, VerifyConfig};

type Criterion = (&'static str, fn(&VerifyConfig) -> Outcome);

struct Outcome {
    pass: bool,
    summary: String,
}

fn timed(suite: Suite, cfg: &VerifyConfig) -> (SuiteReport, Duration) {
    let t0 = Instant::now();
    let r = run_suite(suite, cfg);
    (r, t0.elapsed())
}

fn select(r: &SuiteReport, keep: impl Fn(&str) -> bool) -> Vec<&Residual> {
    r.checks.iter().filter(|c| keep(&c.name)).collect()
}

fn max_rel(cs: &[&Residual]) -> f64 {
    cs.iter().map(|c| c.rel).fold(0.0, f64::max)
}

fn failures(cs: &[&Residual]) -> String {
    let bad: Vec<String> = cs
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{} ({})", c.name, c.detail.as_deref().unwrap_or("no detail")))
        .collect();
    if bad.is_empty() {
        String::new()
    } else {
        format!("; failed: {}", bad.join(" | "))
    }
}

/// `count` checks, all passing and all below `tol`.
fn all_within(cs: &[&Residual], count: usize, tol: f64) -> bool {
    cs.len() >= count && cs.iter().all(|c| c.pass && c.rel < tol)
}

fn exact_algebra(cfg: &VerifyConfig) -> Outcome {
    let (r, dt) = timed(Suite::Algebra, cfg);
    let cs = select(&r, |n| n.starts_with("S_q(ℓ"));
    let exact = cs.iter().all(|c| c.pass && c.abs == 0.0);
    Outcome {
        pass: cs.len() == 24 && exact && dt < Duration::from_secs(30),
        summary: format!("{} ray/generator pairs, N=6 K=24, zero residual: {exact}, {:.2}s{}", cs.len(), dt.as_secs_f64(), failures(&cs)),
    }
}

fn sector_composition(cfg: &VerifyConfig) -> Outcome {
    let (r, dt) = timed(Suite::Algebra, cfg);
    let cs = select(&r, |n| n.starts_with("S_q(Δ)"));
    let exact = cs.iter().all(|c| c.pass && c.abs == 0.0);
    Outcome {
        pass: cs.len() == 2 && exact && dt < Duration::from_secs(60),
        summary: format!("β∨ and δ∨ at bidegree (2,2), exact: {exact}, {:.2}s{}", dt.as_secs_f64(), failures(&cs)),
    }
}

fn cross_representation(cfg: &VerifyConfig) -> Outcome {
    let (r, dt) = timed(Suite::Dilog, cfg);
    let cs = select(&r, |n| n.starts_with("exp(contour log F) = product F"));
    Outcome {
        pass: all_within(&cs, 20, 1e-8) && dt < Duration::from_secs(60),
        summary: format!("{} points, max rel {:.2e}, {:.2}s{}", cs.len(), max_rel(&cs), dt.as_secs_f64(), failures(&cs)),
    }
}

fn identity_grid(cfg: &VerifyConfig) -> Outcome {
    let mut groups: BTreeMap<String, Vec<Residual>> = BTreeMap::new();
    for suite in [Suite::Difference, Suite::Reflection] {
        for c in run_suite(suite, cfg).checks {
            let label = c.name.rsplit_once(", point ").map_or(c.name.as_str(), |(l, _)| l).to_string();
            groups.entry(label).or_default().push(c);
        }
    }
    let all: Vec<&Residual> = groups.values().flatten().collect();
    let thin: Vec<&String> = groups.iter().filter(|(_, v)| v.len() < 10).map(|(k, _)| k).collect();
    Outcome {
        pass: groups.len() == 10 && thin.is_empty() && all_within(&all, 100, 1e-8),
        summary: format!(
            "{} relations, min {} points each, max rel {:.2e}{}",
            groups.len(),
            groups.values().map(Vec::len).min().unwrap_or(0),
            max_rel(&all),
            failures(&all)
        ),
    }
}

fn residue_lemma(cfg: &VerifyConfig) -> Outcome {
    let r = run_suite(Suite::Bernoulli, cfg);
    let cs = select(&r, |n| n.starts_with("residue lemma"));
    Outcome {
        pass: all_within(&cs, 12, 1e-8),
        summary: format!("d in 1..=4 at 3 periods: {} checks, max rel {:.2e}{}", cs.len(), max_rel(&cs), failures(&cs)),
    }
}

fn asymptotics(cfg: &VerifyConfig) -> Outcome {
    let r = run_suite(Suite::Asymptotics, cfg);
    let orders = select(&r, |n| n.contains("remainder order"));
    let fits = select(&r, |n| n.contains("as ω2 -> ∞"));
    let slopes: Vec<String> = orders.iter().map(|c| c.detail.clone().unwrap_or_default()).collect();
    Outcome {
        pass: orders.len() == 6 && fits.len() == 5 && orders.iter().all(|c| c.pass && c.rel < 0.2) && fits.iter().all(|c| c.pass && c.rel < 1e-4),
        summary: format!(
            "orders within {:.3} of an integer >= K (B_3 = 0, so K=2 and K=3 share order 3) [{}], ∞ coefficients max rel {:.2e}{}{}",
            max_rel(&orders),
            slopes.join("; "),
            max_rel(&fits),
            failures(&orders),
            failures(&fits)
        ),
    }
}

fn wallcrossing(cfg: &VerifyConfig) -> Outcome {
    let r = run_suite(Suite::Wallcrossing, cfg);
    let jumps = select(&r, |n| (n.starts_with("B_") || n.starts_with("D_")) && n.contains(" = ") && !n.contains("composed"));
    let jumps: Vec<&Residual> = jumps.into_iter().filter(|c| !c.name.contains("(-t)")).collect();
    let refl = select(&r, |n| n.contains("(-t)"));
    let both: Vec<&Residual> = jumps.iter().chain(refl.iter()).copied().collect();
    Outcome {
        pass: jumps.len() == 8 && refl.len() == 2 && all_within(&both, 10, 1e-8),
        summary: format!("{} jumps for n = 0..3, {} reflections, max rel {:.2e}{}", jumps.len(), refl.len(), max_rel(&both), failures(&both)),
    }
}

fn qrh_limits(cfg: &VerifyConfig) -> Outcome {
    let r = run_suite(Suite::QrhLimits, cfg);
    let limits = select(&r, |n| n.contains("-> 1 as t -> 0"));
    let growth = select(&r, |n| n.contains("growth"));
    let exps: Vec<String> = growth.iter().map(|c| c.detail.clone().unwrap_or_default()).collect();
    Outcome {
        pass: limits.len() == 6 && limits.iter().all(|c| c.pass && c.abs < 1e-6) && growth.len() == 6 && growth.iter().all(|c| c.pass),
        summary: format!(
            "B_n, D_n for n <= 2: max |limit - 1| {:.2e}; growth [{}]{}{}",
            limits.iter().map(|c| c.abs).fold(0.0, f64::max),
            exps.join("; "),
            failures(&limits),
            failures(&growth)
        ),
    }
}

fn cs_match(cfg: &VerifyConfig) -> Outcome {
    let r = run_suite(Suite::CsMatch, cfg);
    let cs = select(&r, |n| n.starts_with("Z_cs = adjusted D_0"));
    Outcome {
        pass: all_within(&cs, 5, 1e-8),
        summary: format!("{} points, max rel {:.2e}{}", cs.len(), max_rel(&cs), failures(&cs)),
    }
}

fn determinism(cfg: &VerifyConfig) -> Outcome {
    let a = serde_json::to_string(&run(Suite::All, cfg)).expect("serialize");
    let b = serde_json::to_string(&run(Suite::All, cfg)).expect("serialize");
    Outcome {
        pass: a == b,
        summary: format!("two runs of all suites, {} bytes of JSON each, identical: {}", a.len(), a == b),
    }
}

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let criteria: [Criterion; 10] = [
        ("exact algebra", exact_algebra),
        ("sector composition", sector_composition),
        ("contour vs product F", cross_representation),
        ("difference and reflection grid", identity_grid),
        ("residue lemma", residue_lemma),
        ("asymptotic orders and ∞ coefficients", asymptotics),
        ("wall-crossing and reflections", wallcrossing),
        ("t -> 0 limits and growth", qrh_limits),
        ("Chern-Simons match", cs_match),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f(&cfg);
        failed += usize::from(!o.pass);
        println!("{} {:>2} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.summary);
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

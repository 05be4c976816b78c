use std::process::{Command, Output};

use serde_json::Value;

fn qrh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qrh")).args(args).output().expect("run qrh")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn eval_qdilog_at_zero_is_one() {
    let o = qrh(&["eval", "qdilog", "x=0", "q=0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let j = json(&o);
    assert_eq!(j["schema"], 1);
    assert_eq!(j["value"]["re"], 1.0);
    assert_eq!(j["value"]["im"], 0.0);
    assert!(j["timing"]["wall_ms"].is_number());
    assert!(j["error"].is_number() && j["tol"].is_number());
}

#[test]
fn flag_and_positional_forms_agree() {
    let a = json(&qrh(&["eval", "F", "z=0.3+0.4i"]));
    let b = json(&qrh(&["eval", "--target", "F", "--param", "z=0.3+0.4i"]));
    assert_eq!(without_timing(a), without_timing(b));
}

#[test]
fn inadmissible_t_names_the_predicate() {
    let o = qrh(&["eval", "Bn", "t=0.2-0.7i"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Im((v+nw)/(-t)) > 0"), "{}", stderr(&o));
    let j = json(&o);
    assert_eq!(j["error"]["kind"], "precondition");
    let failed: Vec<&str> = j["predicates"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|p| p["holds"] == false)
        .map(|p| p["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["Im((v+nw)/(-t)) > 0"]);
}

#[test]
fn z_cs_at_beta_one_is_finite() {
    let o = qrh(&["eval", "Z_cs", "beta=1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let j = json(&o);
    let (re, im) = (j["value"]["re"].as_f64().unwrap(), j["value"]["im"].as_f64().unwrap());
    assert!(re.is_finite() && im.is_finite() && re.hypot(im) > 0.0);
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        &["eval", "nope"][..],
        &["eval", "F", "x=1"],
        &["eval", "F", "z=1+"],
        &["eval"],
        &["verify", "bogus"],
        &["sweep", "Bn", "--sweep", "t:-0.2+0.7i:0.5:0"],
        &["sweep", "Bn", "--sweep", "n:1:1:3"],
        &["frobnicate"],
    ] {
        let o = qrh(args);
        assert_eq!(o.status.code(), Some(64), "{args:?}: {}", stderr(&o));
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn complex_parameter_forms() {
    for (raw, re, im) in [("1.5", 1.5, 0.0), ("2i", 0.0, 2.0), ("1.5-2i", 1.5, -2.0)] {
        let o = qrh(&["eval", "bernoulli", "n=1", &format!("z={raw}")]);
        let j = json(&o);
        assert_eq!(j["input"]["z"]["re"], re);
        assert_eq!(j["input"]["z"]["im"], im);
        // B_1(z) = z - 1/2
        assert!((j["value"]["re"].as_f64().unwrap() - (re - 0.5)).abs() < 1e-15);
    }
}

#[test]
fn numerical_failure_exits_3() {
    let o = qrh(&["eval", "qdilog", "x=0.5", "q=1"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["error"]["kind"], "numerical");
}

#[test]
fn verify_algebra_is_exact() {
    let o = qrh(&["verify", "algebra"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let j = json(&o);
    assert_eq!(j["pass"], true);
    let checks = j["suites"][0]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 26);
    for c in checks {
        assert_eq!(c["kind"], "exact");
        assert_eq!(c["abs"], 0.0);
    }
}

#[test]
fn verify_wallcrossing_at_the_default_point() {
    let o = qrh(&["verify", "--suite", "wallcrossing"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let j = json(&o);
    assert!(j["suites"][0]["max_rel"].as_f64().unwrap() < 1e-8);
}

#[test]
fn verify_failure_exits_1() {
    let o = qrh(&["verify", "wallcrossing", "--param", "tau=-0.1i"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["pass"], false);
}

#[test]
fn verify_csv_has_one_row_per_check() {
    let o = qrh(&["verify", "cs-match", "--format", "csv"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("suite,check,kind,abs,rel,tol,pass,detail"));
    assert_eq!(lines.count(), 7);
}

#[test]
fn verify_is_deterministic() {
    let a = json(&qrh(&["verify", "difference"]));
    let b = json(&qrh(&["verify", "difference"]));
    assert_eq!(without_timing(a), without_timing(b));
}

#[test]
fn sweep_t_approaches_one() {
    let o = qrh(&["sweep", "Bn", "n=1", "--sweep", "t:-0.2+0.7i:0.5:6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let j = json(&o);
    assert_eq!(j["rows"].as_array().unwrap().len(), 6);
    assert_eq!(j["summary"]["monotone_approach"], true);
}

#[test]
fn sweep_w2_reports_the_remainder_slope() {
    let o = qrh(&["sweep", "F", "--sweep", "w2:0.05-0.175i:0.5:6", "--order-K", "1"]);
    let j = json(&o);
    let slope = j["summary"]["remainder_slope"].as_f64().unwrap();
    assert!((slope - 1.0).abs() < 0.2, "{slope}");
}

#[test]
fn out_writes_the_report_to_a_file() {
    let path = std::env::temp_dir().join(format!("qrh-region-{}.json", std::process::id()));
    let o = qrh(&["region", "n=2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let j: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(j["command"], "region");
    assert!(j["tau_region"]["admissible_count"].as_u64().unwrap() > 0);
}

//! `name=value` parameters with per-target names, kinds and defaults.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde_json::{json, Value};

/// Parses `1.5`, `2i`, `-i`, `1.5-2i`, `1e-3+2.5e-1i`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot parse '{s}' as a complex number");
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |u: &str| -> Result<f64, String> {
        match u {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => u.parse::<f64>().map_err(|_| bad()),
        }
    };
    match split {
        Some(k) => Ok(Complex64::new(body[..k].parse::<f64>().map_err(|_| bad())?, imag(&body[k..])?)),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

#[derive(Clone, Copy, Debug)]
pub enum Kind {
    Complex,
    Int,
    Word(&'static [&'static str]),
}

#[derive(Clone, Copy, Debug)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: Kind,
    pub default: &'static str,
}

pub const fn complex(name: &'static str, default: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        kind: Kind::Complex,
        default,
    }
}

pub const fn int(name: &'static str, default: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        kind: Kind::Int,
        default,
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Val {
    C(Complex64),
    I(i64),
    W(String),
}

fn parse_as(spec: &ParamSpec, raw: &str) -> Result<Val, String> {
    match spec.kind {
        Kind::Complex => parse_complex(raw).map(Val::C),
        Kind::Int => raw
            .trim()
            .parse::<i64>()
            .map(Val::I)
            .map_err(|_| format!("parameter {} must be an integer, got '{raw}'", spec.name)),
        Kind::Word(options) => options
            .iter()
            .find(|o| **o == raw.trim())
            .map(|o| Val::W(o.to_string()))
            .ok_or_else(|| format!("parameter {} must be one of {}, got '{raw}'", spec.name, options.join(", "))),
    }
}

/// Resolved parameters: every declared name has a value.
#[derive(Clone, Debug)]
pub struct Params {
    values: BTreeMap<&'static str, Val>,
    specs: &'static [ParamSpec],
}

impl Params {
    /// Applies `name=value` assignments over the defaults. Unknown names
    /// and unparsable values are rejected.
    pub fn resolve(specs: &'static [ParamSpec], given: &[String]) -> Result<Self, String> {
        let mut values = BTreeMap::new();
        for s in specs {
            values.insert(s.name, parse_as(s, s.default)?);
        }
        for a in given {
            let (name, raw) = a.split_once('=').ok_or_else(|| format!("expected NAME=VALUE, got '{a}'"))?;
            let spec = specs.iter().find(|s| s.name == name.trim()).ok_or_else(|| {
                let known: Vec<&str> = specs.iter().map(|s| s.name).collect();
                format!("unknown parameter '{}' (expected one of: {})", name.trim(), known.join(", "))
            })?;
            values.insert(spec.name, parse_as(spec, raw)?);
        }
        Ok(Self { values, specs })
    }

    pub fn c(&self, name: &str) -> Complex64 {
        match self.values.get(name) {
            Some(Val::C(z)) => *z,
            Some(Val::I(n)) => Complex64::new(*n as f64, 0.0),
            _ => panic!("no complex parameter {name}"),
        }
    }

    pub fn int(&self, name: &str) -> i64 {
        match self.values.get(name) {
            Some(Val::I(n)) => *n,
            _ => panic!("no integer parameter {name}"),
        }
    }

    pub fn word(&self, name: &str) -> &str {
        match self.values.get(name) {
            Some(Val::W(w)) => w,
            _ => panic!("no word parameter {name}"),
        }
    }

    pub fn is_complex(&self, name: &str) -> bool {
        self.specs.iter().any(|s| s.name == name && matches!(s.kind, Kind::Complex))
    }

    pub fn set_complex(&mut self, name: &str, z: Complex64) -> Result<(), String> {
        let spec = self
            .specs
            .iter()
            .find(|s| s.name == name && matches!(s.kind, Kind::Complex))
            .ok_or_else(|| format!("'{name}' is not a complex parameter of this target"))?;
        self.values.insert(spec.name, Val::C(z));
        Ok(())
    }

    pub fn echo(&self) -> Value {
        let m: serde_json::Map<String, Value> = self
            .values
            .iter()
            .map(|(k, v)| {
                let j = match v {
                    Val::C(z) => complex_json(*z),
                    Val::I(n) => json!(n),
                    Val::W(w) => json!(w),
                };
                (k.to_string(), j)
            })
            .collect();
        Value::Object(m)
    }
}

pub fn complex_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("1.5").unwrap(), c(1.5, 0.0));
        assert_eq!(parse_complex("2i").unwrap(), c(0.0, 2.0));
        assert_eq!(parse_complex("1.5-2i").unwrap(), c(1.5, -2.0));
        assert_eq!(parse_complex("-0.2+0.7i").unwrap(), c(-0.2, 0.7));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("3-i").unwrap(), c(3.0, -1.0));
        assert_eq!(parse_complex("1e-3i").unwrap(), c(0.0, 1e-3));
        assert_eq!(parse_complex("1e-3-2E+1i").unwrap(), c(1e-3, -20.0));
        assert_eq!(parse_complex(" 0.3 + 0.4i ").unwrap(), c(0.3, 0.4));
        for bad in ["", "abc", "1+", "1.2.3i", "2ii"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    const SPECS: &[ParamSpec] = &[complex("z", "0.3+0.4i"), int("n", "0")];

    #[test]
    fn resolution() {
        let p = Params::resolve(SPECS, &["n=2".into()]).unwrap();
        assert_eq!(p.int("n"), 2);
        assert_eq!(p.c("z"), c(0.3, 0.4));
        assert!(Params::resolve(SPECS, &["x=1".into()]).unwrap_err().contains("unknown parameter 'x'"));
        assert!(Params::resolve(SPECS, &["n=1.5".into()]).is_err());
        assert!(Params::resolve(SPECS, &["z".into()]).is_err());
    }
}

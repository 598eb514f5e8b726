//! Problem files.
//!
//! ```toml
//! [system]
//! n = 1
//! omega = 1.0
//! lambda = 0.25
//!
//! [a.1]
//! kind = "constant"          # constant | sinusoid | tabulated
//! value = 1.0
//!
//! [b.1]
//! kind = "sinusoid"
//! mean = 1.0
//! amplitude = 0.5
//! phase = 0.0
//!
//! [f]
//! kind = "power_sum"         # f_i = alpha_i |u|^-p_i + beta_i |u|^q_i + gamma_i
//! alpha_1 = 1.0
//! p_1 = 1.0
//!
//! [e.1]                      # optional forcing, same kinds as a and b
//! kind = "tabulated"
//! samples = [0.0, -1.0, 0.0, 1.0]
//! interpolation = "trigonometric"   # or "linear"
//! ```
//!
//! `beta_i`, `q_i` and `gamma_i` default to 0. Every error names the offending section and key.

use std::path::Path;

use toml::{Table, Value};

use crate::error::{Error, Result};
use crate::model::{Interpolation, Nonlinearity, PeriodicCoefficient, PowerSum, SystemSpec};

fn number(section: &str, key: &str, v: &Value) -> Result<f64> {
    let x = match v {
        Value::Float(x) => *x,
        Value::Integer(i) => *i as f64,
        other => {
            return Err(Error::config(
                section,
                key,
                format!("expected a number, found {}", other.type_str()),
            ))
        }
    };
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::config(section, key, format!("{x} is not finite")))
    }
}

fn required(section: &str, table: &Table, key: &str) -> Result<f64> {
    match table.get(key) {
        Some(v) => number(section, key, v),
        None => Err(Error::config(section, key, "missing")),
    }
}

fn optional(section: &str, table: &Table, key: &str, default: f64) -> Result<f64> {
    table.get(key).map_or(Ok(default), |v| number(section, key, v))
}

fn string<'a>(section: &str, table: &'a Table, key: &str) -> Result<&'a str> {
    match table.get(key) {
        Some(Value::String(s)) => Ok(s),
        Some(other) => Err(Error::config(
            section,
            key,
            format!("expected a string, found {}", other.type_str()),
        )),
        None => Err(Error::config(section, key, "missing")),
    }
}

fn section<'a>(root: &'a Table, name: &str) -> Result<&'a Table> {
    match root.get(name) {
        Some(Value::Table(t)) => Ok(t),
        Some(_) => Err(Error::config(name, "", "expected a section")),
        None => Err(Error::config(name, "", "missing section")),
    }
}

fn reject_unknown(section: &str, table: &Table, allowed: &[&str]) -> Result<()> {
    match table.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::config(section, k, "unknown key")),
        None => Ok(()),
    }
}

fn coefficient(name: &str, table: &Table, omega: f64) -> Result<PeriodicCoefficient> {
    let kind = string(name, table, "kind")?;
    let wrap = |e: Error| match e {
        Error::Invalid(m) => Error::config(name, "kind", m),
        other => other,
    };
    match kind {
        "constant" => {
            reject_unknown(name, table, &["kind", "value"])?;
            PeriodicCoefficient::constant(required(name, table, "value")?, omega).map_err(wrap)
        }
        "sinusoid" => {
            reject_unknown(name, table, &["kind", "mean", "amplitude", "phase"])?;
            PeriodicCoefficient::sinusoid(
                required(name, table, "mean")?,
                required(name, table, "amplitude")?,
                optional(name, table, "phase", 0.0)?,
                omega,
            )
            .map_err(wrap)
        }
        "tabulated" => {
            reject_unknown(name, table, &["kind", "samples", "interpolation"])?;
            let samples = match table.get("samples") {
                Some(Value::Array(items)) => items
                    .iter()
                    .map(|v| number(name, "samples", v))
                    .collect::<Result<Vec<f64>>>()?,
                Some(_) => return Err(Error::config(name, "samples", "expected an array of numbers")),
                None => return Err(Error::config(name, "samples", "missing")),
            };
            let interpolation = match table.get("interpolation") {
                None => Interpolation::Trigonometric,
                Some(Value::String(s)) if s == "trigonometric" => Interpolation::Trigonometric,
                Some(Value::String(s)) if s == "linear" => Interpolation::Linear,
                Some(_) => {
                    return Err(Error::config(
                        name,
                        "interpolation",
                        "expected \"trigonometric\" or \"linear\"",
                    ))
                }
            };
            PeriodicCoefficient::tabulated(samples, interpolation, omega)
                .map_err(|e| match e {
                    Error::Invalid(m) => Error::config(name, "samples", m),
                    other => other,
                })
        }
        other => Err(Error::config(
            name,
            "kind",
            format!("unknown coefficient kind \"{other}\" (expected constant, sinusoid or tabulated)"),
        )),
    }
}

fn family(root: &Table, name: &str, n: usize, omega: f64) -> Result<Vec<PeriodicCoefficient>> {
    let table = section(root, name)?;
    if let Some(k) = table
        .keys()
        .find(|k| k.parse::<usize>().map_or(true, |i| i == 0 || i > n))
    {
        return Err(Error::config(format!("{name}.{k}"), "", format!("component index must be in 1..={n}")));
    }
    (1..=n)
        .map(|i| {
            let sec = format!("{name}.{i}");
            match table.get(&i.to_string()) {
                Some(Value::Table(t)) => coefficient(&sec, t, omega),
                Some(_) => Err(Error::config(&sec, "", "expected a section")),
                None => Err(Error::config(&sec, "", "missing section")),
            }
        })
        .collect()
}

fn nonlinearity(root: &Table, n: usize) -> Result<Nonlinearity> {
    let table = section(root, "f")?;
    let kind = string("f", table, "kind")?;
    if kind != "power_sum" {
        return Err(Error::config(
            "f",
            "kind",
            format!("unknown nonlinearity \"{kind}\"; config files support power_sum only"),
        ));
    }
    let mut allowed = vec!["kind".to_string()];
    for i in 1..=n {
        for p in ["alpha", "p", "beta", "q", "gamma"] {
            allowed.push(format!("{p}_{i}"));
        }
    }
    let allowed: Vec<&str> = allowed.iter().map(String::as_str).collect();
    reject_unknown("f", table, &allowed)?;
    let mut params = [vec![], vec![], vec![], vec![], vec![]];
    for i in 1..=n {
        params[0].push(required("f", table, &format!("alpha_{i}"))?);
        params[1].push(required("f", table, &format!("p_{i}"))?);
        params[2].push(optional("f", table, &format!("beta_{i}"), 0.0)?);
        params[3].push(optional("f", table, &format!("q_{i}"), 0.0)?);
        params[4].push(optional("f", table, &format!("gamma_{i}"), 0.0)?);
    }
    let [alpha, p, beta, q, gamma] = params;
    PowerSum::new(alpha, p, beta, q, gamma)
        .map(Nonlinearity::power_sum)
        .map_err(|e| match e {
            Error::Invalid(m) => Error::config("f", "", m),
            other => other,
        })
}

/// Parses a problem file into a [`SystemSpec`].
pub fn parse_config(text: &str) -> Result<SystemSpec> {
    let root: Table = toml::from_str(text).map_err(|e| Error::config("", "", format!("malformed file: {e}")))?;
    reject_unknown("", &root, &["system", "a", "b", "f", "e"])?;
    let system = section(&root, "system")?;
    reject_unknown("system", system, &["n", "omega", "lambda"])?;
    let n = match system.get("n") {
        Some(Value::Integer(i)) if *i >= 1 => *i as usize,
        Some(_) => return Err(Error::config("system", "n", "expected a positive integer")),
        None => return Err(Error::config("system", "n", "missing")),
    };
    let omega = required("system", system, "omega")?;
    if omega <= 0.0 {
        return Err(Error::config("system", "omega", "must be positive"));
    }
    let lambda = required("system", system, "lambda")?;
    if lambda <= 0.0 {
        return Err(Error::config("system", "lambda", "must be positive"));
    }
    let a = family(&root, "a", n, omega)?;
    let b = family(&root, "b", n, omega)?;
    let f = nonlinearity(&root, n)?;
    let spec = SystemSpec::new(omega, a, b, f, lambda).map_err(|e| match e {
        Error::Invalid(m) => Error::config("system", "", m),
        other => other,
    })?;
    if root.contains_key("e") {
        let e = family(&root, "e", n, omega)?;
        return spec.with_forcing(e).map_err(|e| match e {
            Error::Invalid(m) => Error::config("e", "", m),
            other => other,
        });
    }
    Ok(spec)
}

/// Reads and parses a problem file.
pub fn load_config(path: &Path) -> Result<SystemSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::config("", "", format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

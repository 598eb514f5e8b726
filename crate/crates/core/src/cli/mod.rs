//! Batch front end: `constants`, `verify`, `solve` and `sweep` on a problem file.
//!
//! [`run`] drives one command and reports what it wrote; [`exit_code`] maps the outcome
//! to the process status (0 ok, 1 failed certificate or other failure, 2 hypothesis
//! violation, 3 no convergence, 4 configuration error).

mod config;
mod output;

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::certify::{build_certificate, CertifyOptions, ExistenceCase};
use crate::cone::ConeOperator;
use crate::error::{Error, Result};
use crate::kernel::{compute_constants, DEFAULT_GRID, MIN_GRID};
use crate::model::{validate_h1, validate_h2, SystemSpec};
use crate::solver::{lambda_grid, lambda_sweep, solve, Annulus, SolveOptions};

pub use config::{load_config, parse_config};
pub use output::{fmt_float, read_profile, write_profile, write_solutions, write_sweep};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Constants,
    Verify,
    Solve,
    Sweep,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LambdaRange {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    pub log: bool,
}

impl LambdaRange {
    /// Parses `min:max:steps` or `min:max:steps:log`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::config("cli", "--lambda-range", format!("{m} (expected a:b:n[:log], got {s:?})"));
        let parts: Vec<&str> = s.split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(bad("wrong number of fields"));
        }
        let min: f64 = parts[0].trim().parse().map_err(|_| bad("bad lower bound"))?;
        let max: f64 = parts[1].trim().parse().map_err(|_| bad("bad upper bound"))?;
        let steps: usize = parts[2].trim().parse().map_err(|_| bad("bad step count"))?;
        let log = match parts.get(3).map(|p| p.trim()) {
            None | Some("lin") | Some("linear") => false,
            Some("log") => true,
            Some(_) => return Err(bad("spacing must be log or linear")),
        };
        if !(min > 0.0 && max >= min && max.is_finite() && steps >= 1) {
            return Err(bad("need 0 < a <= b and n >= 1"));
        }
        Ok(Self { min, max, steps, log })
    }
}

/// Parses `ra:rb`.
pub fn parse_annulus(s: &str) -> Result<(f64, f64)> {
    let bad = || Error::config("cli", "--annulus", format!("expected ra:rb with 0 < ra < rb, got {s:?}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let ra: f64 = a.trim().parse().map_err(|_| bad())?;
    let rb: f64 = b.trim().parse().map_err(|_| bad())?;
    if !(ra > 0.0 && rb > ra && rb.is_finite()) {
        return Err(bad());
    }
    Ok((ra, rb))
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub config_path: PathBuf,
    /// Grid size `m`: a power of two, at least 16.
    pub grid: usize,
    /// Fixed-point tolerance in `(0, 1e-3]`.
    pub tol: f64,
    pub lambda: Option<f64>,
    pub lambda_range: Option<LambdaRange>,
    pub annulus: Option<(f64, f64)>,
    pub seed: u64,
    pub out: PathBuf,
    pub case: Option<ExistenceCase>,
    /// Include the forcing term `e` in `solve` and `sweep`.
    pub forcing: bool,
}

impl RunConfig {
    pub fn new(command: Command, config_path: impl Into<PathBuf>) -> Self {
        Self {
            command,
            config_path: config_path.into(),
            grid: DEFAULT_GRID,
            tol: 1e-9,
            lambda: None,
            lambda_range: None,
            annulus: None,
            seed: 0,
            out: PathBuf::from("."),
            case: None,
            forcing: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid < MIN_GRID || !self.grid.is_power_of_two() {
            return Err(Error::config(
                "cli",
                "--grid",
                format!("must be a power of two >= {MIN_GRID}, got {}", self.grid),
            ));
        }
        if !(self.tol > 0.0 && self.tol <= 1e-3) {
            return Err(Error::config("cli", "--tol", format!("must lie in (0, 1e-3], got {}", self.tol)));
        }
        if let Some(l) = self.lambda {
            if !(l > 0.0 && l.is_finite()) {
                return Err(Error::config("cli", "--lambda", format!("must be positive, got {l}")));
            }
        }
        if let Some((ra, rb)) = self.annulus {
            Annulus::new(ra, rb).map_err(|e| Error::config("cli", "--annulus", e.to_string()))?;
        }
        if self.command == Command::Sweep && self.lambda_range.is_none() {
            return Err(Error::config("cli", "--lambda-range", "required by sweep"));
        }
        Ok(())
    }
}

/// What a successful command produced.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunSummary {
    pub files: Vec<PathBuf>,
    /// Set by `verify`.
    pub certificate_pass: Option<bool>,
}

pub fn exit_code(result: &Result<RunSummary>) -> i32 {
    match result {
        Ok(RunSummary {
            certificate_pass: Some(false),
            ..
        }) => 1,
        Ok(_) => 0,
        Err(Error::Hypothesis(_)) => 2,
        Err(Error::NonConvergence { .. }) => 3,
        Err(Error::Config { .. }) => 4,
        Err(_) => 1,
    }
}

fn load(config: &RunConfig) -> Result<SystemSpec> {
    let spec = load_config(&config.config_path)?;
    match config.lambda {
        Some(l) => spec.with_lambda(l),
        None => Ok(spec),
    }
}

fn check_hypotheses(spec: &SystemSpec, config: &RunConfig) -> Result<()> {
    let mut messages = validate_h1(spec, config.grid)?.messages();
    messages.extend(validate_h2(spec.f(), spec.n(), 1000, config.seed)?.messages());
    if messages.is_empty() {
        Ok(())
    } else {
        Err(Error::Hypothesis(messages.join("; ")))
    }
}

fn solve_options(config: &RunConfig) -> Result<SolveOptions> {
    Ok(SolveOptions {
        tol: config.tol,
        annulus: config.annulus.map(|(ra, rb)| Annulus::new(ra, rb)).transpose()?,
        seed: config.seed,
        ..SolveOptions::default()
    })
}

fn prepare_out(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    Ok(())
}

/// Runs one command, printing a human-readable summary to `out`.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<RunSummary> {
    config.validate()?;
    let spec = load(config)?;
    match config.command {
        Command::Constants => {
            let c = compute_constants(&spec, config.grid)?;
            for (i, s) in c.sigma_i.iter().enumerate() {
                writeln!(out, "sigma_{} = {s:.10}", i + 1)?;
            }
            writeln!(out, "sigma = {:.10}", c.sigma)?;
            writeln!(out, "Gamma = {:.10}", c.gamma)?;
            writeln!(out, "chi = {:.10}", c.chi)?;
            for i in 0..spec.n() {
                writeln!(
                    out,
                    "green_{} in [{:.10}, {:.10}]",
                    i + 1,
                    c.green_lower[i],
                    c.green_upper[i]
                )?;
            }
            Ok(RunSummary::default())
        }
        Command::Verify => {
            check_hypotheses(&spec, config)?;
            let op = ConeOperator::new(&spec, config.grid)?;
            let case = match config.case.or_else(|| ExistenceCase::detect(&op)) {
                Some(c) => c,
                None => {
                    return Err(Error::Hypothesis(
                        "nonlinearity is not singular at 0; no existence case applies".into(),
                    ))
                }
            };
            let cert = build_certificate(&op, case, spec.lambda(), &CertifyOptions::default())?;
            prepare_out(&config.out)?;
            let path = config.out.join("certificate.toml");
            std::fs::write(&path, cert.to_toml()?)?;
            writeln!(
                out,
                "case {} at lambda = {}: {} ({})",
                case.as_str(),
                spec.lambda(),
                if cert.overall { "pass" } else { "FAIL" },
                cert.label
            )?;
            for check in &cert.checks {
                writeln!(
                    out,
                    "  [{}] {}: {:.6e} vs {:.6e}",
                    if check.pass { "ok" } else { "fail" },
                    check.condition,
                    check.value,
                    check.threshold
                )?;
            }
            writeln!(out, "wrote {}", path.display())?;
            Ok(RunSummary {
                files: vec![path],
                certificate_pass: Some(cert.overall),
            })
        }
        Command::Solve => {
            check_hypotheses(&spec, config)?;
            let op = ConeOperator::new(&spec, config.grid)?.with_forcing(config.forcing);
            let report = solve(&op, &solve_options(config)?)?;
            if report.solutions.is_empty() {
                let history: Vec<f64> = report.attempts.iter().map(|a| a.residual).collect();
                let residual = history.iter().copied().filter(|r| r.is_finite()).fold(f64::INFINITY, f64::min);
                return Err(Error::NonConvergence {
                    iterations: report.attempts.iter().map(|a| a.iterations).max().unwrap_or(0),
                    residual,
                    history,
                });
            }
            prepare_out(&config.out)?;
            let mut files = vec![config.out.join("solutions.csv")];
            write_solutions(&files[0], &report)?;
            for s in &report.solutions {
                let path = config.out.join(format!("profile_{}.csv", s.id));
                write_profile(&path, &s.u)?;
                files.push(path);
            }
            writeln!(out, "lambda = {}: {} solution(s)", report.lambda, report.solutions.len())?;
            for s in &report.solutions {
                writeln!(
                    out,
                    "  #{} norm {:.12} fp {:.2e} ode {:.2e} poincare {:.2e} ({}, {} it)",
                    s.id,
                    s.norm,
                    s.fp_residual,
                    s.ode_residual,
                    s.poincare_mismatch,
                    s.method.as_str(),
                    s.iterations
                )?;
            }
            Ok(RunSummary {
                files,
                certificate_pass: None,
            })
        }
        Command::Sweep => {
            check_hypotheses(&spec, config)?;
            let range = config
                .lambda_range
                .ok_or_else(|| Error::config("cli", "--lambda-range", "required by sweep"))?;
            let lambdas = lambda_grid(range.min, range.max, range.steps, range.log)?;
            let op = ConeOperator::new(&spec, config.grid)?.with_forcing(config.forcing);
            let rows = lambda_sweep(&op, &lambdas, &solve_options(config)?)?;
            prepare_out(&config.out)?;
            let path = config.out.join("sweep.csv");
            write_sweep(&path, &rows)?;
            for row in &rows {
                let norms: Vec<String> = row.norms.iter().map(|x| format!("{x:.8}")).collect();
                writeln!(out, "lambda {:.6e}: {} [{}]", row.lambda, row.count, norms.join(", "))?;
            }
            writeln!(out, "wrote {}", path.display())?;
            Ok(RunSummary {
                files: vec![path],
                certificate_pass: None,
            })
        }
    }
}

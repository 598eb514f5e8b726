//! CSV tables written by the batch commands.
//!
//! Floats are written as `{:.16e}` (17 significant digits) so every value round-trips.

use std::path::Path;

use crate::error::{Error, Result};
use crate::kernel::GridFunction;
use crate::solver::{SolveReport, SweepRow};

pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// `solutions.csv`: one row per solution.
pub fn write_solutions(path: &Path, report: &SolveReport) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record([
        "lambda",
        "solution_id",
        "norm",
        "fp_residual",
        "ode_residual",
        "poincare_mismatch",
        "iterations",
    ])?;
    for s in &report.solutions {
        w.write_record([
            fmt_float(report.lambda),
            s.id.to_string(),
            fmt_float(s.norm),
            fmt_float(s.fp_residual),
            fmt_float(s.ode_residual),
            fmt_float(s.poincare_mismatch),
            s.iterations.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `profile_<id>.csv`: columns `t, u_1, ..., u_n` on the grid nodes.
pub fn write_profile(path: &Path, u: &GridFunction) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    let mut header = vec!["t".to_string()];
    header.extend((1..=u.n()).map(|i| format!("u_{i}")));
    w.write_record(&header)?;
    for k in 0..u.m() {
        let mut row = vec![fmt_float(u.node(k))];
        row.extend((0..u.n()).map(|i| fmt_float(u.get(i, k))));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Reloads a profile written by [`write_profile`].
pub fn read_profile(path: &Path, omega: f64) -> Result<GridFunction> {
    let mut r = csv::Reader::from_path(path)?;
    let n = r.headers()?.len().saturating_sub(1);
    if n == 0 {
        return Err(Error::Invalid(format!("{}: no component columns", path.display())));
    }
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for record in r.records() {
        let record = record?;
        let vals = record
            .iter()
            .skip(1)
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Invalid(format!("{}: bad value {s:?}: {e}", path.display())))
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(vals);
    }
    let m = rows.len();
    let values = (0..n).flat_map(|i| rows.iter().map(move |row| row[i])).collect();
    GridFunction::new(n, m, omega, values)
}

/// `sweep.csv`: `lambda, count, norms` with norms `;`-separated in increasing order.
pub fn write_sweep(path: &Path, rows: &[SweepRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["lambda", "count", "norms", "error"])?;
    for row in rows {
        let norms: Vec<String> = row.norms.iter().map(|&x| fmt_float(x)).collect();
        w.write_record([
            fmt_float(row.lambda),
            row.count.to_string(),
            norms.join(";"),
            row.error.clone().unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("profile_1.csv");
        let u = GridFunction::from_fn(2, 32, 1.7, |i, t| 1.0 / 3.0 + (i as f64 + t).sin().powi(2)).unwrap();
        write_profile(&path, &u).unwrap();
        let back = read_profile(&path, 1.7).unwrap();
        assert_eq!(back, u);
    }
}

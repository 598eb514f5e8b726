//! Sampled extrema of the nonlinearity over norm shells, and random cone elements.
//!
//! `M(r)`, `m(r)` and `f_hat_i(theta)` are estimated by evaluating `f` on a log-radial by
//! simplex-direction grid, then refining the best sample by golden-section search in the
//! radius and coordinate moves on the simplex. The results are sample extrema: a sampled
//! maximum can only under-estimate the true maximum and a sampled minimum can only
//! over-estimate the true minimum.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kernel::GridFunction;
use crate::model::{random_simplex, Nonlinearity};

const SEARCH_SEED: u64 = 0x5eed_c0de;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Sense {
    Max,
    Min,
}

impl Sense {
    fn better(self, a: f64, b: f64) -> bool {
        match self {
            Sense::Max => a > b,
            Sense::Min => a < b,
        }
    }
}

/// A sampled extremum of some score of `f_i(u)` over a shell.
#[derive(Clone, Debug, PartialEq)]
pub struct ShellExtremum {
    pub value: f64,
    pub component: usize,
    pub point: Vec<f64>,
}

/// What is being optimized at state `u` with norm `rho` for component `i`.
pub(crate) type Score<'a> = &'a dyn Fn(usize, &[f64], f64) -> f64;

pub(crate) struct ShellSearch<'a> {
    pub f: &'a Nonlinearity,
    pub n: usize,
    pub components: Vec<usize>,
    pub budget: usize,
    pub sense: Sense,
}

impl ShellSearch<'_> {
    fn directions(&self) -> Vec<Vec<f64>> {
        let n = self.n;
        let bary = vec![1.0 / n as f64; n];
        if n == 1 || self.f.is_radial() {
            return vec![bary];
        }
        let mut dirs = vec![bary];
        for j in 0..n {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            dirs.push(e);
        }
        if n <= 6 {
            for j in 0..n {
                for k in j + 1..n {
                    let mut e = vec![0.0; n];
                    e[j] = 0.5;
                    e[k] = 0.5;
                    dirs.push(e);
                }
            }
        }
        let target = (self.budget / 64).max(dirs.len());
        let mut rng = ChaCha8Rng::seed_from_u64(SEARCH_SEED);
        let mut d = vec![0.0; n];
        while dirs.len() < target {
            random_simplex(&mut rng, &mut d);
            dirs.push(d.clone());
        }
        dirs
    }

    fn eval(&self, score: Score<'_>, i: usize, dir: &[f64], rho: f64, buf: &mut [f64]) -> Result<f64> {
        for (b, d) in buf.iter_mut().zip(dir) {
            *b = d * rho;
        }
        let v = score(i, buf, rho);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Evaluation {
                what: format!("f_{} at u = {buf:?}", i + 1),
                t: 0.0,
            })
        }
    }

    /// Runs the search over radii `radii` (ascending), returning the best sample and the
    /// number of evaluations spent.
    pub fn run(&self, score: Score<'_>, radii: &[f64]) -> Result<(ShellExtremum, usize)> {
        let dirs = self.directions();
        let mut buf = vec![0.0; self.n];
        let mut evals = 0usize;
        // (value, component, direction, radius index)
        let mut best: Option<(f64, usize, usize, usize)> = None;
        for &i in &self.components {
            for (di, dir) in dirs.iter().enumerate() {
                for (ri, &rho) in radii.iter().enumerate() {
                    let v = self.eval(score, i, dir, rho, &mut buf)?;
                    evals += 1;
                    if best.is_none_or(|b| self.sense.better(v, b.0)) {
                        best = Some((v, i, di, ri));
                    }
                }
            }
        }
        let (mut value, i, di, ri) = best.ok_or_else(|| Error::Invalid("empty shell search".into()))?;
        let mut dir = dirs[di].clone();
        let mut rho = radii[ri];

        let lo = radii[ri.saturating_sub(1)];
        let hi = radii[(ri + 1).min(radii.len() - 1)];
        let (r, v, e) = self.golden(score, i, &dir, lo, hi, &mut buf)?;
        evals += e;
        if self.sense.better(v, value) {
            value = v;
            rho = r;
        }

        if dirs.len() > 1 {
            let mut step: f64 = 0.25;
            while step > 1e-9 && evals < self.budget * 4 {
                let mut improved = false;
                for j in 0..self.n {
                    for k in 0..self.n {
                        if j == k || dir[k] <= 0.0 {
                            continue;
                        }
                        let t = step.min(dir[k]);
                        let mut trial = dir.clone();
                        trial[k] -= t;
                        trial[j] += t;
                        let v = self.eval(score, i, &trial, rho, &mut buf)?;
                        evals += 1;
                        if self.sense.better(v, value) {
                            value = v;
                            dir = trial;
                            improved = true;
                        }
                    }
                }
                if !improved {
                    step *= 0.5;
                }
            }
            let (r, v, e) = self.golden(score, i, &dir, radii[0], radii[radii.len() - 1], &mut buf)?;
            evals += e;
            if self.sense.better(v, value) {
                value = v;
                rho = r;
            }
        }

        let point = dir.iter().map(|d| d * rho).collect();
        Ok((
            ShellExtremum {
                value,
                component: i,
                point,
            },
            evals,
        ))
    }

    /// Golden-section search in `log rho` on `[lo, hi]`.
    fn golden(
        &self,
        score: Score<'_>,
        i: usize,
        dir: &[f64],
        lo: f64,
        hi: f64,
        buf: &mut [f64],
    ) -> Result<(f64, f64, usize)> {
        const INV_PHI: f64 = 0.618_033_988_749_894_9;
        if !(hi > lo) {
            let v = self.eval(score, i, dir, lo, buf)?;
            return Ok((lo, v, 1));
        }
        // minimize the signed objective
        let sign = match self.sense {
            Sense::Max => -1.0,
            Sense::Min => 1.0,
        };
        let (mut a, mut b) = (lo.ln(), hi.ln());
        let mut c = b - INV_PHI * (b - a);
        let mut d = a + INV_PHI * (b - a);
        let mut fc = sign * self.eval(score, i, dir, c.exp(), buf)?;
        let mut fd = sign * self.eval(score, i, dir, d.exp(), buf)?;
        let mut evals = 2;
        while (b - a).abs() > 1e-12 * (1.0 + a.abs().max(b.abs())) && evals < 200 {
            if fc < fd {
                b = d;
                d = c;
                fd = fc;
                c = b - INV_PHI * (b - a);
                fc = sign * self.eval(score, i, dir, c.exp(), buf)?;
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + INV_PHI * (b - a);
                fd = sign * self.eval(score, i, dir, d.exp(), buf)?;
            }
            evals += 1;
        }
        let (x, fx) = if fc < fd { (c, fc) } else { (d, fd) };
        Ok((x.exp(), sign * fx, evals))
    }
}

/// `count` log-spaced radii from `lo` to `hi` inclusive.
pub(crate) fn log_radii(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if hi <= lo || count < 2 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    let mut out: Vec<f64> = (0..count)
        .map(|j| (a + (b - a) * j as f64 / (count - 1) as f64).exp())
        .collect();
    out[0] = lo;
    out[count - 1] = hi;
    out
}

fn radial_count(f: &Nonlinearity, n: usize, budget: usize) -> usize {
    if n == 1 || f.is_radial() {
        budget.max(2)
    } else {
        64
    }
}

/// Sampled `M(r)` and `m(r)` over `sigma r <= |u| <= r`.
#[derive(Clone, Debug, PartialEq)]
pub struct AnnulusStats {
    pub r: f64,
    /// `M(r)`
    pub max: f64,
    /// `m(r)`
    pub min: f64,
    pub sample_count: usize,
    pub argmax: Vec<f64>,
    pub argmin: Vec<f64>,
}

pub fn annulus_stats(r: f64, f: &Nonlinearity, sigma: f64, n: usize, budget: usize) -> Result<AnnulusStats> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("annulus radius must be positive, got {r}")));
    }
    if budget < 1000 {
        return Err(Error::Invalid(format!("sampling budget must be >= 1000, got {budget}")));
    }
    let radii = log_radii(sigma * r, r, radial_count(f, n, budget / n.max(1)));
    let score = |i: usize, u: &[f64], _rho: f64| f.eval(i, u);
    let components: Vec<usize> = (0..n).collect();
    let (hi, e1) = ShellSearch {
        f,
        n,
        components: components.clone(),
        budget,
        sense: Sense::Max,
    }
    .run(&score, &radii)?;
    let (lo, e2) = ShellSearch {
        f,
        n,
        components,
        budget,
        sense: Sense::Min,
    }
    .run(&score, &radii)?;
    Ok(AnnulusStats {
        r,
        max: hi.value,
        min: lo.value,
        sample_count: e1 + e2,
        argmax: hi.point,
        argmin: lo.point,
    })
}

/// Radii `10^{j/64} < theta` together with `theta` itself, so larger shells reuse every
/// radius of smaller ones.
fn fhat_radii(theta: f64) -> Vec<f64> {
    let mut out: Vec<f64> = (0..)
        .map(|j| 10f64.powf(j as f64 / 64.0))
        .take_while(|&r| r < theta)
        .collect();
    out.push(theta);
    out
}

/// `f_hat_i(theta) = max { f_i(u) : 1 <= |u| <= theta }` for every component.
pub fn f_hat(theta: f64, f: &Nonlinearity, n: usize, budget: usize) -> Result<Vec<f64>> {
    if !(theta >= 1.0 && theta.is_finite()) {
        return Err(Error::Domain(format!("f_hat needs theta >= 1, got {theta}")));
    }
    let radii = fhat_radii(theta);
    let score = |i: usize, u: &[f64], _rho: f64| f.eval(i, u);
    (0..n)
        .map(|i| {
            ShellSearch {
                f,
                n,
                components: vec![i],
                budget,
                sense: Sense::Max,
            }
            .run(&score, &radii)
            .map(|(e, _)| e.value)
        })
        .collect()
}

/// A random element of the cone with `||u|| = r`:
/// `u_i(t) = c_i (sigma_i + (1 - sigma_i) s_i(t))`, `s_i` a smooth periodic profile with
/// grid range exactly `[0, 1]` and `sum_i c_i = r`.
pub fn random_cone_element<R: Rng>(rng: &mut R, sigma_i: &[f64], m: usize, omega: f64, r: f64) -> Result<GridFunction> {
    let n = sigma_i.len();
    let mut weights = vec![0.0; n];
    random_simplex(rng, &mut weights);
    let mut values = Vec::with_capacity(n * m);
    for i in 0..n {
        let degree = rng.random_range(1..=3usize);
        let coeffs: Vec<(f64, f64)> = (0..degree)
            .map(|_| (rng.random_range(-1.0..1.0), rng.random_range(0.0..2.0 * PI)))
            .collect();
        let raw: Vec<f64> = (0..m)
            .map(|k| {
                let t = k as f64 / m as f64;
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, (amp, ph))| amp * (2.0 * PI * (j + 1) as f64 * t + ph).sin())
                    .sum()
            })
            .collect();
        let lo = raw.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = raw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let span = hi - lo;
        let c = weights[i] * r;
        for x in raw {
            let s = if span > 1e-12 { (x - lo) / span } else { 1.0 };
            values.push(c * (sigma_i[i] + (1.0 - sigma_i[i]) * s));
        }
    }
    GridFunction::new(n, m, omega, values)
}

//! Empirical CDFs, nearest-rank percentiles, outage fractions and log-log
//! scaling fits over pooled per-user results.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::rng_from_seed;

#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCdf {
    sorted: Vec<f64>,
}

impl EmpiricalCdf {
    /// Accepts any non-NaN values, including infinities.
    pub fn new(samples: &[f64]) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptyPopulation("cannot build a CDF from zero samples".into()));
        }
        if samples.iter().any(|v| v.is_nan()) {
            return Err(Error::param("CDF samples must not be NaN"));
        }
        let mut sorted = samples.to_vec();
        sorted.sort_by(f64::total_cmp);
        Ok(Self { sorted })
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn sorted_values(&self) -> &[f64] {
        &self.sorted
    }

    /// Right-continuous `F(x) = #{v <= x} / n`.
    pub fn eval(&self, x: f64) -> f64 {
        let count = self.sorted.partition_point(|&v| v <= x);
        count as f64 / self.sorted.len() as f64
    }

    /// Nearest-rank percentile: the value at rank `ceil(p n)` (1-based).
    ///
    /// `p n` is reduced by 1e-9 before the ceiling so that products such as
    /// `0.07 * 100 = 7.000000000000001` land on the intended rank.
    pub fn percentile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::param(format!("percentile must be in (0, 1], got {p}")));
        }
        let n = self.sorted.len();
        let rank = ((p * n as f64 - 1e-9).ceil() as usize).clamp(1, n);
        Ok(self.sorted[rank - 1])
    }

    pub fn median(&self) -> f64 {
        self.percentile(0.5).expect("0.5 is a valid percentile")
    }

    /// One `(value, F(value))` row per distinct value.
    pub fn steps(&self) -> Vec<(f64, f64)> {
        let n = self.sorted.len() as f64;
        let mut out: Vec<(f64, f64)> = Vec::new();
        for (i, &v) in self.sorted.iter().enumerate() {
            let cum = (i + 1) as f64 / n;
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 = cum,
                _ => out.push((v, cum)),
            }
        }
        out
    }
}

pub fn percentile(cdf: &EmpiricalCdf, p: f64) -> Result<f64> {
    cdf.percentile(p)
}

/// Fraction of users whose rate is strictly below `target_bps`.
pub fn outage_rate(rates: &[f64], target_bps: f64) -> Result<f64> {
    if rates.is_empty() {
        return Err(Error::EmptyPopulation("no users to count".into()));
    }
    if !(target_bps >= 0.0) {
        return Err(Error::param("target rate must be >= 0"));
    }
    Ok(rates.iter().filter(|&&r| r < target_bps).count() as f64 / rates.len() as f64)
}

/// Ordinary least-squares slope of `ln(value)` against `ln(density)`.
pub fn fit_scaling_exponent(densities: &[f64], values: &[f64]) -> Result<f64> {
    if densities.len() != values.len() {
        return Err(Error::param("densities and values differ in length"));
    }
    if densities.len() < 3 {
        return Err(Error::param("need at least 3 points for a scaling fit"));
    }
    if densities.iter().chain(values).any(|&v| !(v > 0.0 && v.is_finite())) {
        return Err(Error::param("scaling fit needs strictly positive finite entries"));
    }
    let xs: Vec<f64> = densities.iter().map(|d| d.ln()).collect();
    let ys: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::param("densities must not all be equal"));
    }
    Ok(sxy / sxx)
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Percentile-bootstrap confidence interval of `statistic` at `level`
/// (e.g. 0.99), resampling `samples` with replacement.
pub fn bootstrap_ci<F>(samples: &[f64], statistic: F, resamples: usize, level: f64, seed: u64) -> Result<(f64, f64)>
where
    F: Fn(&[f64]) -> f64,
{
    if samples.is_empty() {
        return Err(Error::EmptyPopulation("cannot bootstrap zero samples".into()));
    }
    if resamples == 0 || !(level > 0.0 && level < 1.0) {
        return Err(Error::param("bootstrap needs resamples > 0 and level in (0, 1)"));
    }
    let mut rng = rng_from_seed(seed);
    let mut buf = vec![0.0; samples.len()];
    let mut stats = Vec::with_capacity(resamples);
    for _ in 0..resamples {
        for slot in buf.iter_mut() {
            *slot = samples[rng.gen_range(0..samples.len())];
        }
        stats.push(statistic(&buf));
    }
    let cdf = EmpiricalCdf::new(&stats)?;
    let tail = 0.5 * (1.0 - level);
    Ok((cdf.percentile(tail)?, cdf.percentile(1.0 - tail)?))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub densities: Vec<f64>,
    pub median_rate: Vec<f64>,
    pub p05_rate: Vec<f64>,
    pub mean_rate: Vec<f64>,
    pub outage_fraction: Vec<f64>,
    /// Log-log slope of the mean user rate; `None` when some mean is zero.
    pub fitted_exponent: Option<f64>,
}

//! Box-dimension estimate: least-squares slope of `log Ñ(ε)` against
//! `log(1/ε)`.

use serde::Serialize;

use super::cloud::{PointCloud, ScaleSweep};
use super::covering::{covering_number, Mode};
use super::interval::IntervalUnion;
use crate::error::{domain, Result};
use crate::rational;

/// Anything that can report a covering count at scale `ε`.
pub trait CoverCount {
    fn ambient_dim(&self) -> usize;
    fn cover_count(&self, eps: f64) -> Result<u64>;
}

/// Greedy farthest-point cover with centres in the cloud.
impl CoverCount for PointCloud {
    fn ambient_dim(&self) -> usize {
        self.dim()
    }

    fn cover_count(&self, eps: f64) -> Result<u64> {
        Ok(covering_number(self, eps, Mode::Greedy)?.count() as u64)
    }
}

/// Exact optimal cover by closed segments.
impl CoverCount for IntervalUnion {
    fn ambient_dim(&self) -> usize {
        1
    }

    fn cover_count(&self, eps: f64) -> Result<u64> {
        self.covering_count(&rational::from_f64(eps)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionFit {
    /// Slope clamped to `[0, n]`.
    pub slope: f64,
    /// Unclamped least-squares slope.
    pub raw_slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fit in log space.
    pub residual: f64,
    /// Standard error of the slope (0 with fewer than three scales).
    pub slope_stderr: f64,
    /// `(ε, Ñ(ε))` per scale.
    pub per_scale: Vec<(f64, u64)>,
    /// All counts equal; slope forced to 0.
    pub degenerate: bool,
    pub clamped: bool,
}

impl DimensionFit {
    /// `slope ± 2·stderr`, clipped to `[0, n]`.
    pub fn interval(&self, n: usize) -> (f64, f64) {
        let w = 2.0 * self.slope_stderr;
        ((self.slope - w).max(0.0), (self.slope + w).min(n as f64))
    }
}

pub fn box_dimension_estimate<S: CoverCount + ?Sized>(set: &S, sweep: &ScaleSweep) -> Result<DimensionFit> {
    let counts = sweep
        .scales()
        .into_iter()
        .map(|eps| Ok((eps, set.cover_count(eps)?)))
        .collect::<Result<Vec<_>>>()?;
    box_dimension_from_counts(&counts, set.ambient_dim())
}

/// Fit from precomputed `(ε, count)` pairs; needs at least four scales.
pub fn box_dimension_from_counts(counts: &[(f64, u64)], n: usize) -> Result<DimensionFit> {
    if counts.len() < 4 {
        return Err(domain(format!("need at least 4 scales, got {}", counts.len())));
    }
    if counts.iter().any(|&(eps, c)| !(eps > 0.0) || c == 0) {
        return Err(domain("scales must be positive and counts non-zero"));
    }
    let xs: Vec<f64> = counts.iter().map(|&(e, _)| -e.ln()).collect();
    let ys: Vec<f64> = counts.iter().map(|&(_, c)| (c as f64).ln()).collect();
    let k = xs.len() as f64;
    let xbar = xs.iter().sum::<f64>() / k;
    let ybar = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - xbar).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xbar) * (y - ybar)).sum();
    if sxx <= 0.0 {
        return Err(domain("scales must be distinct"));
    }
    let degenerate = counts.iter().all(|&(_, c)| c == counts[0].1);
    let raw_slope = if degenerate { 0.0 } else { sxy / sxx };
    let intercept = ybar - raw_slope * xbar;
    let sse: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - raw_slope * x).powi(2))
        .sum();
    let slope_stderr = if xs.len() > 2 {
        (sse / (k - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    let slope = raw_slope.clamp(0.0, n as f64);
    Ok(DimensionFit {
        slope,
        raw_slope,
        intercept,
        residual: (sse / k).sqrt(),
        slope_stderr,
        per_scale: counts.to_vec(),
        degenerate,
        clamped: slope != raw_slope,
    })
}

use serde::Serialize;

use super::span::ZeroSet;
use super::spherical::SphericalZeroSet;
use crate::error::{domain, Result};
use crate::geometry::DimensionFit;

/// Dimension estimate of the zero data with a confidence interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DimensionInput {
    pub estimate: f64,
    pub low: f64,
    pub high: f64,
}

impl DimensionInput {
    pub fn exact(value: f64) -> Self {
        Self {
            estimate: value,
            low: value,
            high: value,
        }
    }

    pub fn from_fit(fit: &DimensionFit, n: usize) -> Self {
        let (low, high) = fit.interval(n);
        Self {
            estimate: fit.slope,
            low,
            high,
        }
    }
}

/// What the verdict speaks about.
pub enum ZeroData<'a> {
    /// Radii `r` on which `f̂` vanishes identically on the sphere `|ξ| = r`.
    Radial(&'a SphericalZeroSet),
    /// The zero set of `f̂` itself.
    Full(&'a ZeroSet),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PInterval {
    pub low: f64,
    /// `f64::INFINITY` serialises as `null`.
    pub high: Option<f64>,
    pub low_closed: bool,
    pub high_closed: bool,
}

impl PInterval {
    pub fn contains(&self, p: f64) -> bool {
        let above = if self.low_closed { p >= self.low } else { p > self.low };
        let below = match self.high {
            None => true,
            Some(h) if self.high_closed => p <= h,
            Some(h) => p < h,
        };
        above && below
    }

    /// `self ⊇ other`.
    pub fn covers(&self, other: &PInterval) -> bool {
        let low_ok = self.low < other.low || (self.low == other.low && (self.low_closed || !other.low_closed));
        let high_ok = match (self.high, other.high) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(a), Some(b)) => a > b || (a == b && (self.high_closed || !other.high_closed)),
        };
        low_ok && high_ok
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Guaranteed,
    NoConclusion,
    /// Earlier results quoted for context; never asserted.
    ReferenceNotVerified,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictRow {
    pub id: &'static str,
    pub formula: &'static str,
    pub status: RowStatus,
    /// Interval at the point estimate.
    pub p_interval: Option<PInterval>,
    /// Range of the left endpoint as the dimension runs over its interval.
    pub left_endpoint_range: Option<(f64, f64)>,
    /// Interval valid for every dimension in the confidence interval.
    pub p_interval_conservative: Option<PInterval>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityVerdict {
    pub n: usize,
    pub kind: &'static str,
    pub dimension: DimensionInput,
    pub zero_count: usize,
    pub rows: Vec<VerdictRow>,
}

impl DensityVerdict {
    pub fn row(&self, id: &str) -> Option<&VerdictRow> {
        self.rows.iter().find(|r| r.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("verdict serialises")
    }
}

fn closed_open(low: f64) -> PInterval {
    PInterval {
        low,
        high: None,
        low_closed: true,
        high_closed: false,
    }
}

/// Left endpoint `2n/(n+1−β)`; the right endpoint is 2.
fn radial_left(n: f64, beta: f64) -> f64 {
    2.0 * n / (n + 1.0 - beta)
}

/// Left endpoint `2n/(2n−α)`.
fn full_left(n: f64, alpha: f64) -> f64 {
    2.0 * n / (2.0 * n - alpha)
}

fn radial_row(n: usize, dim: &DimensionInput) -> VerdictRow {
    let nf = n as f64;
    let formula = "2n/(n+1-beta) <= p <= 2, for finite packing beta-measure of the radii, 0 <= beta < 1";
    let make = |b: f64| PInterval {
        low: radial_left(nf, b),
        high: Some(2.0),
        low_closed: true,
        high_closed: true,
    };
    if !(dim.estimate >= 0.0 && dim.estimate < 1.0) {
        return VerdictRow {
            id: "radial-zero-set",
            formula,
            status: RowStatus::NoConclusion,
            p_interval: None,
            left_endpoint_range: None,
            p_interval_conservative: None,
            note: format!("beta estimate {} outside [0, 1): no conclusion from these results", dim.estimate),
        };
    }
    let conservative = (dim.high < 1.0).then(|| make(dim.high.max(0.0)));
    VerdictRow {
        id: "radial-zero-set",
        formula,
        status: RowStatus::Guaranteed,
        p_interval: Some(make(dim.estimate)),
        left_endpoint_range: Some((radial_left(nf, dim.low.max(0.0)), radial_left(nf, dim.high.min(1.0)))),
        p_interval_conservative: conservative,
        note: "rotations and translates of f span a dense subspace of L^p for p in the interval".into(),
    }
}

fn full_rows(n: usize, dim: &DimensionInput) -> Vec<VerdictRow> {
    let nf = n as f64;
    let specs: [(&'static str, &'static str, &str); 2] = [
        (
            "full-zero-set",
            "2n/(2n-alpha) <= p < inf, for zero set inside a set of finite packing alpha-measure, 0 <= alpha < n",
            "translates of f span a dense subspace of L^p for p in the interval",
        ),
        (
            "packing-measure-condition",
            "alpha <= 2n/q with 1/p + 1/q = 1, equivalently p >= 2n/(2n-alpha)",
            "finite packing alpha-measure of the zero set is sufficient for translates to span L^p",
        ),
    ];
    specs
        .iter()
        .map(|&(id, formula, note)| {
            if !(dim.estimate >= 0.0 && dim.estimate < nf) {
                return VerdictRow {
                    id,
                    formula,
                    status: RowStatus::NoConclusion,
                    p_interval: None,
                    left_endpoint_range: None,
                    p_interval_conservative: None,
                    note: format!("alpha estimate {} outside [0, {n}): no conclusion from these results", dim.estimate),
                };
            }
            VerdictRow {
                id,
                formula,
                status: RowStatus::Guaranteed,
                p_interval: Some(closed_open(full_left(nf, dim.estimate))),
                left_endpoint_range: Some((full_left(nf, dim.low.max(0.0)), full_left(nf, dim.high.min(nf)))),
                p_interval_conservative: (dim.high < nf).then(|| closed_open(full_left(nf, dim.high.max(0.0)))),
                note: note.into(),
            }
        })
        .collect()
}

fn reference_rows(n: usize) -> Vec<VerdictRow> {
    let nf = n as f64;
    let upper = if n > 1 { Some(2.0 * nf / (nf - 1.0)) } else { None };
    let row = |id, formula, p: Option<PInterval>| VerdictRow {
        id,
        formula,
        status: RowStatus::ReferenceNotVerified,
        p_interval: p,
        left_endpoint_range: None,
        p_interval_conservative: None,
        note: "reference (prior work, not verified here)".into(),
    };
    let mut rows = vec![
        row(
            "reference-p-equals-1",
            "p = 1: dense iff the radii set is empty and f_hat(0) != 0",
            Some(PInterval {
                low: 1.0,
                high: Some(1.0),
                low_closed: true,
                high_closed: true,
            }),
        ),
        row(
            "reference-small-p",
            "1 < p < 2n/(n+1): dense iff the radii set is empty",
            Some(PInterval {
                low: 1.0,
                high: Some(2.0 * nf / (nf + 1.0)),
                low_closed: false,
                high_closed: false,
            }),
        ),
        row(
            "reference-middle-p",
            "2 <= p <= 2n/(n-1): dense if the radii set has measure zero",
            Some(PInterval {
                low: 2.0,
                high: upper,
                low_closed: true,
                high_closed: upper.is_some(),
            }),
        ),
    ];
    if let Some(u) = upper {
        rows.push(row(
            "reference-large-p",
            "p > 2n/(n-1): dense iff the radii set is nowhere dense",
            Some(PInterval {
                low: u,
                high: None,
                low_closed: false,
                high_closed: false,
            }),
        ));
    }
    rows
}

/// Guaranteed-dense `p`-intervals for the measured zero data.
pub fn verdict(zero: ZeroData<'_>, dim: DimensionInput, n: usize) -> Result<DensityVerdict> {
    if n == 0 {
        return Err(domain("dimension n must be positive"));
    }
    if !(dim.low <= dim.estimate && dim.estimate <= dim.high) {
        return Err(domain("dimension interval must contain the estimate"));
    }
    let (kind, zero_count, rows) = match zero {
        ZeroData::Radial(s) => {
            let mut rows = vec![radial_row(n, &dim)];
            rows.extend(reference_rows(n));
            ("radial", s.radii.len(), rows)
        }
        ZeroData::Full(z) => ("full", z.len(), full_rows(n, &dim)),
    };
    Ok(DensityVerdict {
        n,
        kind,
        dimension: dim,
        zero_count,
        rows,
    })
}

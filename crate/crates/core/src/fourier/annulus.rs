use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::numeric::{pairwise_sum, unit_sphere_area, CompositeRule};

/// Octave trend below which the tail is called summable-like.
pub const TREND_THRESHOLD: f64 = 0.9;

/// Ratios averaged (geometrically) for the verdict.
const TREND_WINDOW: usize = 4;

/// Samples `ξ = spacing · k`, `k ∈ {−K..K}^dim`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralGrid {
    pub dim: usize,
    pub spacing: f64,
    pub half_extent: usize,
    pub values: Vec<Complex64>,
}

impl SpectralGrid {
    pub fn sample<F>(dim: usize, spacing: f64, half_extent: usize, f: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> Complex64,
    {
        if !(spacing > 0.0 && spacing.is_finite()) {
            return Err(domain("grid spacing must be positive"));
        }
        if dim == 0 || dim > 3 {
            return Err(domain("grid dimension must be 1, 2 or 3"));
        }
        let side = 2 * half_extent + 1;
        let total = side.pow(dim as u32);
        let mut values = Vec::with_capacity(total);
        let mut xi = vec![0.0; dim];
        for idx in 0..total {
            let mut rest = idx;
            for c in xi.iter_mut().rev() {
                *c = ((rest % side) as f64 - half_extent as f64) * spacing;
                rest /= side;
            }
            values.push(f(&xi));
        }
        Ok(Self {
            dim,
            spacing,
            half_extent,
            values,
        })
    }

    pub fn extent(&self) -> f64 {
        self.spacing * self.half_extent as f64
    }

    fn point(&self, idx: usize) -> Vec<f64> {
        let side = 2 * self.half_extent + 1;
        let mut rest = idx;
        let mut xi = vec![0.0; self.dim];
        for c in xi.iter_mut().rev() {
            *c = ((rest % side) as f64 - self.half_extent as f64) * self.spacing;
            rest /= side;
        }
        xi
    }
}

/// Something whose modulus can be integrated over annuli.
pub enum Spectrum<'a> {
    /// Modulus at a point of ℝⁿ.
    Callable(&'a dyn Fn(&[f64]) -> f64),
    /// Radial modulus, `|g(ξ)| = h(|ξ|)`.
    Radial(&'a dyn Fn(f64) -> f64),
    Grid(&'a SpectralGrid),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Trend {
    #[serde(rename = "summable-like")]
    SummableLike,
    #[serde(rename = "divergent-like")]
    DivergentLike,
}

impl std::fmt::Display for Trend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Trend::SummableLike => "summable-like",
            Trend::DivergentLike => "divergent-like",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OctaveRow {
    pub j: i32,
    pub integral: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnnulusReport {
    pub n: usize,
    pub q: f64,
    pub method: &'static str,
    pub octaves: Vec<OctaveRow>,
    /// `I_{j+1} / I_j` for consecutive octaves.
    pub ratios: Vec<f64>,
    /// Geometric mean of the last (up to four) ratios.
    pub trend: f64,
    pub verdict: Trend,
}

fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else if num > 0.0 {
        f64::INFINITY
    } else {
        0.0
    }
}

/// `∫_{2^j ≤ |ξ| ≤ 2^{j+1}} |g|^q` for `j = j0..=j1`, and a trend verdict.
///
/// The verdict describes the octave sequence only; it never asserts
/// membership in `L^q`.
pub fn lq_annulus_diagnostics(spectrum: Spectrum<'_>, n: usize, q: f64, j0: i32, j1: i32) -> Result<AnnulusReport> {
    if !(q >= 1.0 && q.is_finite()) {
        return Err(domain(format!("q must be finite and at least 1, got {q}")));
    }
    if j1 < j0 + 3 {
        return Err(domain("need at least four octaves"));
    }
    if !(1..=3).contains(&n) {
        return Err(domain("annulus diagnostics support n = 1, 2, 3"));
    }
    let rule = CompositeRule::new(8);
    let mut octaves = Vec::new();
    let method = match &spectrum {
        Spectrum::Callable(_) => "gauss-legendre radial, trapezoid angular",
        Spectrum::Radial(_) => "gauss-legendre radial",
        Spectrum::Grid(_) => "lattice sum",
    };
    if let Spectrum::Grid(g) = &spectrum {
        if g.dim != n {
            return Err(domain("grid dimension does not match n"));
        }
        if g.extent() < 2f64.powi(j1 + 1) {
            return Err(domain(format!(
                "grid extent {} does not cover the octave 2^{}",
                g.extent(),
                j1 + 1
            )));
        }
    }
    if matches!(spectrum, Spectrum::Callable(_)) && n == 3 {
        return Err(domain("pointwise spectra support n = 1, 2"));
    }
    for j in j0..=j1 {
        let (lo, hi) = (2f64.powi(j), 2f64.powi(j + 1));
        let panels = ((hi - lo).ceil() as usize).max(64);
        let integral = match &spectrum {
            Spectrum::Radial(h) => {
                let area = unit_sphere_area(n);
                rule.integrate(lo, hi, panels, |r| area * r.powi(n as i32 - 1) * h(r).powf(q))
            }
            Spectrum::Callable(g) if n == 1 => {
                rule.integrate(lo, hi, panels, |x| g(&[x]).powf(q) + g(&[-x]).powf(q))
            }
            Spectrum::Callable(g) => {
                let angles = ((8.0 * hi).ceil() as usize).max(128);
                let step = 2.0 * PI / angles as f64;
                let trig: Vec<(f64, f64)> = (0..angles).map(|k| (k as f64 * step).sin_cos()).collect();
                rule.integrate(lo, hi, panels, |r| {
                    let ring: Vec<f64> = trig.iter().map(|&(s, c)| g(&[r * c, r * s]).powf(q)).collect();
                    pairwise_sum(&ring) * step * r
                })
            }
            Spectrum::Grid(g) => {
                let cell = g.spacing.powi(n as i32);
                let vals: Vec<f64> = g
                    .values
                    .iter()
                    .enumerate()
                    .filter_map(|(i, v)| {
                        let r = g.point(i).iter().map(|x| x * x).sum::<f64>().sqrt();
                        (r >= lo && r < hi).then(|| v.norm().powf(q) * cell)
                    })
                    .collect();
                pairwise_sum(&vals)
            }
        };
        octaves.push(OctaveRow { j, integral });
    }
    let ratios: Vec<f64> = octaves.windows(2).map(|w| ratio(w[1].integral, w[0].integral)).collect();
    let k = TREND_WINDOW.min(ratios.len());
    let last = octaves.len() - 1;
    let trend = ratio(octaves[last].integral, octaves[last - k].integral).powf(1.0 / k as f64);
    let verdict = if trend < TREND_THRESHOLD {
        Trend::SummableLike
    } else {
        Trend::DivergentLike
    };
    Ok(AnnulusReport {
        n,
        q,
        method,
        octaves,
        ratios,
        trend,
        verdict,
    })
}

//! Atomic measures and the density statistics `(2r)^{-α} ν(B_r(x))`.

use serde::Serialize;

use super::cloud::{distance, ScaleSweep};
use crate::error::{domain, Result};
use crate::numeric::pairwise_sum;

/// Finite atomic measure `Σ w_i δ_{x_i}` on ℝⁿ with positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedMeasure {
    dim: usize,
    atoms: Vec<(Vec<f64>, f64)>,
    total: f64,
}

impl WeightedMeasure {
    pub fn new(dim: usize, atoms: Vec<(Vec<f64>, f64)>) -> Result<Self> {
        if dim == 0 {
            return Err(domain("ambient dimension must be at least 1"));
        }
        for (p, w) in &atoms {
            if p.len() != dim {
                return Err(domain(format!("atom {p:?} does not have dimension {dim}")));
            }
            if !(*w > 0.0 && w.is_finite()) {
                return Err(domain(format!("atom weight must be positive, got {w}")));
            }
        }
        let weights: Vec<f64> = atoms.iter().map(|a| a.1).collect();
        Ok(Self {
            dim,
            total: pairwise_sum(&weights),
            atoms,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[(Vec<f64>, f64)] {
        &self.atoms
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    /// ν(B_r(x)) for the open ball.
    pub fn ball_mass(&self, x: &[f64], r: f64) -> f64 {
        let w: Vec<f64> = self
            .atoms
            .iter()
            .filter(|(p, _)| distance(p, x) < r)
            .map(|a| a.1)
            .collect();
        pairwise_sum(&w)
    }

    fn check(&self) -> Result<()> {
        if self.atoms.is_empty() || self.total <= 0.0 {
            return Err(domain("measure has zero total mass"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityEstimate {
    /// Maximum of `(2r)^{-α} ν(B_r(x))` over the sampled radii; the sweep
    /// stand-in for the upper density.
    pub sup_ratio: f64,
    pub per_scale: Vec<(f64, f64)>,
}

pub fn upper_density_estimate(
    measure: &WeightedMeasure,
    x: &[f64],
    alpha: f64,
    sweep: &ScaleSweep,
) -> Result<DensityEstimate> {
    measure.check()?;
    if x.len() != measure.dim() {
        return Err(domain("query point has the wrong dimension"));
    }
    if !(alpha >= 0.0 && alpha <= measure.dim() as f64) {
        return Err(domain(format!("alpha must lie in [0, {}], got {alpha}", measure.dim())));
    }
    let per_scale: Vec<(f64, f64)> = sweep
        .scales()
        .into_iter()
        .map(|r| (r, (2.0 * r).powf(-alpha) * measure.ball_mass(x, r)))
        .collect();
    let sup_ratio = per_scale.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    Ok(DensityEstimate {
        sup_ratio,
        per_scale,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegularityReport {
    /// min over samples and radii of ν(B_r(x)) / r^α
    pub a_est: f64,
    /// max over samples and radii of ν(B_r(x)) / r^α
    pub b_est: f64,
    /// `b_est / a_est`
    pub spread: f64,
    /// `a_est > 0` on every tested ball. Empirical evidence only.
    pub certificate: bool,
    /// `spread ≤ threshold`; false flags non-regular scaling.
    pub regular: bool,
    pub threshold: f64,
}

/// Empirical Ahlfors–David check of `a r^α ≤ ν(B_r(x)) ≤ b r^α`.
pub fn ad_regularity_check(
    measure: &WeightedMeasure,
    alpha: f64,
    samples: &[Vec<f64>],
    radii: &[f64],
    threshold: f64,
) -> Result<RegularityReport> {
    measure.check()?;
    if samples.is_empty() || radii.is_empty() {
        return Err(domain("need at least one sample point and one radius"));
    }
    if radii.iter().any(|&r| !(r > 0.0 && r <= 1.0)) {
        return Err(domain("radii must lie in (0, 1]"));
    }
    let mut a = f64::INFINITY;
    let mut b = 0.0f64;
    for x in samples {
        for &r in radii {
            let q = measure.ball_mass(x, r) / r.powf(alpha);
            a = a.min(q);
            b = b.max(q);
        }
    }
    let spread = if a > 0.0 { b / a } else { f64::INFINITY };
    Ok(RegularityReport {
        a_est: a,
        b_est: b,
        spread,
        certificate: a > 0.0,
        regular: spread <= threshold,
        threshold,
    })
}

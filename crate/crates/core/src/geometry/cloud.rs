use std::cmp::Ordering;

use crate::error::{domain, Result};

/// Relative slack for distance comparisons, so that exact ties such as two
/// endpoints `3^{-m}` apart are resolved the same way regardless of rounding.
pub const TIE_REL: f64 = 1e-12;

/// `d ≤ r` up to [`TIE_REL`]: membership in the closed ball of radius `r`.
#[inline]
pub fn within(d: f64, r: f64) -> bool {
    d <= r * (1.0 + TIE_REL)
}

pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Finite point set in ℝⁿ, deduplicated and sorted lexicographically.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    dim: usize,
    points: Vec<Vec<f64>>,
}

impl PointCloud {
    pub fn new(dim: usize, mut points: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(domain("ambient dimension must be at least 1"));
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(domain(format!("point {p:?} does not have dimension {dim}")));
        }
        if points.iter().flatten().any(|x| !x.is_finite()) {
            return Err(domain("coordinates must be finite"));
        }
        points.sort_by(|a, b| lex_cmp(a, b));
        points.dedup();
        Ok(Self { dim, points })
    }

    pub fn from_1d(xs: &[f64]) -> Result<Self> {
        Self::new(1, xs.iter().map(|&x| vec![x]).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        distance(&self.points[i], &self.points[j])
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        self.points
            .binary_search_by(|q| lex_cmp(q, p))
            .is_ok()
    }
}

/// Geometric schedule `ε_k = eps_max · ratio^k`, `k = 0..count`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ScaleSweep {
    pub eps_max: f64,
    pub ratio: f64,
    pub count: usize,
}

impl ScaleSweep {
    pub fn new(eps_max: f64, ratio: f64, count: usize) -> Result<Self> {
        if !(eps_max > 0.0 && eps_max.is_finite()) {
            return Err(domain("eps_max must be positive"));
        }
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(domain("ratio must lie in (0, 1)"));
        }
        if count == 0 {
            return Err(domain("sweep needs at least one scale"));
        }
        Ok(Self {
            eps_max,
            ratio,
            count,
        })
    }

    /// Strictly decreasing positive scales.
    pub fn scales(&self) -> Vec<f64> {
        (0..self.count)
            .map(|k| self.eps_max * self.ratio.powi(k as i32))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedups_and_sorts() {
        let c = PointCloud::new(2, vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.points()[0], vec![0.0, 1.0]);
        assert!(c.contains(&[1.0, 0.0]));
    }

    #[test]
    fn rejects_mixed_dimensions() {
        assert!(PointCloud::new(2, vec![vec![1.0]]).is_err());
        assert!(PointCloud::new(0, vec![]).is_err());
    }

    #[test]
    fn sweep_is_strictly_decreasing() {
        let s = ScaleSweep::new(0.5, 1.0 / 3.0, 8).unwrap().scales();
        assert!(s.windows(2).all(|w| w[1] < w[0] && w[1] > 0.0));
        assert!(ScaleSweep::new(0.5, 1.0, 3).is_err());
    }
}

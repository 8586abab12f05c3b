//! Covering numbers `Ñ(E, ε)` (closed balls centred in `E`) and packing
//! numbers `P(E, ε)` (centres in `E`, pairwise distance `> 2ε`).

use serde::Serialize;

use super::cloud::{within, PointCloud};
use crate::error::{domain, Error, Result};

/// Default brute-force cap for exact modes.
pub const DEFAULT_CAP: usize = 15;
/// Exact modes refuse anything above this many points regardless of the cap.
pub const HARD_CAP: usize = 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Exhaustive subset search.
    Exact,
    /// Deterministic farthest-point traversal.
    Greedy,
}

/// A cover by closed balls centred at cloud points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cover {
    pub mode: Mode,
    pub radius: f64,
    /// Indices into the cloud's point list.
    pub centers: Vec<usize>,
}

impl Cover {
    pub fn count(&self) -> usize {
        self.centers.len()
    }
}

/// Disjoint open balls of a common radius centred at cloud points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Packing {
    pub mode: Mode,
    pub radius: f64,
    pub centers: Vec<Vec<f64>>,
}

impl Packing {
    pub fn count(&self) -> usize {
        self.centers.len()
    }

    /// All pairwise centre distances exceed `2 · radius`.
    pub fn is_disjoint(&self) -> bool {
        let r2 = 2.0 * self.radius;
        self.centers.iter().enumerate().all(|(i, a)| {
            self.centers[i + 1..]
                .iter()
                .all(|b| !within(super::cloud::distance(a, b), r2))
        })
    }

    /// Σ (2r)^s over the packing.
    pub fn weighted_sum(&self, s: f64) -> f64 {
        self.count() as f64 * (2.0 * self.radius).powf(s)
    }
}

/// Lower bound `P(E, ε/2) · ε^s` on the packing pre-measure `P^s_ε(E)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PremeasureBound {
    pub value: f64,
    /// Always `"lower_bound"`: this is not the supremum over packings.
    pub kind: &'static str,
    pub s: f64,
    pub eps: f64,
    pub packing: Packing,
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("eps must be positive, got {eps}")))
    }
}

fn check_cap(cloud: &PointCloud, cap: usize) -> Result<()> {
    let limit = cap.min(HARD_CAP);
    if cloud.len() > limit {
        return Err(Error::Size {
            what: "exact search points",
            needed: cloud.len() as u128,
            limit: limit as u128,
        });
    }
    Ok(())
}

/// Bitmask of points within `radius` (closed) of each point.
fn neighbour_masks(cloud: &PointCloud, radius: f64) -> Vec<u32> {
    let m = cloud.len();
    (0..m)
        .map(|i| {
            (0..m)
                .filter(|&j| within(cloud.dist(i, j), radius))
                .fold(0u32, |acc, j| acc | (1 << j))
        })
        .collect()
}

/// Farthest-point traversal starting from the lexicographically smallest
/// point; stops once every point is within `stop_radius` of a chosen one.
/// Ties go to the lower index, i.e. lexicographic order.
fn farthest_point_traversal(cloud: &PointCloud, stop_radius: f64) -> Vec<usize> {
    let m = cloud.len();
    if m == 0 {
        return Vec::new();
    }
    let mut chosen = vec![0];
    let mut nearest: Vec<f64> = (0..m).map(|j| cloud.dist(0, j)).collect();
    loop {
        let (far, d) = nearest
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (j, &d)| if d > best.1 { (j, d) } else { best });
        if within(d, stop_radius) {
            return chosen;
        }
        chosen.push(far);
        for (j, slot) in nearest.iter_mut().enumerate() {
            let d = cloud.dist(far, j);
            if d < *slot {
                *slot = d;
            }
        }
    }
}

pub fn covering_number(cloud: &PointCloud, eps: f64, mode: Mode) -> Result<Cover> {
    covering_number_capped(cloud, eps, mode, DEFAULT_CAP)
}

/// Minimum (exact) or greedy number of closed `eps`-balls centred in the
/// cloud that cover it.
pub fn covering_number_capped(cloud: &PointCloud, eps: f64, mode: Mode, cap: usize) -> Result<Cover> {
    check_eps(eps)?;
    let centers = match mode {
        Mode::Greedy => farthest_point_traversal(cloud, eps),
        Mode::Exact => {
            check_cap(cloud, cap)?;
            exact_cover(cloud, eps)
        }
    };
    Ok(Cover {
        mode,
        radius: eps,
        centers,
    })
}

fn exact_cover(cloud: &PointCloud, eps: f64) -> Vec<usize> {
    let m = cloud.len();
    if m == 0 {
        return Vec::new();
    }
    let reach = neighbour_masks(cloud, eps);
    let full: u32 = if m == 32 { u32::MAX } else { (1u32 << m) - 1 };
    let mut union = vec![0u32; 1 << m];
    let mut best: Option<u32> = None;
    for mask in 1u32..(1u32 << m) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        union[mask as usize] = union[rest as usize] | reach[low];
        if union[mask as usize] == full
            && best.is_none_or(|b| mask.count_ones() < b.count_ones())
        {
            best = Some(mask);
        }
    }
    let mask = best.expect("the full set always covers itself");
    (0..m).filter(|&i| mask & (1 << i) != 0).collect()
}

pub fn packing_number(cloud: &PointCloud, eps: f64, mode: Mode) -> Result<Packing> {
    packing_number_capped(cloud, eps, mode, DEFAULT_CAP)
}

/// Maximum (exact) or maximal greedy packing of open `eps`-balls centred
/// in the cloud.
pub fn packing_number_capped(cloud: &PointCloud, eps: f64, mode: Mode, cap: usize) -> Result<Packing> {
    check_eps(eps)?;
    let idx = match mode {
        Mode::Greedy => farthest_point_traversal(cloud, 2.0 * eps),
        Mode::Exact => {
            check_cap(cloud, cap)?;
            exact_packing(cloud, eps)
        }
    };
    Ok(Packing {
        mode,
        radius: eps,
        centers: idx.into_iter().map(|i| cloud.points()[i].clone()).collect(),
    })
}

fn exact_packing(cloud: &PointCloud, eps: f64) -> Vec<usize> {
    let m = cloud.len();
    if m == 0 {
        return Vec::new();
    }
    let conflict: Vec<u32> = neighbour_masks(cloud, 2.0 * eps)
        .into_iter()
        .enumerate()
        .map(|(i, mask)| mask & !(1 << i))
        .collect();
    let mut independent = vec![false; 1 << m];
    independent[0] = true;
    let mut best = 0u32;
    for mask in 1u32..(1u32 << m) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let ok = independent[rest as usize] && conflict[low] & rest == 0;
        independent[mask as usize] = ok;
        if ok && mask.count_ones() > best.count_ones() {
            best = mask;
        }
    }
    (0..m).filter(|&i| best & (1 << i) != 0).collect()
}

/// `P(E, ε/2) · ε^s`, using the exact packing under the default cap and the
/// greedy one above it (a smaller packing still gives a valid lower bound).
pub fn packing_premeasure_lower(cloud: &PointCloud, s: f64, eps: f64) -> Result<PremeasureBound> {
    check_eps(eps)?;
    if !(s >= 0.0 && s.is_finite()) {
        return Err(domain(format!("s must be non-negative, got {s}")));
    }
    let mode = if cloud.len() <= DEFAULT_CAP {
        Mode::Exact
    } else {
        Mode::Greedy
    };
    let packing = packing_number(cloud, eps / 2.0, mode)?;
    Ok(PremeasureBound {
        value: packing.count() as f64 * eps.powf(s),
        kind: "lower_bound",
        s,
        eps,
        packing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(xs: &[f64]) -> PointCloud {
        PointCloud::from_1d(xs).unwrap()
    }

    #[test]
    fn single_point() {
        let c = line(&[0.0]);
        assert_eq!(covering_number(&c, 0.1, Mode::Exact).unwrap().count(), 1);
        assert_eq!(packing_number(&c, 7.0, Mode::Exact).unwrap().count(), 1);
    }

    #[test]
    fn two_points_need_two_centred_balls() {
        // An arbitrary centre at 0.5 would cover both; centres in the set cannot.
        let c = line(&[0.0, 1.0]);
        for mode in [Mode::Exact, Mode::Greedy] {
            assert_eq!(covering_number(&c, 0.6, mode).unwrap().count(), 2);
        }
        assert_eq!(packing_number(&c, 0.4, Mode::Exact).unwrap().count(), 2);
    }

    #[test]
    fn three_points_pack_two() {
        let c = line(&[0.0, 0.5, 1.0]);
        let p = packing_number(&c, 0.3, Mode::Exact).unwrap();
        assert_eq!(p.count(), 2);
        assert!(p.is_disjoint());
    }

    #[test]
    fn exact_over_cap_is_a_size_error() {
        let xs: Vec<f64> = (0..16).map(f64::from).collect();
        let c = line(&xs);
        assert!(matches!(
            covering_number(&c, 0.5, Mode::Exact),
            Err(Error::Size { .. })
        ));
        assert!(covering_number_capped(&c, 0.5, Mode::Exact, 16).is_ok());
        assert!(covering_number(&c, 0.5, Mode::Greedy).is_ok());
    }

    #[test]
    fn non_positive_eps_is_a_domain_error() {
        let c = line(&[0.0]);
        assert!(matches!(covering_number(&c, 0.0, Mode::Greedy), Err(Error::Domain(_))));
        assert!(matches!(packing_number(&c, -1.0, Mode::Exact), Err(Error::Domain(_))));
    }

    #[test]
    fn premeasure_examples() {
        let b = packing_premeasure_lower(&line(&[0.0]), 0.5, 0.01).unwrap();
        assert!((b.value - 0.1).abs() < 1e-15);
        assert_eq!(b.kind, "lower_bound");
        let b = packing_premeasure_lower(&line(&[0.0, 1.0]), 1.0, 0.5).unwrap();
        assert!((b.value - 1.0).abs() < 1e-15);
        assert!(packing_premeasure_lower(&line(&[0.0]), -0.1, 0.5).is_err());
    }

    #[test]
    fn empty_cloud_counts_zero() {
        let c = PointCloud::new(2, vec![]).unwrap();
        assert_eq!(covering_number(&c, 1.0, Mode::Exact).unwrap().count(), 0);
        assert_eq!(packing_number(&c, 1.0, Mode::Greedy).unwrap().count(), 0);
    }
}

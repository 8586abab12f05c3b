//! Lebesgue measure of ε-neighbourhoods `A(ε) = {x : d(x, A) < ε}` and the
//! Minkowski ratio `ε^{α−n} |A(ε)|`.

use std::collections::HashMap;
use std::f64::consts::{PI, TAU};

use serde::Serialize;

use super::cloud::PointCloud;
use super::interval::{merged_length, IntervalUnion};
use super::series::{Series, SeriesRow};
use super::ScaleSweep;
use crate::error::{domain, Result};
use crate::rational;

#[derive(Debug, Clone, Copy)]
pub enum SetRef<'a> {
    Intervals(&'a IntervalUnion),
    Cloud(&'a PointCloud),
}

impl SetRef<'_> {
    pub fn dim(&self) -> usize {
        match self {
            SetRef::Intervals(_) => 1,
            SetRef::Cloud(c) => c.dim(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum VolumeMethod {
    /// Exact rational arithmetic on an interval union.
    ExactIntervals,
    /// Union of open segments around 1-D points.
    ExactPoints1d,
    /// Boundary-arc integral for a union of equal discs.
    DiscUnion,
    /// Occupancy grid with the given cell side.
    OccupancyGrid { cell: f64 },
}

/// Neighbourhood volume with a two-sided bracket. Exact methods report
/// `low == value == high`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VolumeEstimate {
    pub value: f64,
    pub low: f64,
    pub high: f64,
    pub method: VolumeMethod,
    /// Set when the input set was empty (volume 0).
    pub empty: bool,
}

impl VolumeEstimate {
    fn exact(value: f64, method: VolumeMethod) -> Self {
        Self {
            value,
            low: value,
            high: value,
            method,
            empty: false,
        }
    }

    fn empty(method: VolumeMethod) -> Self {
        Self {
            empty: true,
            ..Self::exact(0.0, method)
        }
    }
}

/// `|S(ε)|` for an interval union (exact) or point cloud (exact in 1-D,
/// occupancy grid with side `ε/8` in higher dimensions).
pub fn eps_neighborhood_volume(set: SetRef<'_>, eps: f64) -> Result<VolumeEstimate> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(domain(format!("eps must be positive, got {eps}")));
    }
    match set {
        SetRef::Intervals(u) => {
            if u.is_empty() {
                return Ok(VolumeEstimate::empty(VolumeMethod::ExactIntervals));
            }
            let v = u.neighborhood_volume(&rational::from_f64(eps)?)?;
            Ok(VolumeEstimate::exact(rational::to_f64(&v), VolumeMethod::ExactIntervals))
        }
        SetRef::Cloud(c) if c.dim() == 1 => {
            if c.is_empty() {
                return Ok(VolumeEstimate::empty(VolumeMethod::ExactPoints1d));
            }
            let v = merged_length(c.points().iter().map(|p| (p[0] - eps, p[0] + eps)));
            Ok(VolumeEstimate::exact(v, VolumeMethod::ExactPoints1d))
        }
        SetRef::Cloud(c) => Ok(occupancy_grid_volume(c, eps, eps / 8.0)),
    }
}

/// Grid estimate of `|A(ε)|`. A cell counts towards `value` when its
/// centre is within `ε` of the set, towards `low` when it lies entirely
/// inside, and towards `high` when it may intersect.
pub fn occupancy_grid_volume(cloud: &PointCloud, eps: f64, cell: f64) -> VolumeEstimate {
    let method = VolumeMethod::OccupancyGrid { cell };
    if cloud.is_empty() {
        return VolumeEstimate::empty(method);
    }
    let n = cloud.dim();
    let half_diag = 0.5 * cell * (n as f64).sqrt();
    let reach = eps + 2.0 * half_diag;
    let mut nearest: HashMap<Vec<i64>, f64> = HashMap::new();
    for p in cloud.points() {
        let lo: Vec<i64> = p.iter().map(|x| ((x - reach) / cell).floor() as i64).collect();
        let hi: Vec<i64> = p.iter().map(|x| ((x + reach) / cell).ceil() as i64).collect();
        let mut idx = lo.clone();
        'cells: loop {
            let d = idx
                .iter()
                .zip(p)
                .map(|(&k, x)| {
                    let c = (k as f64 + 0.5) * cell - x;
                    c * c
                })
                .sum::<f64>()
                .sqrt();
            if d < reach {
                let slot = nearest.entry(idx.clone()).or_insert(f64::INFINITY);
                if d < *slot {
                    *slot = d;
                }
            }
            for axis in 0..n {
                idx[axis] += 1;
                if idx[axis] <= hi[axis] {
                    continue 'cells;
                }
                idx[axis] = lo[axis];
            }
            break;
        }
    }
    let (mut centre, mut inside, mut touching) = (0u64, 0u64, 0u64);
    for &d in nearest.values() {
        if d < eps {
            centre += 1;
        }
        if d + half_diag < eps {
            inside += 1;
        }
        if d - half_diag < eps {
            touching += 1;
        }
    }
    let cell_volume = cell.powi(n as i32);
    VolumeEstimate {
        value: centre as f64 * cell_volume,
        low: inside as f64 * cell_volume,
        high: touching as f64 * cell_volume,
        method,
        empty: false,
    }
}

/// Exact area of a union of open discs of radius `eps` centred at the
/// points of a planar cloud, from the boundary integral ½∮(x dy − y dx)
/// over the uncovered arcs of each circle.
pub fn disc_union_area(cloud: &PointCloud, eps: f64) -> Result<f64> {
    if cloud.dim() != 2 {
        return Err(domain("disc union area needs a planar cloud"));
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(domain("eps must be positive"));
    }
    let pts = cloud.points();
    let r = eps;
    let mut parts = Vec::new();
    for (i, c) in pts.iter().enumerate() {
        let mut covered: Vec<(f64, f64)> = Vec::new();
        for (j, o) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            let (dx, dy) = (o[0] - c[0], o[1] - c[1]);
            let d = dx.hypot(dy);
            if d >= 2.0 * r {
                continue;
            }
            let mid = dy.atan2(dx);
            let half = (d / (2.0 * r)).acos();
            push_arc(&mut covered, mid - half, mid + half);
        }
        for (a, b) in complement_arcs(covered) {
            parts.push(
                0.5 * (r * r * (b - a) + r * c[0] * (b.sin() - a.sin()) - r * c[1] * (b.cos() - a.cos())),
            );
        }
    }
    Ok(crate::numeric::pairwise_sum(&parts))
}

/// Add an arc given by angles (possibly outside [-π, π)) split at the seam.
fn push_arc(arcs: &mut Vec<(f64, f64)>, a: f64, b: f64) {
    let len = b - a;
    let a = (a + PI).rem_euclid(TAU) - PI;
    let b = a + len;
    if b <= PI {
        arcs.push((a, b));
    } else {
        arcs.push((a, PI));
        arcs.push((-PI, b - TAU));
    }
}

/// Uncovered arcs of [-π, π) given covered arcs.
fn complement_arcs(mut covered: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    covered.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut free = Vec::new();
    let mut cursor = -PI;
    for (a, b) in covered {
        if a > cursor {
            free.push((cursor, a));
        }
        cursor = cursor.max(b);
    }
    if cursor < PI {
        free.push((cursor, PI));
    }
    free
}

/// Per-scale Minkowski ratios and a boundedness summary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinkowskiSweep {
    pub alpha: f64,
    pub series: Series,
    /// Running maximum of the ratio along the sweep.
    pub running_max: Vec<f64>,
    pub max_ratio: f64,
    pub min_ratio: f64,
    pub final_ratio: f64,
}

/// `ε^{α−n} |S(ε)|` along the sweep, with brackets carried from the
/// volume estimate. `α = n` is accepted and gives the plain volume.
pub fn minkowski_ratio_sweep(set: SetRef<'_>, alpha: f64, sweep: &ScaleSweep) -> Result<MinkowskiSweep> {
    let n = set.dim() as f64;
    if !(alpha >= 0.0 && alpha <= n) {
        return Err(domain(format!("alpha must lie in [0, {n}], got {alpha}")));
    }
    let mut rows = Vec::with_capacity(sweep.count);
    let mut running_max = Vec::with_capacity(sweep.count);
    let mut best = f64::NEG_INFINITY;
    for eps in sweep.scales() {
        let v = eps_neighborhood_volume(set, eps)?;
        let scale = eps.powf(alpha - n);
        let row = SeriesRow {
            eps,
            value: scale * v.value,
            bound_low: scale * v.low,
            bound_high: scale * v.high,
        };
        best = best.max(row.value);
        running_max.push(best);
        rows.push(row);
    }
    let values: Vec<f64> = rows.iter().map(|r| r.value).collect();
    Ok(MinkowskiSweep {
        alpha,
        max_ratio: best,
        min_ratio: values.iter().copied().fold(f64::INFINITY, f64::min),
        final_ratio: *values.last().expect("sweep has at least one scale"),
        running_max,
        series: Series { rows },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn two_points_on_a_line() {
        let c = PointCloud::from_1d(&[0.0, 1.0]).unwrap();
        let v = eps_neighborhood_volume(SetRef::Cloud(&c), 0.3).unwrap();
        assert!((v.value - 1.2).abs() < 1e-15);
        assert_eq!(v.low, v.high);
    }

    #[test]
    fn empty_sets_flagged() {
        let c = PointCloud::new(2, vec![]).unwrap();
        let v = eps_neighborhood_volume(SetRef::Cloud(&c), 0.3).unwrap();
        assert!(v.empty);
        assert_eq!(v.value, 0.0);
        let u = IntervalUnion::default();
        assert!(eps_neighborhood_volume(SetRef::Intervals(&u), 0.3).unwrap().empty);
    }

    #[test]
    fn disc_union_single_and_disjoint() {
        let one = PointCloud::new(2, vec![vec![0.3, -0.2]]).unwrap();
        assert!((disc_union_area(&one, 0.5).unwrap() - PI * 0.25).abs() < 1e-14);
        let far = PointCloud::new(2, vec![vec![0.0, 0.0], vec![3.0, 0.0]]).unwrap();
        assert!((disc_union_area(&far, 1.0).unwrap() - 2.0 * PI).abs() < 1e-13);
    }

    #[test]
    fn disc_union_lens_closed_form() {
        // Two unit discs at distance d overlap in a lens of area
        // 2 acos(d/2) − (d/2)√(4 − d²).
        let d: f64 = 1.2;
        let c = PointCloud::new(2, vec![vec![0.0, 0.0], vec![d, 0.0]]).unwrap();
        let lens = 2.0 * (d / 2.0).acos() - (d / 2.0) * (4.0 - d * d).sqrt();
        let expect = 2.0 * PI - lens;
        assert!((disc_union_area(&c, 1.0).unwrap() - expect).abs() < 1e-13);
    }

    #[test]
    fn grid_brackets_the_exact_area() {
        let c = PointCloud::new(
            2,
            vec![vec![0.0, 0.0], vec![0.15, 0.05], vec![0.4, 0.3], vec![-0.1, 0.22]],
        )
        .unwrap();
        let eps = 0.1;
        let exact = disc_union_area(&c, eps).unwrap();
        let grid = eps_neighborhood_volume(SetRef::Cloud(&c), eps).unwrap();
        assert!(grid.low <= exact && exact <= grid.high, "{grid:?} vs {exact}");
        assert!((grid.value - exact).abs() / exact < 0.05);
    }

    #[test]
    fn unit_interval_ratio_tends_to_one() {
        let u = IntervalUnion::from_pairs([(ratio(0, 1), ratio(1, 1))]).unwrap();
        let sweep = ScaleSweep::new(0.1, 0.5, 10).unwrap();
        let m = minkowski_ratio_sweep(SetRef::Intervals(&u), 1.0, &sweep).unwrap();
        for row in &m.series.rows {
            assert!((row.value - (1.0 + 2.0 * row.eps)).abs() < 1e-14);
        }
        assert!((m.final_ratio - 1.0).abs() < 1e-3);
    }

    #[test]
    fn single_point_ratio_is_two() {
        let c = PointCloud::from_1d(&[0.25]).unwrap();
        let sweep = ScaleSweep::new(0.5, 0.3, 6).unwrap();
        let m = minkowski_ratio_sweep(SetRef::Cloud(&c), 0.0, &sweep).unwrap();
        for row in &m.series.rows {
            assert!((row.value - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn alpha_out_of_range() {
        let c = PointCloud::from_1d(&[0.25]).unwrap();
        let sweep = ScaleSweep::new(0.5, 0.3, 2).unwrap();
        assert!(minkowski_ratio_sweep(SetRef::Cloud(&c), 1.5, &sweep).is_err());
        assert!(minkowski_ratio_sweep(SetRef::Cloud(&c), -0.1, &sweep).is_err());
    }
}

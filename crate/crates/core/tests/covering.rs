//! Covering, packing and neighbourhood-volume properties on random clouds.

use fracspec_core::geometry::{
    covering_number, disc_union_area, eps_neighborhood_volume, packing_number, IntervalUnion, Mode, PointCloud,
    SetRef,
};
use fracspec_core::numeric::unit_ball_volume;
use fracspec_core::rational;
use proptest::prelude::*;

fn cloud_strategy(n: usize, max: usize) -> impl Strategy<Value = PointCloud> {
    prop::collection::vec(prop::collection::vec(0.0f64..1.0, n), 1..=max)
        .prop_map(move |pts| PointCloud::new(n, pts).unwrap())
}

fn le(a: f64, b: f64) -> bool {
    a <= b + 1e-9 * b.abs().max(1.0)
}

/// Area of the union of discs by midpoint sampling on a fine grid.
fn grid_area(cloud: &PointCloud, eps: f64, cells: usize) -> f64 {
    let (lo, hi) = (-eps, 1.0 + eps);
    let h = (hi - lo) / cells as f64;
    let mut hit = 0usize;
    for i in 0..cells {
        for j in 0..cells {
            let (x, y) = (lo + (i as f64 + 0.5) * h, lo + (j as f64 + 0.5) * h);
            if cloud.points().iter().any(|p| (p[0] - x).hypot(p[1] - y) <= eps) {
                hit += 1;
            }
        }
    }
    hit as f64 * h * h
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn counts_and_volume_interlace(cloud in (1usize..=2).prop_flat_map(|n| cloud_strategy(n, 10)), eps in 0.01f64..0.4) {
        let n = cloud.dim();
        let cover = |r: f64| covering_number(&cloud, r, Mode::Exact).unwrap().count() as f64;
        let pack = packing_number(&cloud, eps, Mode::Exact).unwrap();
        prop_assert!(pack.is_disjoint());
        let p = pack.count() as f64;
        prop_assert!(le(cover(2.0 * eps), p));
        prop_assert!(le(p, cover(eps / 2.0)));
        let vol = if n == 1 {
            eps_neighborhood_volume(SetRef::Cloud(&cloud), eps).unwrap().value
        } else {
            disc_union_area(&cloud, eps).unwrap()
        };
        let omega = unit_ball_volume(n);
        prop_assert!(le(omega * p * eps.powi(n as i32), vol));
        prop_assert!(le(vol, omega * cover(eps) * (2.0 * eps).powi(n as i32)));
    }

    #[test]
    fn greedy_never_beats_exact(cloud in cloud_strategy(2, 12), eps in 0.02f64..0.5) {
        let exact = covering_number(&cloud, eps, Mode::Exact).unwrap().count();
        let greedy = covering_number(&cloud, eps, Mode::Greedy).unwrap().count();
        prop_assert!(greedy >= exact);
        let exact_pack = packing_number(&cloud, eps, Mode::Exact).unwrap().count();
        let greedy_pack = packing_number(&cloud, eps, Mode::Greedy).unwrap().count();
        prop_assert!(greedy_pack <= exact_pack);
    }

    #[test]
    fn interval_neighbourhoods_grow_with_eps(
        raw in prop::collection::vec((0i64..60, 1i64..6), 1..8),
        a in 1i64..40,
        b in 1i64..40,
    ) {
        let u = IntervalUnion::from_pairs(raw.iter().map(|&(s, l)| (rational::ratio(s, 64), rational::ratio(l, 64)))).unwrap();
        let (small, large) = (rational::ratio(a.min(b), 256), rational::ratio(a.max(b), 256));
        let vs = u.neighborhood_volume(&small).unwrap();
        let vl = u.neighborhood_volume(&large).unwrap();
        prop_assert!(vs <= vl);
        prop_assert!(u.measure() <= vs);
        // Growth is at most twice the increment per connected piece.
        let pieces = rational::int(u.len() as i64);
        prop_assert!(&vl - &vs <= rational::int(2) * pieces * (&large - &small));
    }
}

#[test]
fn disc_union_matches_grid_oracle() {
    let cloud = PointCloud::new(2, vec![vec![0.2, 0.3], vec![0.35, 0.4], vec![0.8, 0.7], vec![0.5, 0.5]]).unwrap();
    for eps in [0.05, 0.12, 0.2] {
        let exact = disc_union_area(&cloud, eps).unwrap();
        let grid = grid_area(&cloud, eps, 1500);
        assert!((exact - grid).abs() < 2e-3 * exact.max(0.01), "eps {eps}: {exact} vs {grid}");
    }
}

#[test]
fn single_point_chain_is_tight() {
    let cloud = PointCloud::new(2, vec![vec![0.5, 0.5]]).unwrap();
    let eps = 0.1;
    assert_eq!(covering_number(&cloud, eps, Mode::Exact).unwrap().count(), 1);
    assert_eq!(packing_number(&cloud, eps, Mode::Exact).unwrap().count(), 1);
    let area = disc_union_area(&cloud, eps).unwrap();
    assert!((area - std::f64::consts::PI * eps * eps).abs() < 1e-12);
}

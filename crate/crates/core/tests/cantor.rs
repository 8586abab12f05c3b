//! Cantor constructions checked against hand-computed values.

use fracspec_core::fractal::{
    build_level, cantor_minkowski_ratio, limit_neighborhood_volume, natural_measure, product_neighborhood_bounds,
    sample_salem_points, CantorParams, EtaRule,
};
use fracspec_core::rational::{self, Rational};

fn r(p: i64, q: i64) -> Rational {
    rational::ratio(p, q)
}

#[test]
fn second_level_of_middle_thirds() {
    let level = build_level(&CantorParams::middle_thirds(), 2).unwrap();
    let starts: Vec<Rational> = level.members().iter().map(|i| i.start.clone()).collect();
    assert_eq!(starts, vec![r(0, 1), r(2, 9), r(2, 3), r(8, 9)]);
    assert_eq!(level.member_length, r(1, 9));
    assert_eq!(level.intervals().measure(), r(4, 9));
}

#[test]
fn ninth_neighbourhood_is_ten_ninths() {
    // [0,1/9]∪[2/9,1/3] fattened by 1/9 is [-1/9, 4/9]; the right pair
    // mirrors it, so the union has length 2·5/9.
    let p = CantorParams::middle_thirds();
    let v = limit_neighborhood_volume(&p, &r(1, 9), 2).unwrap();
    assert_eq!(v.exact.as_deref(), Some("10/9"));
    assert_eq!(cantor_minkowski_ratio(&p, 2).unwrap(), r(5, 2));
}

#[test]
fn minkowski_ratio_is_scale_invariant() {
    let p = CantorParams::middle_thirds();
    for m in 1..=8 {
        assert_eq!(cantor_minkowski_ratio(&p, m).unwrap(), r(5, 2), "m = {m}");
    }
}

#[test]
fn limit_bracket_tightens_with_depth() {
    let p = CantorParams::middle_thirds();
    let eps = r(1, 100);
    let coarse = limit_neighborhood_volume(&p, &eps, 3).unwrap();
    let fine = limit_neighborhood_volume(&p, &eps, 8).unwrap();
    assert!(coarse.low <= fine.low && fine.high <= coarse.high);
    assert!(fine.high - fine.low < coarse.high - coarse.low);
}

#[test]
fn product_bounds_bracket_the_square() {
    let p = CantorParams::middle_thirds();
    let (low, high) = product_neighborhood_bounds(&p, 1.0 / 27.0, 2, 6).unwrap();
    let side = limit_neighborhood_volume(&p, &r(1, 27), 6).unwrap().high;
    assert!(low <= high);
    assert!((high - side * side).abs() < 1e-15);
}

#[test]
fn natural_measure_splits_evenly() {
    let mu = natural_measure(&CantorParams::middle_thirds(), 6).unwrap();
    assert_eq!(mu.total_mass(), r(1, 1));
    assert_eq!(mu.interval_mass(&r(0, 1), &r(1, 3)), r(1, 2));
    assert_eq!(mu.interval_mass(&r(2, 9), &r(1, 3)), r(1, 4));
    assert!(mu.refinement_consistent().unwrap());
}

#[test]
fn random_offsets_are_admissible_and_reproducible() {
    for seed in 1..=10 {
        let eta = r(1, 16);
        let pts = sample_salem_points(4, &eta, seed).unwrap();
        assert_eq!(pts, sample_salem_points(4, &eta, seed).unwrap());
        assert!(pts[0] >= r(0, 1));
        assert!(pts[3] <= r(15, 16));
        for w in pts.windows(2) {
            assert!(&w[1] - &w[0] > eta);
        }
        let params = CantorParams::random(4, eta.clone(), EtaRule::Constant, seed).unwrap();
        assert!(params.validate().is_valid());
        assert!((params.beta - 0.5).abs() < 1e-12);
    }
}

#[test]
fn invalid_parameters_name_their_constraint() {
    let p = CantorParams::new(2, r(1, 2), vec![r(0, 1), r(1, 2)], EtaRule::Constant);
    let report = p.validate();
    assert!(report.violated("N*eta < 1"));
    assert!(p.validated().is_err());
}

#[test]
fn parameter_text_round_trips() {
    let p = CantorParams::new(3, r(1, 5), vec![r(0, 1), r(2, 5), r(4, 5)], EtaRule::Tapered);
    let back = CantorParams::from_text(&p.to_text()).unwrap();
    assert_eq!(back.points, p.points);
    assert_eq!(back.eta, p.eta);
    assert_eq!(back.rule, p.rule);
}

//! Translation-span harness on finite groups.

use fracspec_core::fractal::{level_starts_f64, CantorParams};
use fracspec_core::tauberian::{
    annihilator_residual, circulant_rank, dft_zero_set, span_dimension_oracle, spherical_zero_radii, GridFunction,
};
use num_complex::Complex64;
use proptest::prelude::*;

/// `(1 − x^k) g(x) mod x^m − 1`: vanishes at the characters whose order
/// divides `k`.
fn with_kernel(g: &[i64], k: usize) -> Vec<i64> {
    let m = g.len();
    (0..m).map(|i| g[i] - g[(i + m - k % m) % m]).collect()
}

fn grid(values: &[i64]) -> GridFunction {
    let v: Vec<f64> = values.iter().map(|&x| x as f64).collect();
    GridFunction::from_real(values.len(), 1, 1.0, &v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn oracle_equals_exact_rank(g in prop::collection::vec(-4i64..=4, 4..=16), k in 1usize..16) {
        let f = with_kernel(&g, k);
        let oracle = span_dimension_oracle(&grid(&f), None).unwrap();
        prop_assert_eq!(oracle, circulant_rank(&f));
    }

    #[test]
    fn transform_is_unitary(v in prop::collection::vec(-10.0f64..10.0, 2..40)) {
        let f = GridFunction::from_real(v.len(), 1, 1.0, &v).unwrap();
        let time: f64 = v.iter().map(|x| x * x).sum();
        let freq: f64 = f.dft().iter().map(|z| z.norm_sqr()).sum();
        prop_assert!((time - freq).abs() <= 1e-10 * time.max(1.0));
    }
}

#[test]
fn kernel_size_follows_the_gcd() {
    // g = δ_0 + 2δ_1 has no zero on Z_12 (1 + 2ω ≠ 0), so the zeros are
    // exactly the gcd(12, k) characters killed by 1 − x^k.
    let mut g = vec![0i64; 12];
    g[0] = 1;
    g[1] = 2;
    for k in 1..12usize {
        let f = with_kernel(&g, k);
        let zeros = dft_zero_set(&grid(&f), None).unwrap();
        let d = (1..=k).rev().find(|d| 12 % d == 0 && k % d == 0).unwrap();
        assert_eq!(zeros.len(), d, "k = {k}");
        assert_eq!(circulant_rank(&f), 12 - d);
    }
}

#[test]
fn witness_annihilates_every_translate() {
    let f = with_kernel(&[3, 1, 4, 1, 5, 9, 2, 6], 2);
    let ann = annihilator_residual(&grid(&f), None).unwrap();
    let w = ann.witness.expect("f has a spectral zero");
    let m = f.len();
    for shift in 0..m {
        let pairing: Complex64 = (0..m).map(|x| f[(x + m - shift) % m] as f64 * w[x]).sum();
        assert!(pairing.norm() < 1e-9, "shift {shift}");
    }
    let full = annihilator_residual(&grid(&[1, 2, 0, 0, 0, 0, 0, 0]), None).unwrap();
    assert!(full.witness.is_none());
}

#[test]
fn designed_radii_are_recovered() {
    let m = 128;
    let starts = level_starts_f64(&CantorParams::middle_thirds(), 4).unwrap();
    let radii: Vec<f64> = starts.iter().map(|x| (12.0 + 44.0 * x).floor() + 0.5).collect();
    let probe = GridFunction::from_real(m, 2, 1.0, &vec![0.0; m * m]).unwrap();
    let spec: Vec<Complex64> = (0..m * m)
        .map(|i| {
            let k = probe.signed_index(i);
            let r = ((k[0] * k[0] + k[1] * k[1]) as f64).sqrt();
            let zero = radii.iter().any(|c| r.floor() == c.floor());
            Complex64::new(if zero { 0.0 } else { 2.0 + (r / 7.0).sin() }, 0.0)
        })
        .collect();
    let f = GridFunction::from_spectrum(m, 2, 1.0, &spec).unwrap();
    let found = spherical_zero_radii(&f, None, 1.0).unwrap();
    let recalled = radii.iter().filter(|r| found.radii.contains(r)).count();
    assert!(recalled * 10 >= radii.len() * 9, "{recalled}/{}", radii.len());
    assert!(found.radii.iter().all(|r| radii.contains(r)));
}

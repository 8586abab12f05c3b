//! Fourier-side checks against closed forms computed here.

use std::f64::consts::PI;

use fracspec_core::fourier::{
    cantor_fourier, lq_annulus_diagnostics, product_measure_fourier, BumpFunction, CantorTransform, Spectrum, Trend,
};
use fracspec_core::fractal::CantorParams;
use num_complex::Complex64;
use proptest::prelude::*;

/// `e^{-iξ/2} ∏_{j≥1} cos(ξ 3^{-j})`, summed until the factors are 1.
fn middle_thirds_closed_form(xi: f64) -> Complex64 {
    let mut v = Complex64::from_polar(1.0, -xi / 2.0);
    let mut s = xi / 3.0;
    for _ in 0..80 {
        v *= s.cos();
        s /= 3.0;
    }
    v
}

#[test]
fn transform_matches_cosine_product() {
    let t = CantorTransform::new(&CantorParams::middle_thirds(), 45).unwrap();
    for xi in [0.0, 0.3, -1.7, PI, 12.5, -250.0, 3000.0] {
        let got = t.eval(xi).value;
        let want = middle_thirds_closed_form(xi);
        assert!((got - want).norm() < 1e-12, "xi {xi}: {got} vs {want}");
    }
    assert!((t.eval(0.0).value - Complex64::new(1.0, 0.0)).norm() < 1e-15);
}

proptest! {
    #[test]
    fn tripling_multiplies_modulus_by_cosine(xi in -500.0f64..500.0) {
        let p = CantorParams::middle_thirds();
        let a = cantor_fourier(&p, 40, 3.0 * xi).unwrap().value.norm();
        let b = cantor_fourier(&p, 40, xi).unwrap().value.norm();
        prop_assert!((a - xi.cos().abs() * b).abs() < 1e-10);
    }

    #[test]
    fn truncation_error_is_within_its_bound(xi in -1e4f64..1e4, j in 8usize..20) {
        let p = CantorParams::middle_thirds();
        let short = cantor_fourier(&p, j, xi).unwrap();
        let long = cantor_fourier(&p, j + 5, xi).unwrap();
        prop_assert!((short.value - long.value).norm() <= short.error_bound + 1e-12);
    }

    #[test]
    fn product_transform_factorises(x in -50.0f64..50.0, y in -50.0f64..50.0) {
        let p = CantorParams::middle_thirds();
        let joint = product_measure_fourier(&p, 30, &[x, y]).unwrap().value;
        let split = cantor_fourier(&p, 30, x).unwrap().value * cantor_fourier(&p, 30, y).unwrap().value;
        prop_assert!((joint - split).norm() < 1e-12);
    }
}

#[test]
fn bump_has_unit_mass_and_matching_transform() {
    for n in 1..=3 {
        let chi = BumpFunction::new(n).unwrap();
        assert!((chi.integral() - 1.0).abs() < 1e-10, "n = {n}");
        let at_zero = chi.hat(0.0).unwrap();
        assert!((at_zero - (2.0 * PI).powf(-(n as f64) / 2.0)).abs() < 1e-10, "n = {n}");
    }
    // One dimension: the transform is a cosine integral; redo it by Simpson.
    let chi = BumpFunction::new(1).unwrap();
    for rho in [0.5, 3.0, 11.0] {
        let steps = 20_000;
        let h = 2.0 / steps as f64;
        let mut s = 0.0;
        for k in 0..=steps {
            let x = -1.0 + k as f64 * h;
            let w = if k == 0 || k == steps { 1.0 } else if k % 2 == 1 { 4.0 } else { 2.0 };
            s += w * chi.eval(&[x]) * (rho * x).cos();
        }
        let simpson = s * h / 3.0 / (2.0 * PI).sqrt();
        assert!((chi.hat(rho).unwrap() - simpson).abs() < 1e-9, "rho {rho}");
    }
}

#[test]
fn radial_octaves_match_power_law_closed_form() {
    // |g| = r^{-s} in the plane: ∫ r^{-qs} 2πr dr over [2^j, 2^{j+1}].
    let s = 0.6;
    let q = 3.0;
    let g = |r: f64| r.powf(-s);
    let rep = lq_annulus_diagnostics(Spectrum::Radial(&g), 2, q, 1, 6).unwrap();
    let e = 2.0 - q * s;
    for row in &rep.octaves {
        let (a, b) = (2f64.powi(row.j), 2f64.powi(row.j + 1));
        let want = 2.0 * PI * (b.powf(e) - a.powf(e)) / e;
        assert!((row.integral - want).abs() < 1e-9 * want, "j {}", row.j);
    }
    // Ratio 2^{2 - qs} = 2^{0.2} > 1.
    assert_eq!(rep.verdict, Trend::DivergentLike);
    let steep = |r: f64| r.powf(-1.5);
    let rep = lq_annulus_diagnostics(Spectrum::Radial(&steep), 2, q, 1, 6).unwrap();
    assert_eq!(rep.verdict, Trend::SummableLike);
    assert!((rep.trend - 2f64.powf(2.0 - 4.5)).abs() < 1e-6);
}

#[test]
fn middle_thirds_does_not_decay_along_powers_of_three() {
    let p = CantorParams::middle_thirds();
    let base = cantor_fourier(&p, 40, PI).unwrap().value.norm();
    assert!(base > 0.4);
    for k in 1..=8 {
        let v = cantor_fourier(&p, 40, 3f64.powi(k) * PI).unwrap().value.norm();
        assert!((v - base).abs() < 1e-9);
    }
}

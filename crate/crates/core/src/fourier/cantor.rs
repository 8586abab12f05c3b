use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::fractal::CantorParams;
use crate::rational;

/// Value of a truncated transform together with its truncation bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralValue {
    #[serde(skip)]
    pub value: Complex64,
    pub error_bound: f64,
}

/// `ν̂` truncated at level `J`:
/// `e^{−iξL_J/2} ∏_{j≤J} (1/N) Σ_k e^{−iξ a_k L_{j−1}}`.
///
/// This is the transform of the midpoint atoms of level `J`; the limit
/// measure differs by at most `|ξ| L_J`.
#[derive(Debug, Clone)]
pub struct CantorTransform {
    offsets: Vec<f64>,
    /// `L_0, …, L_J`.
    scales: Vec<f64>,
}

impl CantorTransform {
    pub fn new(params: &CantorParams, level: usize) -> Result<Self> {
        if level == 0 {
            return Err(domain("truncation level must be at least 1"));
        }
        let params = params.clone().validated()?;
        let mut scales = Vec::with_capacity(level + 1);
        let mut l = 1.0f64;
        scales.push(l);
        for m in 1..=level {
            l *= rational::to_f64(&params.eta_at(m)?);
            scales.push(l);
        }
        Ok(Self {
            offsets: params.points.iter().map(rational::to_f64).collect(),
            scales,
        })
    }

    pub fn level(&self) -> usize {
        self.scales.len() - 1
    }

    pub fn eval(&self, xi: f64) -> SpectralValue {
        let n = self.offsets.len() as f64;
        let depth = self.level();
        let mut acc = Complex64::new(1.0, 0.0);
        for parent in &self.scales[..depth] {
            let factor: Complex64 = self
                .offsets
                .iter()
                .map(|a| Complex64::from_polar(1.0, -xi * a * parent))
                .sum();
            acc *= factor / n;
        }
        let last = self.scales[depth];
        SpectralValue {
            value: acc * Complex64::from_polar(1.0, -xi * last / 2.0),
            error_bound: xi.abs() * last,
        }
    }
}

pub fn cantor_fourier(params: &CantorParams, level: usize, xi: f64) -> Result<SpectralValue> {
    Ok(CantorTransform::new(params, level)?.eval(xi))
}

/// `μ̂(ξ) = ∏_i ν̂(ξ_i)`; the bound adds the coordinate bounds since every
/// factor has modulus at most one.
pub fn product_measure_fourier(params: &CantorParams, level: usize, xi: &[f64]) -> Result<SpectralValue> {
    let t = CantorTransform::new(params, level)?;
    Ok(xi.iter().fold(
        SpectralValue {
            value: Complex64::new(1.0, 0.0),
            error_bound: 0.0,
        },
        |acc, &x| {
            let v = t.eval(x);
            SpectralValue {
                value: acc.value * v.value,
                error_bound: acc.error_bound + v.error_bound,
            }
        },
    ))
}

/// CSV with columns `xi_1..xi_n, re, im, abs, error_bound`.
pub fn spectral_csv(rows: &[(Vec<f64>, SpectralValue)]) -> String {
    let dim = rows.first().map_or(1, |r| r.0.len());
    let mut out = String::new();
    let head: Vec<String> = if dim == 1 {
        vec!["xi".into()]
    } else {
        (1..=dim).map(|i| format!("xi_{i}")).collect()
    };
    let _ = writeln!(out, "{},re,im,abs,error_bound", head.join(","));
    for (xi, v) in rows {
        let coords: Vec<String> = xi.iter().map(|x| format!("{x:?}")).collect();
        let _ = writeln!(
            out,
            "{},{:?},{:?},{:?},{:?}",
            coords.join(","),
            v.value.re,
            v.value.im,
            v.value.norm(),
            v.error_bound
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn unit_mass_at_origin() {
        let v = cantor_fourier(&CantorParams::middle_thirds(), 12, 0.0).unwrap();
        assert_eq!(v.value, Complex64::new(1.0, 0.0));
        assert_eq!(v.error_bound, 0.0);
    }

    #[test]
    fn matches_atom_sum() {
        // Direct sum over the 2^6 midpoints.
        let p = CantorParams::middle_thirds();
        let m = crate::fractal::natural_measure(&p, 6).unwrap();
        let atoms = m.midpoints_f64();
        let t = CantorTransform::new(&p, 6).unwrap();
        for &xi in &[0.3, 5.0, -17.25, 240.0] {
            let direct: Complex64 = atoms
                .iter()
                .map(|x| Complex64::from_polar(1.0 / 64.0, -xi * x))
                .sum();
            assert!((direct - t.eval(xi).value).norm() < 1e-12, "xi = {xi}");
        }
    }

    #[test]
    fn non_decay_along_powers_of_three() {
        let t = CantorTransform::new(&CantorParams::middle_thirds(), 40).unwrap();
        let base = t.eval(PI).value.norm();
        assert!(base > 0.1);
        for k in 1..=8 {
            let v = t.eval(3f64.powi(k) * PI).value.norm();
            assert!((v - base).abs() < 1e-6, "k = {k}");
        }
    }

    #[test]
    fn csv_header() {
        let v = cantor_fourier(&CantorParams::middle_thirds(), 3, 1.0).unwrap();
        let csv = spectral_csv(&[(vec![1.0, 2.0], v)]);
        assert!(csv.starts_with("xi_1,xi_2,re,im,abs,error_bound\n"));
    }
}

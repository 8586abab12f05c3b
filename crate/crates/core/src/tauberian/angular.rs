use std::f64::consts::PI;
use std::ops::RangeInclusive;

use num_complex::Complex64;
use serde::Serialize;

use super::grid::GridFunction;
use crate::error::{domain, Result};

/// Samples of `F(z, α)` at points `z ∈ ℂ` and `L` equispaced angles
/// `α_l = 2πl/L`, stored `[point][angle]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularSamples {
    pub points: Vec<Complex64>,
    pub angles: usize,
    pub values: Vec<Complex64>,
}

impl AngularSamples {
    pub fn sample<F>(points: Vec<Complex64>, angles: usize, f: F) -> Result<Self>
    where
        F: Fn(Complex64, f64) -> Complex64,
    {
        if angles == 0 {
            return Err(domain("need at least one angle"));
        }
        let step = 2.0 * PI / angles as f64;
        let values = points
            .iter()
            .flat_map(|&z| (0..angles).map(move |l| (z, l as f64 * step)))
            .map(|(z, a)| f(z, a))
            .collect();
        Ok(Self { points, angles, values })
    }

    /// `Σ_z (2π/L) Σ_l |F(z, α_l)|²`.
    pub fn norm_sq(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * 2.0 * PI / self.angles as f64
    }
}

/// `f_m(z) = ∫ F(z, α) e^{−imα} dα` for each `m` in a range.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularFamily {
    pub ms: Vec<i64>,
    /// `coeffs[i][k]` is `f_{ms[i]}(points[k])`.
    pub coeffs: Vec<Vec<Complex64>>,
}

impl AngularFamily {
    pub fn get(&self, m: i64) -> Option<&[Complex64]> {
        self.ms.iter().position(|&k| k == m).map(|i| self.coeffs[i].as_slice())
    }

    /// `Σ_m ‖f_m‖²` with unit weight per point.
    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().flatten().map(|v| v.norm_sqr()).sum()
    }

    /// `F(z, α_l) = (1/2π) Σ_m f_m(z) e^{imα_l}`, laid out like the samples.
    pub fn resynthesize(&self, angles: usize) -> Vec<Complex64> {
        let points = self.coeffs.first().map_or(0, Vec::len);
        let step = 2.0 * PI / angles as f64;
        let mut out = vec![Complex64::new(0.0, 0.0); points * angles];
        for (m, row) in self.ms.iter().zip(&self.coeffs) {
            for l in 0..angles {
                let e = Complex64::from_polar(1.0 / (2.0 * PI), (*m as f64) * l as f64 * step);
                for (k, c) in row.iter().enumerate() {
                    out[k * angles + l] += c * e;
                }
            }
        }
        out
    }
}

/// Trapezoidal angular coefficients; exact for data band-limited to the
/// range. Refuses grids that would alias the requested frequencies.
pub fn angular_decompose(samples: &AngularSamples, ms: RangeInclusive<i64>) -> Result<AngularFamily> {
    let max = ms.start().abs().max(ms.end().abs()) as usize;
    if samples.angles < 2 * max + 1 {
        return Err(domain(format!(
            "{} angles alias frequency {max}; need at least {}",
            samples.angles,
            2 * max + 1
        )));
    }
    let l = samples.angles;
    let step = 2.0 * PI / l as f64;
    let ms: Vec<i64> = ms.collect();
    let coeffs = ms
        .iter()
        .map(|&m| {
            let phases: Vec<Complex64> = (0..l)
                .map(|k| Complex64::from_polar(step, -(m as f64) * k as f64 * step))
                .collect();
            samples
                .values
                .chunks(l)
                .map(|row| row.iter().zip(&phases).map(|(v, p)| v * p).sum())
                .collect()
        })
        .collect();
    Ok(AngularFamily { ms, coeffs })
}

/// `φ_m(z) = ∫ φ(e^{iα} z) e^{i(m₀+m)α} dα` by the trapezoid rule on `L` angles.
pub fn rotational_component<F>(phi: F, points: &[Complex64], m0: i64, m: i64, angles: usize) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> Complex64,
{
    if angles == 0 {
        return Err(domain("need at least one angle"));
    }
    let step = 2.0 * PI / angles as f64;
    let freq = (m0 + m) as f64;
    Ok(points
        .iter()
        .map(|&z| {
            (0..angles)
                .map(|l| {
                    let a = l as f64 * step;
                    phi(Complex64::from_polar(1.0, a) * z) * Complex64::from_polar(step, freq * a)
                })
                .sum()
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairResidual {
    /// `‖f ∗ g‖₂` on the grid (cyclic, cell-weighted).
    pub l2: f64,
    /// `l2 / (‖f‖₂ ‖g‖₁)`, at most 1 by Young's inequality.
    pub relative: f64,
}

/// Cyclic planar convolution of two grid functions via the FFT.
pub fn radial_pair_check(f: &GridFunction, g: &GridFunction) -> Result<PairResidual> {
    if f.n != 2 || g.n != 2 || f.m != g.m || f.cell != g.cell {
        return Err(domain("pair check needs two planar grids of the same shape"));
    }
    let scale = (f.len() as f64).sqrt();
    let product: Vec<Complex64> = f.dft().iter().zip(g.dft()).map(|(a, b)| a * b * scale).collect();
    let conv = GridFunction::from_spectrum(f.m, 2, f.cell, &product)?;
    let area = f.cell * f.cell;
    let l2 = (conv.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * area).sqrt() * area;
    let f2 = (f.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * area).sqrt();
    let g1 = g.values.iter().map(|v| v.norm()).sum::<f64>() * area;
    let relative = if f2 * g1 > 0.0 { l2 / (f2 * g1) } else { 0.0 };
    Ok(PairResidual { l2, relative })
}

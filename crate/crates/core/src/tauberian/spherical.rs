use serde::Serialize;

use super::grid::GridFunction;
use super::span::DEFAULT_REL_TOL;
use crate::error::{domain, Result};

/// Radii (lattice index units) whose whole shell has `|f̂| < tol`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SphericalZeroSet {
    /// Shell centres, sorted.
    pub radii: Vec<f64>,
    pub shell_width: f64,
    pub tol: f64,
    /// Centres of shells holding no lattice point; never reported as zeros.
    pub gaps: Vec<f64>,
    pub shells_scanned: usize,
    /// Physical frequency per index unit, `2π / (m · cell)`.
    pub frequency_step: f64,
}

/// Scan shells `[i w, (i+1) w)` of the centred frequency lattice out to the
/// largest full circle, radius `m/2`.
pub fn spherical_zero_radii(f: &GridFunction, tol: Option<f64>, shell_width: f64) -> Result<SphericalZeroSet> {
    if f.n != 2 {
        return Err(domain("spherical zero radii need a planar grid"));
    }
    if !(shell_width >= 1.0 && shell_width.is_finite()) {
        return Err(domain("shell width must be at least one lattice spacing"));
    }
    let spec = f.dft();
    let max = spec.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let tol = match tol {
        Some(t) if t > 0.0 => t,
        Some(t) => return Err(domain(format!("tolerance must be positive, got {t}"))),
        None => (DEFAULT_REL_TOL * max).max(f64::MIN_POSITIVE),
    };
    let limit = f.m as f64 / 2.0;
    let shells = (limit / shell_width).floor() as usize;
    let mut peak = vec![0.0f64; shells];
    let mut hits = vec![0usize; shells];
    for (i, z) in spec.iter().enumerate() {
        let k = f.signed_index(i);
        let r = ((k[0] * k[0] + k[1] * k[1]) as f64).sqrt();
        let s = (r / shell_width).floor() as usize;
        if s < shells {
            peak[s] = peak[s].max(z.norm());
            hits[s] += 1;
        }
    }
    let centre = |s: usize| (s as f64 + 0.5) * shell_width;
    let mut radii = Vec::new();
    let mut gaps = Vec::new();
    for s in 0..shells {
        if hits[s] == 0 {
            gaps.push(centre(s));
        } else if peak[s] < tol {
            radii.push(centre(s));
        }
    }
    Ok(SphericalZeroSet {
        radii,
        shell_width,
        tol,
        gaps,
        shells_scanned: shells,
        frequency_step: 2.0 * std::f64::consts::PI / (f.m as f64 * f.cell),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn radial_spectrum(m: usize, g: impl Fn(f64) -> f64) -> GridFunction {
        let probe = GridFunction::from_real(m, 2, 1.0, &vec![0.0; m * m]).unwrap();
        let spec: Vec<Complex64> = (0..m * m)
            .map(|i| {
                let k = probe.signed_index(i);
                Complex64::new(g(((k[0] * k[0] + k[1] * k[1]) as f64).sqrt()), 0.0)
            })
            .collect();
        GridFunction::from_spectrum(m, 2, 1.0, &spec).unwrap()
    }

    #[test]
    fn vanishing_annulus_is_found() {
        let f = radial_spectrum(64, |r| if (10.0..11.0).contains(&r) { 0.0 } else { 1.0 + r });
        let s = spherical_zero_radii(&f, None, 1.0).unwrap();
        assert_eq!(s.radii, vec![10.5]);
    }

    #[test]
    fn nowhere_small_spectrum() {
        let f = radial_spectrum(32, |r| (-r / 10.0).exp());
        assert!(spherical_zero_radii(&f, None, 1.0).unwrap().radii.is_empty());
    }

    #[test]
    fn thin_shells_report_gaps() {
        let f = radial_spectrum(16, |_| 1.0);
        let s = spherical_zero_radii(&f, None, 1.0).unwrap();
        assert!(s.gaps.is_empty());
        assert!(spherical_zero_radii(&f, None, 0.5).is_err());
        let f1 = GridFunction::from_real(4, 1, 1.0, &[0.0; 4]).unwrap();
        assert!(spherical_zero_radii(&f1, None, 1.0).is_err());
    }
}

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::numeric::{unit_sphere_area, CompositeRule};

/// Radii sampled per octave before refinement.
pub const SAMPLES_PER_OCTAVE: usize = 64;
const QUAD_ORDER: usize = 10;
const NORM_TOL: f64 = 1e-10;
const SUP_REL_TOL: f64 = 1e-8;
const INCREMENT_TOL: f64 = 1e-8;

fn shape(t: f64) -> f64 {
    if t.abs() < 1.0 {
        (-1.0 / (1.0 - t * t)).exp()
    } else {
        0.0
    }
}

/// Radial bump `χ(x) = c·exp(−1/(1−|x|²))` on the unit ball of ℝⁿ,
/// normalised to unit integral.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BumpFunction {
    pub n: usize,
    pub c: f64,
}

impl BumpFunction {
    pub fn new(n: usize) -> Result<Self> {
        if !(1..=3).contains(&n) {
            return Err(domain("bump functions are provided for n = 1, 2, 3"));
        }
        let rule = CompositeRule::new(QUAD_ORDER);
        let radial = |panels| {
            unit_sphere_area(n) * rule.integrate(0.0, 1.0, panels, |r| shape(r) * r.powi(n as i32 - 1))
        };
        let coarse = radial(64);
        let fine = radial(128);
        if (coarse - fine).abs() > NORM_TOL * fine {
            return Err(Error::Precision(format!(
                "bump normalisation did not settle: {coarse} vs {fine}"
            )));
        }
        Ok(Self { n, c: 1.0 / fine })
    }

    pub fn profile(&self, r: f64) -> f64 {
        self.c * shape(r)
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.profile(x.iter().map(|v| v * v).sum::<f64>().sqrt())
    }

    /// `χ_ε(x) = ε^{−n} χ(x/ε)`.
    pub fn scaled(&self, x: &[f64], eps: f64) -> f64 {
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt() / eps;
        self.profile(r) / eps.powi(self.n as i32)
    }

    /// `∫_{ℝⁿ} χ` by radial quadrature.
    pub fn integral(&self) -> f64 {
        let rule = CompositeRule::new(QUAD_ORDER);
        unit_sphere_area(self.n) * rule.integrate(0.0, 1.0, 128, |r| self.profile(r) * r.powi(self.n as i32 - 1))
    }

    fn hat_with(&self, rho: f64, panels: usize) -> f64 {
        let rule = CompositeRule::new(QUAD_ORDER);
        let c = self.c;
        match self.n {
            1 => (2.0 / (2.0 * PI).sqrt()) * rule.integrate(0.0, 1.0, panels, |t| c * shape(t) * (rho * t).cos()),
            2 => rule.integrate(0.0, 1.0, panels, |r| c * shape(r) * puruspe::Jn(0, rho * r) * r),
            _ => {
                let scale = 4.0 * PI / (2.0 * PI).powf(1.5);
                scale
                    * rule.integrate(0.0, 1.0, panels, |r| {
                        let s = if rho * r == 0.0 { 1.0 } else { (rho * r).sin() / (rho * r) };
                        c * shape(r) * s * r * r
                    })
            }
        }
    }

    /// `χ̂(ρ)` at radius `ρ = |ξ|`, with `(2π)^{−n/2}` normalisation.
    pub fn hat(&self, rho: f64) -> Result<f64> {
        let rho = rho.abs();
        let panels = (rho.ceil() as usize).max(64);
        let coarse = self.hat_with(rho, panels);
        let fine = self.hat_with(rho, 2 * panels);
        let scale = self.hat_with(0.0, 64).abs();
        if (coarse - fine).abs() > 1e-12 * scale {
            return Err(Error::Precision(format!("bump transform at {rho} did not settle")));
        }
        Ok(fine)
    }
}

/// `a_j = 2^{j(n−α)} sup_{2^j ≤ ρ ≤ 2^{j+1}} |χ̂(ρ)|²` over a range of `j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DyadicProfile {
    pub n: usize,
    pub alpha: f64,
    pub js: Vec<i32>,
    pub a: Vec<f64>,
    /// Radius at which each sup was attained.
    pub argmax: Vec<f64>,
    pub partial_sums: Vec<f64>,
    pub limit_estimate: f64,
    /// First `j` beyond which every increment is below `1e−8`.
    pub j_star: Option<i32>,
    pub samples_per_octave: usize,
    pub sup_method: &'static str,
}

impl DyadicProfile {
    pub fn get(&self, j: i32) -> Option<f64> {
        self.js.iter().position(|&k| k == j).map(|i| self.a[i])
    }
}

fn golden_max<F: Fn(f64) -> Result<f64>>(f: F, mut lo: f64, mut hi: f64) -> Result<(f64, f64)> {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > SUP_REL_TOL * hi {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1)?;
        }
    }
    Ok(if f1 >= f2 { (x1, f1) } else { (x2, f2) })
}

/// Dense radial sampling of each octave, then golden-section refinement
/// around the best sample. The sup is certified only up to that sampling.
pub fn bump_profile(chi: &BumpFunction, alpha: f64, j0: i32, j1: i32) -> Result<DyadicProfile> {
    let n = chi.n;
    if !(alpha >= 0.0 && alpha < n as f64) {
        return Err(domain(format!("alpha must lie in [0, {n}), got {alpha}")));
    }
    if j1 < j0 {
        return Err(domain("empty j range"));
    }
    let sq = |rho: f64| chi.hat(rho).map(|v| v * v);
    let mut js = Vec::new();
    let mut a = Vec::new();
    let mut argmax = Vec::new();
    for j in j0..=j1 {
        let (lo, hi) = (2f64.powi(j), 2f64.powi(j + 1));
        let step = (hi - lo) / SAMPLES_PER_OCTAVE as f64;
        let samples = (0..=SAMPLES_PER_OCTAVE)
            .map(|k| {
                let r = lo + step * k as f64;
                sq(r).map(|v| (r, v))
            })
            .collect::<Result<Vec<_>>>()?;
        let (k, &(mut best_r, mut best)) = samples
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .1.total_cmp(&y.1 .1))
            .expect("non-empty samples");
        let left = samples[k.saturating_sub(1)].0;
        let right = samples[(k + 1).min(SAMPLES_PER_OCTAVE)].0;
        if right > left {
            let (r, v) = golden_max(sq, left, right)?;
            if v > best {
                best = v;
                best_r = r;
            }
        }
        js.push(j);
        a.push(2f64.powf(j as f64 * (n as f64 - alpha)) * best);
        argmax.push(best_r);
    }
    let mut partial_sums = Vec::with_capacity(a.len());
    let mut acc = 0.0;
    for v in &a {
        acc += v;
        partial_sums.push(acc);
    }
    let j_star = {
        let tail = a.iter().rposition(|&v| v >= INCREMENT_TOL);
        match tail {
            None => Some(js[0]),
            Some(i) if i + 1 < js.len() => Some(js[i]),
            Some(_) => None,
        }
    };
    Ok(DyadicProfile {
        n,
        alpha,
        js,
        a,
        argmax,
        partial_sums,
        limit_estimate: acc,
        j_star,
        samples_per_octave: SAMPLES_PER_OCTAVE,
        sup_method: "dense sampling + golden-section refinement",
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_integral_and_support() {
        for n in 1..=3 {
            let chi = BumpFunction::new(n).unwrap();
            assert!((chi.integral() - 1.0).abs() < 1e-10);
            assert_eq!(chi.profile(1.0), 0.0);
            assert_eq!(chi.eval(&vec![0.6; n]), chi.eval(&vec![-0.6; n]));
        }
    }

    #[test]
    fn transform_at_origin() {
        let expect = |n: i32| (2.0 * PI).powf(-(n as f64) / 2.0);
        for n in 1..=3 {
            let chi = BumpFunction::new(n as usize).unwrap();
            assert!((chi.hat(0.0).unwrap() - expect(n)).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn two_dimensional_transform_matches_cartesian_sum() {
        // (1/2π) ∫∫ χ(x) cos(ρ x₁) dx on a fine tensor grid.
        let chi = BumpFunction::new(2).unwrap();
        let rho = 5.0;
        let m = 400;
        let h = 2.0 / m as f64;
        let mut s = 0.0;
        for i in 0..m {
            for k in 0..m {
                let x = -1.0 + h * (i as f64 + 0.5);
                let y = -1.0 + h * (k as f64 + 0.5);
                s += chi.eval(&[x, y]) * (rho * x).cos();
            }
        }
        let direct = s * h * h / (2.0 * PI);
        assert!((direct - chi.hat(rho).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn profile_is_summable() {
        let chi = BumpFunction::new(2).unwrap();
        let p = bump_profile(&chi, 1.0, -20, 10).unwrap();
        assert!(p.a.iter().all(|&v| v >= 0.0));
        let j_star = p.j_star.expect("increments settle");
        assert!(j_star < 10);
        // small-j behaviour: a_j ≈ 2^{j(n−α)} χ̂(0)²
        let h0 = chi.hat(0.0).unwrap();
        let a = p.get(-20).unwrap();
        assert!((a / (2f64.powi(-20) * h0 * h0) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn alpha_range() {
        let chi = BumpFunction::new(2).unwrap();
        assert!(bump_profile(&chi, 2.0, 0, 1).is_err());
    }
}

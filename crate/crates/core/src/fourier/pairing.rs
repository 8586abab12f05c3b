use std::collections::HashMap;

use serde::Serialize;

use super::bump::BumpFunction;
use crate::error::{domain, Error, Result};
use crate::geometry::WeightedMeasure;
use crate::numeric::pairwise_sum;

const MIN_STEP_FRACTION: f64 = 1e-4;
const DEFAULT_STEPS_PER_EPS: f64 = 20.0;
const CELL_BUDGET: u128 = 20_000_000;

/// Unnormalised bump `ψ(x) = exp(−1/(1 − |x−c|²/ρ²))`, used as a test
/// function.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestBump {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl TestBump {
    pub fn new(center: Vec<f64>, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(domain("test bump radius must be positive"));
        }
        Ok(Self { center, radius })
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let t2: f64 = x.iter().zip(&self.center).map(|(a, c)| (a - c) * (a - c)).sum::<f64>()
            / (self.radius * self.radius);
        if t2 < 1.0 {
            (-1.0 / (1.0 - t2)).exp()
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Pairing {
    pub eps: f64,
    pub step: f64,
    pub cells: usize,
    /// `⟨u_ε, ψ⟩`.
    pub value: f64,
    /// `‖u_ε‖₂ · ‖ψ 1_{S(ε)}‖₂`.
    pub bound: f64,
    /// `Σ w ψ(atom)`, the `ε → 0` limit.
    pub limit: f64,
}

/// Pair `u_ε = u ∗ χ_ε` with `ψ` on a sparse grid of step `h` covering the
/// `ε`-fattened atoms that can reach `ψ`'s support. Cell centres carry the
/// midpoint rule.
pub fn mollified_pairing(
    u: &WeightedMeasure,
    psi: &TestBump,
    chi: &BumpFunction,
    eps: f64,
    step: Option<f64>,
) -> Result<Pairing> {
    let n = u.dim();
    if chi.n != n || psi.center.len() != n {
        return Err(domain("measure, bump and test function dimensions differ"));
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(domain("eps must be positive"));
    }
    let h = step.unwrap_or(eps / DEFAULT_STEPS_PER_EPS);
    if !(h > 0.0) || h < MIN_STEP_FRACTION * eps {
        return Err(domain(format!("grid step {h} is finer than {MIN_STEP_FRACTION}·eps")));
    }
    let reach = psi.radius + eps;
    let near: Vec<&(Vec<f64>, f64)> = u
        .atoms()
        .iter()
        .filter(|(x, _)| {
            x.iter().zip(&psi.center).map(|(a, c)| (a - c) * (a - c)).sum::<f64>() < reach * reach
        })
        .collect();
    let span = (eps / h).ceil() as i64 + 1;
    let per_atom = ((2 * span + 1) as u128).pow(n as u32);
    let needed = per_atom * near.len() as u128;
    if needed > CELL_BUDGET {
        return Err(Error::Size {
            what: "pairing grid cell visits",
            needed,
            limit: CELL_BUDGET,
        });
    }
    let mut field: HashMap<Vec<i64>, f64> = HashMap::new();
    let mut idx = vec![0i64; n];
    let mut centre = vec![0.0; n];
    let mut offset = vec![0.0; n];
    for (x, w) in &near {
        let base: Vec<i64> = x.iter().map(|v| (v / h).floor() as i64).collect();
        for cell in 0..per_atom {
            let mut rest = cell;
            for d in 0..n {
                let k = (rest % (2 * span + 1) as u128) as i64 - span;
                rest /= (2 * span + 1) as u128;
                idx[d] = base[d] + k;
                centre[d] = (idx[d] as f64 + 0.5) * h;
                offset[d] = centre[d] - x[d];
            }
            let v = chi.scaled(&offset, eps);
            if v > 0.0 {
                *field.entry(idx.clone()).or_insert(0.0) += w * v;
            }
        }
    }
    let mut keys: Vec<&Vec<i64>> = field.keys().collect();
    keys.sort();
    let vol = h.powi(n as i32);
    let mut pair = Vec::with_capacity(keys.len());
    let mut uu = Vec::with_capacity(keys.len());
    let mut pp = Vec::with_capacity(keys.len());
    for k in keys {
        let c: Vec<f64> = k.iter().map(|&i| (i as f64 + 0.5) * h).collect();
        let uv = field[k];
        let pv = psi.eval(&c);
        pair.push(uv * pv * vol);
        uu.push(uv * uv * vol);
        pp.push(pv * pv * vol);
    }
    let limit = pairwise_sum(&u.atoms().iter().map(|(x, w)| w * psi.eval(x)).collect::<Vec<_>>());
    Ok(Pairing {
        eps,
        step: h,
        cells: field.len(),
        value: pairwise_sum(&pair),
        bound: (pairwise_sum(&uu) * pairwise_sum(&pp)).sqrt(),
        limit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fractal::{natural_measure, CantorParams};

    #[test]
    fn converges_to_atom_sum() {
        let u = WeightedMeasure::new(1, vec![(vec![0.1], 0.3), (vec![-0.4], 0.7)]).unwrap();
        let psi = TestBump::new(vec![0.0], 1.0).unwrap();
        let chi = BumpFunction::new(1).unwrap();
        let p = mollified_pairing(&u, &psi, &chi, 1e-3, None).unwrap();
        assert!((p.value - p.limit).abs() < 1e-4, "{p:?}");
        assert!(p.value.abs() <= p.bound);
    }

    #[test]
    fn separated_support_pairs_to_zero() {
        let m = natural_measure(&CantorParams::middle_thirds(), 10).unwrap();
        let u = m.to_weighted().unwrap();
        let psi = TestBump::new(vec![0.5], 0.06).unwrap();
        let chi = BumpFunction::new(1).unwrap();
        let p = mollified_pairing(&u, &psi, &chi, 0.01, None).unwrap();
        assert_eq!(p.value, 0.0);
        assert_eq!(p.limit, 0.0);
    }

    #[test]
    fn fine_grid_refused() {
        let u = WeightedMeasure::new(1, vec![(vec![0.0], 1.0)]).unwrap();
        let psi = TestBump::new(vec![0.0], 1.0).unwrap();
        let chi = BumpFunction::new(1).unwrap();
        assert!(mollified_pairing(&u, &psi, &chi, 1.0, Some(1e-5)).is_err());
    }

    #[test]
    fn planar_pairing_bound() {
        let u = WeightedMeasure::new(2, vec![(vec![0.1, 0.2], 0.5), (vec![-0.3, 0.0], 0.5)]).unwrap();
        let psi = TestBump::new(vec![0.0, 0.0], 1.0).unwrap();
        let chi = BumpFunction::new(2).unwrap();
        for eps in [0.1, 0.03, 0.01] {
            let p = mollified_pairing(&u, &psi, &chi, eps, None).unwrap();
            assert!(p.value.abs() <= p.bound * (1.0 + 1e-12));
            assert!((p.value - p.limit).abs() < 0.05 * eps.sqrt());
        }
    }
}

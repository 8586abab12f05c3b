//! Small numerical utilities: order-independent summation, ball volumes and
//! composite Gauss–Legendre quadrature.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;

/// Pairwise (cascade) summation. The result depends only on the slice
/// order, and the rounding error grows like `O(log n)`.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 32;
    if values.len() <= LEAF {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Γ(n/2) for positive integer `n`.
fn gamma_half(n: usize) -> f64 {
    if n % 2 == 0 {
        (1..n / 2).map(|k| k as f64).product()
    } else {
        // Γ(1/2) = √π, Γ(k + 1/2) = (k - 1/2) Γ(k - 1/2)
        let mut g = PI.sqrt();
        let mut x = 0.5;
        while x + 1.0 <= n as f64 / 2.0 {
            g *= x;
            x += 1.0;
        }
        g
    }
}

/// Volume Ω_n of the Euclidean unit ball in ℝⁿ.
pub fn unit_ball_volume(n: usize) -> f64 {
    PI.powf(n as f64 / 2.0) / gamma_half(n + 2)
}

/// Surface area of the unit sphere S^{n-1} ⊂ ℝⁿ.
pub fn unit_sphere_area(n: usize) -> f64 {
    2.0 * PI.powf(n as f64 / 2.0) / gamma_half(n)
}

/// Composite Gauss–Legendre rule on a fixed panel count.
#[derive(Debug, Clone)]
pub struct CompositeRule {
    rule: GaussLegendre,
}

impl CompositeRule {
    pub fn new(order: usize) -> Self {
        let order = NonZeroUsize::new(order.max(2)).expect("order >= 2");
        Self {
            rule: GaussLegendre::new(order),
        }
    }

    /// ∫_a^b f over `panels` equal panels; panel results are pairwise summed.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, panels: usize, mut f: F) -> f64 {
        let panels = panels.max(1);
        let h = (b - a) / panels as f64;
        let parts: Vec<f64> = (0..panels)
            .map(|k| {
                let lo = a + h * k as f64;
                let hi = if k + 1 == panels { b } else { lo + h };
                self.rule.integrate(lo, hi, &mut f)
            })
            .collect();
        pairwise_sum(&parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_volumes() {
        assert!((unit_ball_volume(1) - 2.0).abs() < 1e-15);
        assert!((unit_ball_volume(2) - PI).abs() < 1e-15);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-14);
        assert!((unit_sphere_area(2) - 2.0 * PI).abs() < 1e-15);
        assert!((unit_sphere_area(3) - 4.0 * PI).abs() < 1e-14);
    }

    #[test]
    fn pairwise_matches_naive_on_small_input() {
        let v: Vec<f64> = (0..1000).map(|k| 1.0 / (k as f64 + 1.0)).collect();
        let naive: f64 = v.iter().sum();
        assert!((pairwise_sum(&v) - naive).abs() < 1e-12);
    }

    #[test]
    fn composite_rule_integrates_oscillation() {
        let rule = CompositeRule::new(10);
        let v = rule.integrate(0.0, 100.0, 200, |x| x.cos());
        assert!((v - 100f64.sin()).abs() < 1e-12);
    }
}

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;

use super::bump::{bump_profile, BumpFunction};
use crate::error::{domain, Result};
use crate::numeric::{unit_ball_volume, unit_sphere_area, CompositeRule};

const QUAD_ORDER: usize = 10;
const BOUND_SLACK: f64 = 1e-9;

type Profile = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// Radial function `f(x) = g(|x|)` on ℝⁿ, sampled on `inner ≤ |x| ≤ outer`
/// and taken to vanish elsewhere, with a declared exponent `p`.
pub struct RadialField {
    pub n: usize,
    pub p: f64,
    pub inner: f64,
    pub outer: f64,
    /// Panel width used by the shell quadrature; about a period for
    /// oscillating profiles.
    pub panel_width: f64,
    profile: Profile,
}

impl std::fmt::Debug for RadialField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RadialField")
            .field("n", &self.n)
            .field("p", &self.p)
            .field("inner", &self.inner)
            .field("outer", &self.outer)
            .finish_non_exhaustive()
    }
}

impl RadialField {
    pub fn new<F>(n: usize, p: f64, inner: f64, outer: f64, profile: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if n == 0 {
            return Err(domain("dimension must be positive"));
        }
        if !(p >= 1.0 && p.is_finite()) {
            return Err(domain(format!("p must be finite and at least 1, got {p}")));
        }
        if !(inner >= 0.0 && outer > inner && outer.is_finite()) {
            return Err(domain("need 0 <= inner < outer < inf"));
        }
        Ok(Self {
            n,
            p,
            inner,
            outer,
            panel_width: 1.0,
            profile: Box::new(profile),
        })
    }

    pub fn zero(n: usize, p: f64) -> Result<Self> {
        Self::new(n, p, 0.0, 1.0, |_| 0.0)
    }

    /// `(2/(π r))^{1/2} cos(r − π/4)` for `1 ≤ r ≤ outer` in the plane: the
    /// large-argument form of `J₀`, declared with `p = 4`.
    pub fn bessel_surrogate(outer: f64) -> Result<Self> {
        let mut f = Self::new(2, 4.0, 1.0, outer, |r| (2.0 / (PI * r)).sqrt() * (r - PI / 4.0).cos())?;
        f.panel_width = PI / 2.0;
        Ok(f)
    }

    pub fn with_panel_width(mut self, width: f64) -> Self {
        self.panel_width = width;
        self
    }

    pub fn eval(&self, r: f64) -> f64 {
        if r >= self.inner && r <= self.outer {
            (self.profile)(r)
        } else {
            0.0
        }
    }

    fn shell_integral(&self, lo: f64, hi: f64, power: f64) -> f64 {
        let lo = lo.max(self.inner);
        let hi = hi.min(self.outer);
        if hi <= lo {
            return 0.0;
        }
        let panels = (((hi - lo) / self.panel_width).ceil() as usize).max(16);
        let area = unit_sphere_area(self.n);
        let m = self.n as i32 - 1;
        CompositeRule::new(QUAD_ORDER).integrate(lo, hi, panels, |r| {
            area * r.powi(m) * (self.profile)(r).abs().powf(power)
        })
    }

    /// `∫_{lo ≤ |x| ≤ hi} |f|²`.
    pub fn shell_l2(&self, lo: f64, hi: f64) -> f64 {
        self.shell_integral(lo, hi, 2.0)
    }

    /// `∫_{lo ≤ |x| ≤ hi} |f|^p`.
    pub fn shell_lp(&self, lo: f64, hi: f64) -> f64 {
        self.shell_integral(lo, hi, self.p)
    }

    /// `‖f‖_p` over the sampled range.
    pub fn norm_p(&self) -> f64 {
        self.shell_lp(self.inner, self.outer).powf(1.0 / self.p)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MollifierFlags {
    /// `Σ_j a_j b_j^ε` at the last `ε` over the first.
    pub sum_ratio: f64,
    pub sums_non_increasing: bool,
    /// For each `j`, `b_j^ε` is non-increasing as `ε` decreases, from the
    /// first `ε` at which its shell meets the sampled range.
    pub fixed_j_monotone: bool,
    /// `j` values whose `b_j^ε` increased somewhere along that tail.
    pub fixed_j_violations: Vec<i32>,
    /// `b_j^ε ≤ C ‖f‖_p²` everywhere.
    pub bound_holds: bool,
    /// Shells below the first `j` meet the sampled range at the smallest `ε`.
    pub range_truncated: bool,
}

/// Table of `a_j`, `b_j^ε` and the sums `Σ_j a_j b_j^ε`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MollifierSweep {
    pub n: usize,
    pub alpha: f64,
    pub p: f64,
    pub eps: Vec<f64>,
    pub js: Vec<i32>,
    pub a: Vec<f64>,
    /// `b[e][k]` is `b_{js[k]}^{eps[e]}`.
    pub b: Vec<Vec<f64>>,
    /// Hölder bound on each `b` from its own shell's `L^p` mass.
    pub shell_bound: Vec<Vec<f64>>,
    pub sums: Vec<f64>,
    /// `C` in `b_j^ε ≤ C ‖f‖_p²`, largest over the table.
    pub holder_constant: f64,
    pub norm_p: f64,
    pub l2_sampled: f64,
    pub flags: MollifierFlags,
}

impl MollifierSweep {
    /// CSV with columns `eps, j, b, a, product`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("eps,j,b,a,product\n");
        for (e, eps) in self.eps.iter().enumerate() {
            for (k, j) in self.js.iter().enumerate() {
                let b = self.b[e][k];
                let _ = writeln!(out, "{eps:?},{j},{b:?},{:?},{:?}", self.a[k], self.a[k] * b);
            }
        }
        out
    }

    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "alpha": self.alpha,
            "p": self.p,
            "eps": self.eps,
            "sums": self.sums,
            "holder_constant": self.holder_constant,
            "norm_p": self.norm_p,
            "l2_sampled": self.l2_sampled,
            "flags": self.flags,
        })
    }
}

/// Evaluate `a_j` for `j0 ≤ j ≤ j1` and
/// `b_j^ε = (2^{−j}ε)^{n−α} ∫_{2^j ≤ |εx| ≤ 2^{j+1}} |f|²` on the schedule.
pub fn mollifier_sum(
    field: &RadialField,
    chi: &BumpFunction,
    alpha: f64,
    eps: &[f64],
    j0: i32,
    j1: i32,
) -> Result<MollifierSweep> {
    let n = field.n;
    if chi.n != n {
        return Err(domain("bump and field dimensions differ"));
    }
    if !(alpha > 0.0 && alpha < n as f64) {
        return Err(domain(format!("alpha must lie in (0, {n}), got {alpha}")));
    }
    if eps.is_empty() || eps.iter().any(|e| !(*e > 0.0 && e.is_finite())) {
        return Err(domain("eps schedule must be non-empty and positive"));
    }
    let profile = bump_profile(chi, alpha, j0, j1)?;
    let dn = n as f64;
    let shell_volume = |lo: f64, hi: f64| unit_ball_volume(n) * (hi.powf(dn) - lo.powf(dn));
    let norm_p = field.norm_p();
    let mut b = Vec::with_capacity(eps.len());
    let mut shell_bound = Vec::with_capacity(eps.len());
    let mut holder_constant: f64 = 0.0;
    for &e in eps {
        let mut row = Vec::with_capacity(profile.js.len());
        let mut brow = Vec::with_capacity(profile.js.len());
        for &j in &profile.js {
            let (lo, hi) = (2f64.powi(j) / e, 2f64.powi(j + 1) / e);
            let weight = (2f64.powi(-j) * e).powf(dn - alpha);
            row.push(weight * field.shell_l2(lo, hi));
            let holder = weight * shell_volume(lo, hi).powf(1.0 - 2.0 / field.p);
            holder_constant = holder_constant.max(holder);
            brow.push(holder * field.shell_lp(lo, hi).powf(2.0 / field.p));
        }
        b.push(row);
        shell_bound.push(brow);
    }
    let sums: Vec<f64> = b
        .iter()
        .map(|row| row.iter().zip(&profile.a).map(|(x, y)| x * y).sum())
        .collect();
    let first = sums[0];
    let last = *sums.last().expect("non-empty");
    let sum_ratio = if first > 0.0 { last / first } else { 0.0 };
    let sums_non_increasing = sums.windows(2).all(|w| w[1] <= w[0] * (1.0 + BOUND_SLACK));
    let mut fixed_j_violations = Vec::new();
    for (k, &j) in profile.js.iter().enumerate() {
        let col: Vec<f64> = b.iter().map(|row| row[k]).collect();
        let start = col.iter().position(|&v| v > 0.0).unwrap_or(col.len());
        // the shell meets the range partially at its first entry; compare from there on
        if col[start..].windows(2).any(|w| w[1] > w[0] * (1.0 + BOUND_SLACK)) {
            fixed_j_violations.push(j);
        }
    }
    let global = holder_constant * norm_p * norm_p;
    let bound_holds = b.iter().zip(&shell_bound).all(|(row, brow)| {
        row.iter()
            .zip(brow)
            .all(|(&v, &s)| v <= s * (1.0 + BOUND_SLACK) + 1e-300 && v <= global * (1.0 + BOUND_SLACK) + 1e-300)
    });
    let eps_min = eps.iter().cloned().fold(f64::INFINITY, f64::min);
    let range_truncated = 2f64.powi(j0) / eps_min > field.inner && field.shell_l2(0.0, 2f64.powi(j0) / eps_min) > 0.0;
    Ok(MollifierSweep {
        n,
        alpha,
        p: field.p,
        eps: eps.to_vec(),
        js: profile.js.clone(),
        a: profile.a.clone(),
        b,
        shell_bound,
        sums,
        holder_constant,
        norm_p,
        l2_sampled: field.shell_l2(field.inner, field.outer).sqrt(),
        flags: MollifierFlags {
            sum_ratio,
            sums_non_increasing,
            fixed_j_monotone: fixed_j_violations.is_empty(),
            fixed_j_violations,
            bound_holds,
            range_truncated,
        },
    })
}

//! Seeded inputs shared by the experiments and the acceptance suite.

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fracspec_core::geometry::PointCloud;
use fracspec_core::tauberian::GridFunction;
use fracspec_core::Result;

/// Independent generator for task `task` of a run seeded with `seed`.
pub fn task_rng(seed: u64, task: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&task.to_le_bytes());
    key[16..].copy_from_slice(b"fracspec-task-rn");
    ChaCha8Rng::from_seed(key)
}

/// `count` uniform points in `[0, 1]^n`.
pub fn random_cloud(rng: &mut ChaCha8Rng, n: usize, count: usize) -> Result<PointCloud> {
    let pts = (0..count)
        .map(|_| (0..n).map(|_| rng.random_range(0.0..1.0)).collect())
        .collect();
    PointCloud::new(n, pts)
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dl = den.len();
    let lead = *den.last().expect("non-empty divisor");
    let mut q = vec![0i64; num.len() - dl + 1];
    for i in (0..q.len()).rev() {
        let c = rem[i + dl - 1] / lead;
        q[i] = c;
        for (k, d) in den.iter().enumerate() {
            rem[i + k] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&v| v == 0), "inexact polynomial division");
    q
}

/// Coefficients of the `d`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic(d: usize) -> Vec<i64> {
    let mut p = vec![0i64; d + 1];
    p[0] = -1;
    p[d] = 1;
    for e in 1..d {
        if d % e == 0 {
            p = poly_div_exact(&p, &cyclotomic(e));
        }
    }
    p
}

/// Product modulo `x^m − 1`, i.e. cyclic convolution.
pub fn cyclic_mul(a: &[i64], b: &[i64], m: usize) -> Vec<i64> {
    let mut out = vec![0i64; m];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[(i + j) % m] += x * y;
        }
    }
    out
}

/// Integer `f` on `Z_m` whose DFT vanishes on every frequency of order `d`
/// for a random set of divisors `d`, times a random small cofactor.
pub fn span_instance(rng: &mut ChaCha8Rng, m: usize) -> (Vec<i64>, Vec<usize>) {
    let divisors: Vec<usize> = (1..=m).filter(|d| m % d == 0).collect();
    let chosen: Vec<usize> = divisors.into_iter().filter(|_| rng.random_range(0..3) == 0).collect();
    let mut f = vec![0i64; m];
    f[0] = 1;
    for &d in &chosen {
        f = cyclic_mul(&f, &cyclotomic(d), m);
    }
    let deg = rng.random_range(1..=4usize);
    let g: Vec<i64> = (0..deg).map(|_| rng.random_range(-3..=3)).collect();
    if g.iter().all(|&v| v == 0) {
        return (f, chosen);
    }
    (cyclic_mul(&f, &g, m), chosen)
}

/// Planar grid whose spectrum is `1 + |k|/m` except on the unit-width
/// shells containing the given radii (lattice index units), where it is 0.
pub fn designed_radii_grid(m: usize, radii: &[f64]) -> Result<GridFunction> {
    let probe = GridFunction::from_real(m, 2, 1.0, &vec![0.0; m * m])?;
    let spec: Vec<Complex64> = (0..m * m)
        .map(|i| {
            let k = probe.signed_index(i);
            let r = ((k[0] * k[0] + k[1] * k[1]) as f64).sqrt();
            let hit = radii.iter().any(|&c| r.floor() == c.floor());
            Complex64::new(if hit { 0.0 } else { 1.0 + r / m as f64 }, 0.0)
        })
        .collect();
    GridFunction::from_spectrum(m, 2, 1.0, &spec)
}

/// `|(2/(π r))^{1/2} cos(r − π/4)|`, the large-argument form of `|J₀|`.
pub fn bessel_surrogate_modulus(r: f64) -> f64 {
    ((2.0 / (std::f64::consts::PI * r)).sqrt() * (r - std::f64::consts::FRAC_PI_4).cos()).abs()
}

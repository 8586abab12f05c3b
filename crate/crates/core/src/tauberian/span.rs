use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use super::grid::GridFunction;
use crate::error::{domain, Result};

/// "Zero" means below this fraction of the largest DFT modulus.
pub const DEFAULT_REL_TOL: f64 = 1e-9;

/// Frequencies where the unitary DFT is below `tol`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroSet {
    /// Flat row-major frequency indices.
    pub indices: Vec<usize>,
    /// The same frequencies in centred coordinates.
    pub signed: Vec<Vec<i64>>,
    pub tol: f64,
    pub max_modulus: f64,
}

impl ZeroSet {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

fn resolve_tol(tol: Option<f64>, max: f64) -> Result<f64> {
    match tol {
        Some(t) if t > 0.0 && t.is_finite() => Ok(t),
        Some(t) => Err(domain(format!("tolerance must be positive, got {t}"))),
        None => Ok((DEFAULT_REL_TOL * max).max(f64::MIN_POSITIVE)),
    }
}

pub fn dft_zero_set(f: &GridFunction, tol: Option<f64>) -> Result<ZeroSet> {
    let spec = f.dft();
    let max_modulus = spec.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let tol = resolve_tol(tol, max_modulus)?;
    let indices: Vec<usize> = spec
        .iter()
        .enumerate()
        .filter(|(_, z)| z.norm() < tol)
        .map(|(i, _)| i)
        .collect();
    Ok(ZeroSet {
        signed: indices.iter().map(|&i| f.signed_index(i)).collect(),
        indices,
        tol,
        max_modulus,
    })
}

/// Dimension of the span of all translates of `f` on `Z_m`: the number of
/// characters on which `f̂` does not vanish.
pub fn span_dimension_oracle(f: &GridFunction, tol: Option<f64>) -> Result<usize> {
    if f.n != 1 {
        return Err(domain("span oracle is defined on the one-dimensional torus"));
    }
    Ok(f.m - dft_zero_set(f, tol)?.len())
}

/// Exact rank of the circulant matrix `C[i][j] = f[(i − j) mod m]` by
/// fraction-free (Bareiss) elimination.
pub fn circulant_rank(values: &[i64]) -> usize {
    let m = values.len();
    let mut a: Vec<Vec<BigInt>> = (0..m)
        .map(|i| (0..m).map(|j| BigInt::from(values[(i + m - j) % m])).collect())
        .collect();
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..m {
        let Some(p) = (rank..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..m {
            for c in col + 1..m {
                let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                a[r][c] = v / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        if rank == m {
            break;
        }
    }
    rank
}

/// Smallest singular value of the circulant of `f`, `min_k |F(k)|` with the
/// unnormalised DFT `F`, and a unit-norm character `h` attaining it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Annihilator {
    pub residual: f64,
    pub frequency: usize,
    pub tol: f64,
    /// The character `e^{2πi k x/m}/√m`, present when the residual is below `tol`.
    #[serde(skip)]
    pub witness: Option<Vec<Complex64>>,
}

pub fn annihilator_residual(f: &GridFunction, tol: Option<f64>) -> Result<Annihilator> {
    if f.n != 1 {
        return Err(domain("annihilator residual is defined on the one-dimensional torus"));
    }
    let m = f.m;
    let scale = (m as f64).sqrt();
    let spec: Vec<f64> = f.dft().iter().map(|z| z.norm() * scale).collect();
    let max = spec.iter().cloned().fold(0.0, f64::max);
    let tol = resolve_tol(tol, max)?;
    let (frequency, &residual) = spec
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("m >= 2");
    let witness = (residual < tol).then(|| {
        (0..m)
            .map(|x| Complex64::from_polar(1.0 / scale, 2.0 * PI * (frequency * x % m) as f64 / m as f64))
            .collect()
    });
    Ok(Annihilator {
        residual,
        frequency,
        tol,
        witness,
    })
}

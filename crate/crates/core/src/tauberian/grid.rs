use std::fmt::Write as _;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Complex samples on `Z_m^n` (`n ≤ 2`), row-major, with a physical cell size.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub m: usize,
    pub n: usize,
    pub cell: f64,
    pub values: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct Header {
    m: usize,
    n: usize,
    cell: f64,
}

fn transform(values: &mut [Complex64], m: usize, n: usize, inverse: bool) {
    let mut planner = FftPlanner::<f64>::new();
    let fft = if inverse {
        planner.plan_fft_inverse(m)
    } else {
        planner.plan_fft_forward(m)
    };
    // rows
    for row in values.chunks_mut(m) {
        fft.process(row);
    }
    if n == 2 {
        let mut col = vec![Complex64::new(0.0, 0.0); m];
        for c in 0..m {
            for r in 0..m {
                col[r] = values[r * m + c];
            }
            fft.process(&mut col);
            for r in 0..m {
                values[r * m + c] = col[r];
            }
        }
    }
}

impl GridFunction {
    pub fn new(m: usize, n: usize, cell: f64, values: Vec<Complex64>) -> Result<Self> {
        if m < 2 {
            return Err(domain("grid side m must be at least 2"));
        }
        if !(n == 1 || n == 2) {
            return Err(domain("grid dimension must be 1 or 2"));
        }
        if !(cell > 0.0 && cell.is_finite()) {
            return Err(domain("cell size must be positive"));
        }
        if values.len() != m.pow(n as u32) {
            return Err(domain(format!("expected {} values, got {}", m.pow(n as u32), values.len())));
        }
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(domain("grid values must be finite"));
        }
        Ok(Self { m, n, cell, values })
    }

    pub fn from_real(m: usize, n: usize, cell: f64, values: &[f64]) -> Result<Self> {
        Self::new(m, n, cell, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Unitary DFT: `(1/√(m^n)) Σ_x f(x) e^{−2πi k·x/m}`.
    pub fn dft(&self) -> Vec<Complex64> {
        let mut v = self.values.clone();
        transform(&mut v, self.m, self.n, false);
        let s = 1.0 / (self.len() as f64).sqrt();
        v.iter_mut().for_each(|z| *z *= s);
        v
    }

    /// Inverse of [`GridFunction::dft`].
    pub fn from_spectrum(m: usize, n: usize, cell: f64, spectrum: &[Complex64]) -> Result<Self> {
        let mut v = spectrum.to_vec();
        if v.len() != m.pow(n as u32) {
            return Err(domain("spectrum length does not match the grid"));
        }
        transform(&mut v, m, n, true);
        let s = 1.0 / (v.len() as f64).sqrt();
        v.iter_mut().for_each(|z| *z *= s);
        Self::new(m, n, cell, v)
    }

    /// Centred frequency index in `(−m/2, m/2]` for each axis.
    pub fn signed_index(&self, flat: usize) -> Vec<i64> {
        let mut rest = flat;
        let mut out = vec![0i64; self.n];
        for c in out.iter_mut().rev() {
            let k = (rest % self.m) as i64;
            rest /= self.m;
            *c = if 2 * k > self.m as i64 { k - self.m as i64 } else { k };
        }
        out
    }

    pub fn header_json(&self) -> String {
        serde_json::to_string(&Header {
            m: self.m,
            n: self.n,
            cell: self.cell,
        })
        .expect("header serialises")
    }

    /// CSV with columns `index, re, im` (flat row-major index).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,re,im\n");
        for (i, v) in self.values.iter().enumerate() {
            let _ = writeln!(out, "{i},{:?},{:?}", v.re, v.im);
        }
        out
    }

    pub fn from_parts(header_json: &str, csv: &str) -> Result<Self> {
        let h: Header = serde_json::from_str(header_json).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })?;
        let total = h.m.checked_pow(h.n as u32).ok_or_else(|| domain("grid too large"))?;
        let mut values = vec![None; total];
        for (ln, line) in csv.lines().enumerate().skip(1) {
            if line.trim().is_empty() {
                continue;
            }
            let bad = |msg: &str| Error::Parse {
                line: ln + 1,
                msg: msg.to_string(),
            };
            let cols: Vec<&str> = line.split(',').map(str::trim).collect();
            if cols.len() != 3 {
                return Err(bad("expected index,re,im"));
            }
            let i: usize = cols[0].parse().map_err(|_| bad("bad index"))?;
            let re: f64 = cols[1].parse().map_err(|_| bad("bad real part"))?;
            let im: f64 = cols[2].parse().map_err(|_| bad("bad imaginary part"))?;
            let slot = values.get_mut(i).ok_or_else(|| bad("index out of range"))?;
            *slot = Some(Complex64::new(re, im));
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| domain(format!("missing grid value at index {i}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(h.m, h.n, h.cell, values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitary_round_trip_and_parseval() {
        let vals: Vec<Complex64> = (0..64).map(|k| Complex64::new((k as f64).sin(), (k * k % 7) as f64)).collect();
        let g = GridFunction::new(8, 2, 0.5, vals.clone()).unwrap();
        let spec = g.dft();
        let e1: f64 = vals.iter().map(|v| v.norm_sqr()).sum();
        let e2: f64 = spec.iter().map(|v| v.norm_sqr()).sum();
        assert!((e1 - e2).abs() < 1e-10);
        let back = GridFunction::from_spectrum(8, 2, 0.5, &spec).unwrap();
        for (a, b) in back.values.iter().zip(&vals) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn two_point_dft_by_hand() {
        let g = GridFunction::from_real(2, 1, 1.0, &[1.0, -1.0]).unwrap();
        let s = g.dft();
        assert!(s[0].norm() < 1e-15);
        assert!((s[1] - Complex64::new(2f64.sqrt(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn csv_round_trip() {
        let g = GridFunction::new(4, 1, 0.25, (0..4).map(|k| Complex64::new(k as f64 / 3.0, -0.1)).collect()).unwrap();
        let back = GridFunction::from_parts(&g.header_json(), &g.to_csv()).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn signed_indices() {
        let g = GridFunction::from_real(4, 2, 1.0, &[0.0; 16]).unwrap();
        assert_eq!(g.signed_index(0), vec![0, 0]);
        assert_eq!(g.signed_index(3), vec![0, -1]);
        assert_eq!(g.signed_index(2 * 4 + 1), vec![2, 1]);
    }
}

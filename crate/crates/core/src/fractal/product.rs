use super::level::{limit_neighborhood_volume_f64, CantorLevel};
use super::params::CantorParams;
use crate::error::{domain, Error, Result};
use crate::geometry::{Interval, PointCloud, WeightedMeasure};
use crate::rational::{self, Rational};

/// Largest number of cubes or atoms ever materialised.
pub const PRODUCT_BUDGET: u128 = 10_000_000;

/// `K_j^n` as an implicit list of `N^{jn}` cubes of side `L_j`.
#[derive(Debug, Clone)]
pub struct ProductSet {
    pub factor: CantorLevel,
    pub n: usize,
}

impl ProductSet {
    pub fn new(factor: CantorLevel, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(domain("product needs at least one factor"));
        }
        Ok(Self { factor, n })
    }

    pub fn cube_count(&self) -> u128 {
        (self.factor.len() as u128).checked_pow(self.n as u32).unwrap_or(u128::MAX)
    }

    pub fn cube_side(&self) -> &Rational {
        &self.factor.member_length
    }

    /// Cube number `index`, decoded in mixed radix (last axis fastest).
    pub fn cube(&self, index: u128) -> Option<Vec<&Interval>> {
        if index >= self.cube_count() {
            return None;
        }
        let base = self.factor.len() as u128;
        let members = self.factor.members();
        let mut rest = index;
        let mut out = vec![&members[0]; self.n];
        for slot in out.iter_mut().rev() {
            *slot = &members[(rest % base) as usize];
            rest /= base;
        }
        Some(out)
    }

    /// Fresh cursor over all cubes; cursors are independent.
    pub fn cubes(&self) -> impl Iterator<Item = Vec<&Interval>> + '_ {
        (0..self.cube_count()).map_while(move |i| self.cube(i))
    }

    /// Lower corners of all cubes, refused above [`PRODUCT_BUDGET`].
    pub fn corners(&self) -> Result<PointCloud> {
        let count = self.cube_count();
        if count > PRODUCT_BUDGET {
            return Err(Error::Size {
                what: "product cubes",
                needed: count,
                limit: PRODUCT_BUDGET,
            });
        }
        let starts: Vec<f64> = self
            .factor
            .members()
            .iter()
            .map(|i| rational::to_f64(&i.start))
            .collect();
        let pts = (0..count)
            .map(|idx| {
                let mut rest = idx;
                let mut p = vec![0.0; self.n];
                for c in p.iter_mut().rev() {
                    *c = starts[(rest % starts.len() as u128) as usize];
                    rest /= starts.len() as u128;
                }
                p
            })
            .collect();
        PointCloud::new(self.n, pts)
    }
}

/// `n`-fold tensor power of a one-dimensional measure.
pub fn product_measure(measure: &WeightedMeasure, n: usize) -> Result<WeightedMeasure> {
    if measure.dim() != 1 {
        return Err(domain("product_measure expects a one-dimensional factor"));
    }
    if n == 0 {
        return Err(domain("product needs at least one factor"));
    }
    let atoms = measure.atoms();
    let count = (atoms.len() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if count > PRODUCT_BUDGET {
        return Err(Error::Size {
            what: "product atoms",
            needed: count,
            limit: PRODUCT_BUDGET,
        });
    }
    let mut out: Vec<(Vec<f64>, f64)> = vec![(Vec::with_capacity(n), 1.0)];
    for _ in 0..n {
        out = out
            .iter()
            .flat_map(|(p, w)| {
                atoms.iter().map(move |(x, v)| {
                    let mut q = p.clone();
                    q.push(x[0]);
                    (q, w * v)
                })
            })
            .collect();
    }
    WeightedMeasure::new(n, out)
}

/// `|K(ε/√n)|^n ≤ |K^n(ε)| ≤ |K(ε)|^n`, with each factor bracketed at
/// `level`. Returns the outer bracket `(low, high)`.
pub fn product_neighborhood_bounds(params: &CantorParams, eps: f64, n: usize, level: usize) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(domain("product needs at least one factor"));
    }
    let inner = limit_neighborhood_volume_f64(params, eps / (n as f64).sqrt(), level)?;
    let outer = limit_neighborhood_volume_f64(params, eps, level)?;
    Ok((inner.low.powi(n as i32), outer.high.powi(n as i32)))
}

use num_bigint::BigInt;
use num_traits::One;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::params::{CantorParams, EtaRule};
use crate::error::{domain, Error, Result};
use crate::rational::{self, Rational};

/// Maximum number of `N`-tuples drawn before giving up.
pub const REJECTION_BUDGET: u64 = 1_000_000;

const GRID_BITS: u32 = 32;

/// `N` independent uniform offsets in `[0, 1 − η]`, redrawn until every
/// spacing exceeds `η`. Offsets live on a dyadic grid of `2^32` steps so
/// they are exact rationals and identical across platforms.
pub fn sample_salem_points(n_maps: usize, eta: &Rational, seed: u64) -> Result<Vec<Rational>> {
    if n_maps < 2 {
        return Err(domain("need at least two maps"));
    }
    let zero = Rational::from_integer(BigInt::from(0));
    if *eta <= zero || *eta >= Rational::one() {
        return Err(domain(format!("eta must lie in (0, 1), got {eta}")));
    }
    let room = Rational::one() - eta;
    if eta * rational::int(n_maps as i64 - 1) >= room {
        return Err(domain(format!(
            "infeasible: (N-1)*eta = {} leaves no room in [0, 1-eta]",
            eta * rational::int(n_maps as i64 - 1)
        )));
    }
    let steps = 1u64 << GRID_BITS;
    let unit = &room / rational::int(steps as i64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = vec![0u64; n_maps];
    for _ in 0..REJECTION_BUDGET {
        for d in draw.iter_mut() {
            *d = rng.random_range(0..=steps);
        }
        draw.sort_unstable();
        let points: Vec<Rational> = draw.iter().map(|&k| &unit * rational::int(k as i64)).collect();
        if points.windows(2).all(|w| &w[1] - &w[0] > *eta) {
            return Ok(points);
        }
    }
    Err(Error::RetryBudget(REJECTION_BUDGET))
}

impl CantorParams {
    /// Salem-type parameters with sampled offsets.
    pub fn random(n_maps: usize, eta: Rational, rule: EtaRule, seed: u64) -> Result<Self> {
        let points = sample_salem_points(n_maps, &eta, seed)?;
        let mut p = Self::new(n_maps, eta, points, rule);
        p.seed = Some(seed);
        p.validated()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn two_points_respect_constraints_and_seed() {
        for seed in 0..20 {
            let a = sample_salem_points(2, &ratio(1, 3), seed).unwrap();
            assert!(&a[1] - &a[0] > ratio(1, 3));
            assert!(a[1] <= ratio(2, 3));
            assert_eq!(a, sample_salem_points(2, &ratio(1, 3), seed).unwrap());
        }
        assert_ne!(
            sample_salem_points(2, &ratio(1, 3), 1).unwrap(),
            sample_salem_points(2, &ratio(1, 3), 2).unwrap()
        );
    }

    #[test]
    fn four_maps_sixteenth_is_valid() {
        let p = CantorParams::random(4, ratio(1, 16), EtaRule::Constant, 7).unwrap();
        assert!((p.beta - 0.5).abs() < 1e-15);
        assert!(p.validate().is_valid());
    }

    #[test]
    fn infeasible_spacing() {
        let err = sample_salem_points(3, &ratio(2, 5), 0).unwrap_err();
        assert!(matches!(err, Error::Domain(_)), "{err:?}");
    }
}

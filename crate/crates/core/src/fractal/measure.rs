use num_traits::{One, Zero};

use super::level::{build_level, CantorLevel};
use super::params::CantorParams;
use crate::error::{domain, Result};
use crate::geometry::WeightedMeasure;
use crate::rational::{self, Rational};

/// Natural measure discretised at level `J`: one atom of mass `N^{−J}` at
/// the midpoint of every level-`J` interval.
#[derive(Debug, Clone)]
pub struct CantorMeasure {
    pub params: CantorParams,
    pub level: CantorLevel,
    pub weight: Rational,
}

pub fn natural_measure(params: &CantorParams, j: usize) -> Result<CantorMeasure> {
    if j == 0 {
        return Err(domain("measure level must be at least 1"));
    }
    let level = build_level(params, j)?;
    let weight = Rational::one() / rational::pow(&rational::int(params.n_maps as i64), j as u32);
    Ok(CantorMeasure {
        params: params.clone(),
        level,
        weight,
    })
}

impl CantorMeasure {
    pub fn depth(&self) -> usize {
        self.level.level
    }

    pub fn midpoints(&self) -> Vec<Rational> {
        let half = rational::ratio(1, 2);
        self.level
            .members()
            .iter()
            .map(|i| &i.start + &i.length * &half)
            .collect()
    }

    pub fn midpoints_f64(&self) -> Vec<f64> {
        self.midpoints().iter().map(rational::to_f64).collect()
    }

    pub fn total_mass(&self) -> Rational {
        &self.weight * rational::int(self.level.len() as i64)
    }

    /// Mass of the closed interval `[lo, hi]`: atoms inside it times the weight.
    pub fn interval_mass(&self, lo: &Rational, hi: &Rational) -> Rational {
        let inside = self.midpoints().iter().filter(|m| *m >= lo && *m <= hi).count();
        &self.weight * rational::int(inside as i64)
    }

    /// Every level-`J` interval holds exactly `N` level-`(J+1)` children,
    /// so its mass equals the sum of its children's masses.
    pub fn refinement_consistent(&self) -> Result<bool> {
        let finer = build_level(&self.params, self.depth() + 1)?;
        let n = self.params.n_maps;
        let child_weight = &self.weight / rational::int(n as i64);
        let mut children = finer.members().iter().peekable();
        for parent in self.level.members() {
            let mut mass = Rational::zero();
            while let Some(c) = children.peek() {
                if !parent.contains(c) {
                    break;
                }
                mass += &child_weight;
                children.next();
            }
            if mass != self.weight {
                return Ok(false);
            }
        }
        Ok(children.next().is_none())
    }

    pub fn to_weighted(&self) -> Result<WeightedMeasure> {
        let w = rational::to_f64(&self.weight);
        WeightedMeasure::new(1, self.midpoints_f64().into_iter().map(|x| (vec![x], w)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn total_mass_is_one() {
        let p = CantorParams::middle_thirds();
        for j in 1..6 {
            assert_eq!(natural_measure(&p, j).unwrap().total_mass(), int(1));
        }
    }

    #[test]
    fn left_third_has_half() {
        let m = natural_measure(&CantorParams::middle_thirds(), 1).unwrap();
        assert_eq!(m.interval_mass(&int(0), &ratio(1, 3)), ratio(1, 2));
    }

    #[test]
    fn leftmost_level_five_interval() {
        let m = natural_measure(&CantorParams::middle_thirds(), 5).unwrap();
        assert_eq!(m.interval_mass(&int(0), &ratio(1, 243)), ratio(1, 32));
        assert!(m.refinement_consistent().unwrap());
    }

    #[test]
    fn level_zero_rejected() {
        assert!(natural_measure(&CantorParams::middle_thirds(), 0).is_err());
    }
}

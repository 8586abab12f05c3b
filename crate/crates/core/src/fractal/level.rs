use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::params::{CantorParams, EtaRule};
use crate::error::{domain, Error, Result};
use crate::geometry::{Interval, IntervalUnion};
use crate::rational::{self, Rational};

/// Deepest level built in exact arithmetic.
pub const MAX_RATIONAL_LEVEL: usize = 20;
/// Member count above which exact levels are refused.
pub const MAX_MEMBERS: u128 = 1 << 22;

/// Level `K_j`: `N^j` disjoint closed intervals of common length `L_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct CantorLevel {
    pub level: usize,
    pub member_length: Rational,
    intervals: IntervalUnion,
}

impl CantorLevel {
    pub fn intervals(&self) -> &IntervalUnion {
        &self.intervals
    }

    pub fn members(&self) -> &[Interval] {
        self.intervals.intervals()
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// CSV of exact members (numerator/denominator columns).
    pub fn to_csv(&self) -> String {
        self.intervals.to_csv()
    }
}

fn check_budget(params: &CantorParams, j: usize) -> Result<()> {
    if j > MAX_RATIONAL_LEVEL {
        return Err(Error::Size {
            what: "exact level depth",
            needed: j as u128,
            limit: MAX_RATIONAL_LEVEL as u128,
        });
    }
    let members = (params.n_maps as u128).checked_pow(j as u32).unwrap_or(u128::MAX);
    if members > MAX_MEMBERS {
        return Err(Error::Size {
            what: "level members",
            needed: members,
            limit: MAX_MEMBERS,
        });
    }
    Ok(())
}

/// Build `K_j` exactly. `j = 0` gives `[0, 1]`.
pub fn build_level(params: &CantorParams, j: usize) -> Result<CantorLevel> {
    let params = params.clone().validated()?;
    check_budget(&params, j)?;
    let mut starts = vec![Rational::zero()];
    let mut parent = Rational::one();
    for m in 1..=j {
        let offsets: Vec<Rational> = params.points.iter().map(|a| a * &parent).collect();
        starts = starts
            .iter()
            .flat_map(|s| offsets.iter().map(move |o| s + o))
            .collect();
        parent *= params.eta_at(m)?;
    }
    let members = starts
        .into_iter()
        .map(|s| Interval::new(s, parent.clone()))
        .collect::<Result<Vec<_>>>()?;
    let expected = members.len();
    let intervals = IntervalUnion::new(members)?;
    if intervals.len() != expected {
        return Err(domain("level members overlap; spacing constraint violated"));
    }
    Ok(CantorLevel {
        level: j,
        member_length: parent,
        intervals,
    })
}

/// Left endpoints of `K_j` in `f64`, sorted. Cheap enough for levels well
/// beyond the exact budget; used to sample point clouds of the limit set.
pub fn level_starts_f64(params: &CantorParams, j: usize) -> Result<Vec<f64>> {
    let members = (params.n_maps as u128).checked_pow(j as u32).unwrap_or(u128::MAX);
    if members > 1 << 26 {
        return Err(Error::Size {
            what: "sampled level members",
            needed: members,
            limit: 1 << 26,
        });
    }
    let offsets: Vec<f64> = params.points.iter().map(rational::to_f64).collect();
    let mut starts = vec![0.0f64];
    let mut parent = 1.0f64;
    for m in 1..=j {
        starts = starts
            .iter()
            .flat_map(|&s| offsets.iter().map(move |&a| s + a * parent))
            .collect();
        parent *= rational::to_f64(&params.eta_at(m)?);
    }
    starts.sort_by(f64::total_cmp);
    Ok(starts)
}

/// Bracket on `|K(ε)|` for the limit set `K`, from level `j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitVolume {
    pub level: usize,
    pub low: f64,
    pub high: f64,
    /// Set when the bracket collapses and the value is known exactly.
    pub exact: Option<String>,
}

/// `K ⊂ K_j`, and every point of `K_j` is within `L_j` of `K`, so
/// `|K_j(ε − L_j)| ≤ |K(ε)| ≤ |K_j(ε)|`. When both endpoints of every
/// member lie in `K` and `L_j ≤ 2ε`, the gaps inside a member are covered
/// and the upper value is exact.
pub fn limit_neighborhood_volume(params: &CantorParams, eps: &Rational, j: usize) -> Result<LimitVolume> {
    if !eps.is_positive() {
        return Err(domain("eps must be positive"));
    }
    let level = build_level(params, j)?;
    let high = level.intervals.neighborhood_volume(eps)?;
    let two_eps = eps * rational::int(2);
    if params.endpoints_in_limit(j)? && level.member_length <= two_eps {
        let v = rational::to_f64(&high);
        return Ok(LimitVolume {
            level: j,
            low: v,
            high: v,
            exact: Some(rational::format(&high)),
        });
    }
    let shrunk = eps - &level.member_length;
    let low = if shrunk.is_positive() {
        rational::to_f64(&level.intervals.neighborhood_volume(&shrunk)?)
    } else {
        0.0
    };
    Ok(LimitVolume {
        level: j,
        low,
        high: rational::to_f64(&high),
        exact: None,
    })
}

/// Floating-point variant for irrational `ε` (e.g. `ε/√n`).
pub fn limit_neighborhood_volume_f64(params: &CantorParams, eps: f64, j: usize) -> Result<LimitVolume> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(domain("eps must be positive and finite"));
    }
    let level = build_level(params, j)?;
    let len = rational::to_f64(&level.member_length);
    let high = level.intervals.neighborhood_volume_f64(eps)?;
    if params.endpoints_in_limit(j)? && len <= 2.0 * eps {
        return Ok(LimitVolume {
            level: j,
            low: high,
            high,
            exact: None,
        });
    }
    let low = if eps > len {
        level.intervals.neighborhood_volume_f64(eps - len)?
    } else {
        0.0
    };
    Ok(LimitVolume {
        level: j,
        low,
        high,
        exact: None,
    })
}

/// `|K(ε)| ε^{β−1}` at `ε = η^m`, exactly. With the constant rule,
/// `ε^β = N^{−m}`, so the ratio is `|K(ε)| / (N^m η^m)`.
pub fn cantor_minkowski_ratio(params: &CantorParams, m: usize) -> Result<Rational> {
    if params.rule != EtaRule::Constant {
        return Err(domain("exact Minkowski ratio needs the constant eta rule"));
    }
    if m == 0 {
        return Err(domain("scale exponent m must be at least 1"));
    }
    let eps = rational::pow(&params.eta, m as u32);
    let vol = limit_neighborhood_volume(params, &eps, m)?;
    let exact = vol
        .exact
        .ok_or_else(|| domain("level endpoints are not in the limit set; volume is only bracketed"))?;
    let vol = rational::parse(&exact).map_err(Error::Domain)?;
    let n_m = rational::pow(&rational::int(params.n_maps as i64), m as u32);
    Ok(vol / (n_m * eps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn pairs(level: &CantorLevel) -> Vec<(Rational, Rational)> {
        level.members().iter().map(|i| (i.start.clone(), i.end())).collect()
    }

    #[test]
    fn middle_thirds_first_levels() {
        let p = CantorParams::middle_thirds();
        let k1 = build_level(&p, 1).unwrap();
        assert_eq!(pairs(&k1), vec![(int(0), ratio(1, 3)), (ratio(2, 3), int(1))]);
        let k2 = build_level(&p, 2).unwrap();
        assert_eq!(
            pairs(&k2),
            vec![
                (int(0), ratio(1, 9)),
                (ratio(2, 9), ratio(3, 9)),
                (ratio(6, 9), ratio(7, 9)),
                (ratio(8, 9), int(1)),
            ]
        );
        assert!(k1.intervals().contains_union(k2.intervals()));
    }

    #[test]
    fn tapered_shrinks_first_level() {
        let mut p = CantorParams::middle_thirds();
        p.rule = EtaRule::Tapered;
        let k1 = build_level(&p, 1).unwrap();
        assert_eq!(
            pairs(&k1),
            vec![(int(0), ratio(1, 4)), (ratio(2, 3), ratio(2, 3) + ratio(1, 4))]
        );
    }

    #[test]
    fn budgets() {
        let p = CantorParams::middle_thirds();
        assert!(matches!(build_level(&p, 21), Err(Error::Size { .. })));
        let mut big = p.clone();
        big.n_maps = 3;
        big.eta = ratio(1, 5);
        big.beta = CantorParams::dimension(3, &big.eta);
        big.points = vec![int(0), ratio(2, 5), ratio(4, 5)];
        assert!(matches!(build_level(&big, 14), Err(Error::Size { .. })));
    }

    #[test]
    fn invalid_params_refused() {
        let mut p = CantorParams::middle_thirds();
        p.points = vec![int(0), ratio(1, 4)];
        assert!(matches!(build_level(&p, 1), Err(Error::Invalid(_))));
    }

    #[test]
    fn float_starts_match_exact() {
        let p = CantorParams::middle_thirds();
        let exact = build_level(&p, 6).unwrap();
        let approx = level_starts_f64(&p, 6).unwrap();
        for (iv, x) in exact.members().iter().zip(&approx) {
            assert!((rational::to_f64(&iv.start) - x).abs() < 1e-15);
        }
    }

    #[test]
    fn middle_thirds_ratio_is_five_halves() {
        let p = CantorParams::middle_thirds();
        for m in 1..=6 {
            assert_eq!(cantor_minkowski_ratio(&p, m).unwrap(), ratio(5, 2), "m = {m}");
        }
    }

    #[test]
    fn bracket_contains_exact_value() {
        let p = CantorParams::middle_thirds();
        let eps = ratio(1, 27);
        let exact = limit_neighborhood_volume(&p, &eps, 3).unwrap();
        assert!(exact.exact.is_some());
        let coarse = limit_neighborhood_volume(&p, &ratio(1, 100), 3).unwrap();
        assert!(coarse.exact.is_none());
        let fine = limit_neighborhood_volume(&p, &ratio(1, 100), 8).unwrap();
        assert!(fine.low <= fine.high);
        assert!(coarse.low <= fine.low + 1e-15 && fine.high <= coarse.high + 1e-15);
    }
}

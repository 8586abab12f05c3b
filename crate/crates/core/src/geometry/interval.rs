use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::rational::{self, Rational};

/// Closed interval `[start, start + length]` with exact endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub start: Rational,
    pub length: Rational,
}

impl Interval {
    pub fn new(start: Rational, length: Rational) -> Result<Self> {
        if !length.is_positive() {
            return Err(domain(format!("interval length must be positive, got {length}")));
        }
        Ok(Self { start, length })
    }

    pub fn end(&self) -> Rational {
        &self.start + &self.length
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.start <= other.start && other.end() <= self.end()
    }
}

/// Finite union of closed intervals, kept sorted and pairwise disjoint.
///
/// Touching or overlapping members are merged on construction, so two
/// unions describe the same set iff they compare equal.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IntervalUnion {
    intervals: Vec<Interval>,
}

impl IntervalUnion {
    pub fn new(intervals: Vec<Interval>) -> Result<Self> {
        if let Some(bad) = intervals.iter().find(|i| !i.length.is_positive()) {
            return Err(domain(format!("interval length must be positive, got {}", bad.length)));
        }
        let mut u = Self { intervals };
        u.normalize();
        Ok(u)
    }

    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let v = pairs
            .into_iter()
            .map(|(s, l)| Interval::new(s, l))
            .collect::<Result<Vec<_>>>()?;
        Self::new(v)
    }

    /// Sort and merge touching/overlapping members.
    pub fn normalize(&mut self) {
        self.intervals.sort_by(|a, b| a.start.cmp(&b.start));
        let mut merged: Vec<Interval> = Vec::with_capacity(self.intervals.len());
        for iv in self.intervals.drain(..) {
            match merged.last_mut() {
                Some(last) if iv.start <= last.end() => {
                    let end = iv.end();
                    if end > last.end() {
                        last.length = end - &last.start;
                    }
                }
                _ => merged.push(iv),
            }
        }
        self.intervals = merged;
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Lebesgue measure of the union.
    pub fn measure(&self) -> Rational {
        self.intervals.iter().fold(Rational::zero(), |acc, i| acc + &i.length)
    }

    /// `true` when every member of `other` lies inside one member of `self`.
    pub fn contains_union(&self, other: &IntervalUnion) -> bool {
        let mut k = 0;
        for iv in &other.intervals {
            while k < self.intervals.len() && self.intervals[k].end() < iv.start {
                k += 1;
            }
            if k == self.intervals.len() || !self.intervals[k].contains(iv) {
                return false;
            }
        }
        true
    }

    /// Exact measure of the open fattening `{x : d(x, U) < ε}`.
    pub fn neighborhood_volume(&self, eps: &Rational) -> Result<Rational> {
        if !eps.is_positive() {
            return Err(domain("eps must be positive"));
        }
        let mut total = Rational::zero();
        let mut current: Option<(Rational, Rational)> = None;
        for iv in &self.intervals {
            let lo = &iv.start - eps;
            let hi = iv.end() + eps;
            current = match current {
                Some((clo, chi)) if lo <= chi => Some((clo, if hi > chi { hi } else { chi })),
                Some((clo, chi)) => {
                    total += chi - clo;
                    Some((lo, hi))
                }
                None => Some((lo, hi)),
            };
        }
        if let Some((clo, chi)) = current {
            total += chi - clo;
        }
        Ok(total)
    }

    /// Floating-point variant of [`Self::neighborhood_volume`] for
    /// irrational radii. Endpoints are rounded once to `f64`.
    pub fn neighborhood_volume_f64(&self, eps: f64) -> Result<f64> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(domain("eps must be positive and finite"));
        }
        let spans: Vec<(f64, f64)> = self
            .intervals
            .iter()
            .map(|i| (rational::to_f64(&i.start), rational::to_f64(&i.end())))
            .collect();
        Ok(merged_length(spans.into_iter().map(|(a, b)| (a - eps, b + eps))))
    }

    /// Minimum number of closed balls (segments of length `2ε`, arbitrary
    /// centres) covering the union. Left-to-right greedy placement is
    /// optimal in one dimension.
    pub fn covering_count(&self, eps: &Rational) -> Result<u64> {
        if !eps.is_positive() {
            return Err(domain("eps must be positive"));
        }
        let width = eps * rational::int(2);
        let mut covered_to: Option<Rational> = None;
        let mut count: u64 = 0;
        for iv in &self.intervals {
            let end = iv.end();
            let start = match &covered_to {
                Some(c) if end <= *c => continue,
                Some(c) if iv.start <= *c => c.clone(),
                _ => iv.start.clone(),
            };
            let span = &end - &start;
            let k = (span / &width).ceil();
            let k = if k.is_zero() { Rational::one() } else { k };
            count += u64::try_from(k.to_integer()).map_err(|_| Error::Size {
                what: "covering count",
                needed: u128::MAX,
                limit: u64::MAX as u128,
            })?;
            covered_to = Some(start + k * &width);
        }
        Ok(count)
    }

    /// CSV with columns `start_numerator,start_denominator,length_numerator,length_denominator`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("start_numerator,start_denominator,length_numerator,length_denominator\n");
        for iv in &self.intervals {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                iv.start.numer(),
                iv.start.denom(),
                iv.length.numer(),
                iv.length.denom()
            );
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut v = Vec::new();
        for (lineno, line) in text.lines().enumerate().skip(1) {
            if line.trim().is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split(',').map(str::trim).collect();
            let parse = |s: &str| -> Result<num_bigint::BigInt> {
                s.parse().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    msg: format!("bad integer {s:?}"),
                })
            };
            if cols.len() != 4 {
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: format!("expected 4 columns, got {}", cols.len()),
                });
            }
            let start = Rational::new(parse(cols[0])?, parse(cols[1])?);
            let length = Rational::new(parse(cols[2])?, parse(cols[3])?);
            v.push(Interval::new(start, length)?);
        }
        Self::new(v)
    }
}

/// Length of a union of open spans `(lo, hi)`.
pub(crate) fn merged_length<I: IntoIterator<Item = (f64, f64)>>(spans: I) -> f64 {
    let mut v: Vec<(f64, f64)> = spans.into_iter().collect();
    v.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut pieces = Vec::with_capacity(v.len());
    let mut cur: Option<(f64, f64)> = None;
    for (lo, hi) in v {
        cur = match cur {
            Some((clo, chi)) if lo <= chi => Some((clo, chi.max(hi))),
            Some((clo, chi)) => {
                pieces.push(chi - clo);
                Some((lo, hi))
            }
            None => Some((lo, hi)),
        };
    }
    if let Some((clo, chi)) = cur {
        pieces.push(chi - clo);
    }
    crate::numeric::pairwise_sum(&pieces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn union(pairs: &[(i64, i64, i64, i64)]) -> IntervalUnion {
        IntervalUnion::from_pairs(pairs.iter().map(|&(a, b, c, d)| (ratio(a, b), ratio(c, d)))).unwrap()
    }

    #[test]
    fn normalize_merges_touching() {
        let u = union(&[(1, 2, 1, 2), (0, 1, 1, 2), (3, 1, 1, 1)]);
        assert_eq!(u.len(), 2);
        assert_eq!(u.intervals()[0].start, int(0));
        assert_eq!(u.intervals()[0].length, int(1));
    }

    #[test]
    fn rejects_non_positive_length() {
        assert!(IntervalUnion::from_pairs([(int(0), int(0))]).is_err());
        assert!(IntervalUnion::from_pairs([(int(0), int(-1))]).is_err());
    }

    #[test]
    fn unit_interval_fattening() {
        let u = union(&[(0, 1, 1, 1)]);
        assert_eq!(u.neighborhood_volume(&ratio(1, 10)).unwrap(), ratio(6, 5));
        assert!((u.neighborhood_volume_f64(0.1).unwrap() - 1.2).abs() < 1e-15);
    }

    #[test]
    fn middle_thirds_level_two_fattening_is_ten_ninths() {
        let u = union(&[(0, 1, 1, 9), (2, 9, 1, 9), (6, 9, 1, 9), (8, 9, 1, 9)]);
        assert_eq!(u.neighborhood_volume(&ratio(1, 9)).unwrap(), ratio(10, 9));
    }

    #[test]
    fn covering_count_unit_interval() {
        let u = union(&[(0, 1, 1, 1)]);
        assert_eq!(u.covering_count(&ratio(1, 2)).unwrap(), 1);
        assert_eq!(u.covering_count(&ratio(1, 4)).unwrap(), 2);
        assert_eq!(u.covering_count(&ratio(1, 5)).unwrap(), 3);
    }

    #[test]
    fn containment() {
        let outer = union(&[(0, 1, 1, 3), (2, 3, 1, 3)]);
        let inner = union(&[(0, 1, 1, 9), (2, 9, 1, 9), (2, 3, 1, 9)]);
        assert!(outer.contains_union(&inner));
        assert!(!inner.contains_union(&outer));
    }

    #[test]
    fn csv_round_trip() {
        let u = union(&[(0, 1, 1, 9), (2, 9, 1, 9)]);
        assert_eq!(IntervalUnion::from_csv(&u.to_csv()).unwrap(), u);
    }
}

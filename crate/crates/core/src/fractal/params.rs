use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Allowed gap between a declared β and `log N / log(1/η)`.
pub const BETA_TOLERANCE: f64 = 1e-12;

/// How the level ratios `η_j` are chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EtaRule {
    /// `η_j = η` for every level.
    Constant,
    /// `η_j = η (1 − 1/(j+1)²)`, the lower end of the admissible band.
    Tapered,
    /// Explicit `η_1, η_2, …`; levels beyond the list are an error.
    Custom(Vec<Rational>),
}

impl EtaRule {
    fn name(&self) -> &'static str {
        match self {
            EtaRule::Constant => "constant",
            EtaRule::Tapered => "tapered",
            EtaRule::Custom(_) => "custom",
        }
    }
}

/// Parameters of the Cantor construction: `N` maps with ratio `η`,
/// offsets `a_1 < … < a_N` and a level rule for `η_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct CantorParams {
    pub n_maps: usize,
    pub eta: Rational,
    /// Declared dimension; [`CantorParams::new`] fills in the exact value.
    pub beta: f64,
    pub points: Vec<Rational>,
    pub rule: EtaRule,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub constraint: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub beta_computed: f64,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violated(&self, constraint: &str) -> bool {
        self.violations.iter().any(|v| v.constraint == constraint)
    }
}

impl CantorParams {
    pub fn new(n_maps: usize, eta: Rational, points: Vec<Rational>, rule: EtaRule) -> Self {
        let beta = Self::dimension(n_maps, &eta);
        Self {
            n_maps,
            eta,
            beta,
            points,
            rule,
            seed: None,
        }
    }

    /// Middle-thirds set: `N = 2`, `η = 1/3`, `a = (0, 2/3)`.
    pub fn middle_thirds() -> Self {
        Self::new(
            2,
            rational::ratio(1, 3),
            vec![rational::int(0), rational::ratio(2, 3)],
            EtaRule::Constant,
        )
    }

    /// β solving `N η^β = 1`.
    pub fn dimension(n_maps: usize, eta: &Rational) -> f64 {
        (n_maps as f64).ln() / -rational::to_f64(eta).ln()
    }

    /// `η_j` for `j ≥ 1`.
    pub fn eta_at(&self, j: usize) -> Result<Rational> {
        if j == 0 {
            return Err(Error::Domain("level ratios start at j = 1".into()));
        }
        match &self.rule {
            EtaRule::Constant => Ok(self.eta.clone()),
            EtaRule::Tapered => {
                let d = rational::int((j as i64 + 1) * (j as i64 + 1));
                Ok(&self.eta * (Rational::one() - Rational::one() / d))
            }
            EtaRule::Custom(list) => list.get(j - 1).cloned().ok_or_else(|| {
                Error::Domain(format!("custom rule lists {} ratios, level {j} requested", list.len()))
            }),
        }
    }

    /// `L_j = η_1 ⋯ η_j`, with `L_0 = 1`.
    pub fn scale(&self, j: usize) -> Result<Rational> {
        (1..=j).try_fold(Rational::one(), |acc, m| Ok(acc * self.eta_at(m)?))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut v = Vec::new();
        let mut fail = |constraint: &'static str, detail: String| v.push(Violation { constraint, detail });
        let n = self.n_maps;
        let one = Rational::one();
        if n < 2 {
            fail("N >= 2", format!("N = {n}"));
        }
        if !self.eta.is_positive() {
            fail("eta > 0", format!("eta = {}", self.eta));
        }
        if &self.eta * rational::int(n as i64) >= one {
            fail("N*eta < 1", format!("N*eta = {}", &self.eta * rational::int(n as i64)));
        }
        let beta_computed = if self.eta.is_positive() && self.eta < one && n >= 1 {
            Self::dimension(n, &self.eta)
        } else {
            f64::NAN
        };
        if !(beta_computed > 0.0 && beta_computed < 1.0) {
            fail("0 < beta < 1", format!("beta = log N / log(1/eta) = {beta_computed}"));
        }
        if !((self.beta - beta_computed).abs() <= BETA_TOLERANCE) {
            fail(
                "N*eta^beta = 1",
                format!("declared beta {} differs from computed {beta_computed}", self.beta),
            );
        }
        if self.points.len() != n {
            fail("points count = N", format!("{} points for N = {n}", self.points.len()));
        }
        if let Some(first) = self.points.first() {
            if first.is_negative() {
                fail("a_1 >= 0", format!("a_1 = {first}"));
            }
        }
        if let Some(last) = self.points.last() {
            if *last > &one - &self.eta {
                fail("a_N <= 1 - eta", format!("a_N = {last}"));
            }
        }
        for (k, w) in self.points.windows(2).enumerate() {
            if &w[1] - &w[0] <= self.eta {
                fail(
                    "a_{k+1} - a_k > eta",
                    format!("a_{} - a_{} = {}", k + 2, k + 1, &w[1] - &w[0]),
                );
            }
        }
        if let EtaRule::Custom(list) = &self.rule {
            let mut prev: Option<&Rational> = None;
            for (i, e) in list.iter().enumerate() {
                let j = (i + 1) as i64;
                let lower = &self.eta * (&one - &one / rational::int((j + 1) * (j + 1)));
                if *e < lower || *e > self.eta {
                    fail("eta(1-1/(j+1)^2) <= eta_j <= eta", format!("eta_{j} = {e}"));
                }
                if prev.is_some_and(|p| e < p) {
                    fail("eta_j non-decreasing", format!("eta_{j} = {e} < eta_{}", j - 1));
                }
                prev = Some(e);
            }
            if list.is_empty() {
                fail("custom rule non-empty", "no ratios given".into());
            }
        }
        ValidationReport {
            beta_computed,
            violations: v,
        }
    }

    pub fn validated(self) -> Result<Self> {
        let report = self.validate();
        if report.is_valid() {
            Ok(self)
        } else {
            Err(Error::Invalid(
                report
                    .violations
                    .into_iter()
                    .map(|v| format!("{}: {}", v.constraint, v.detail))
                    .collect(),
            ))
        }
    }

    /// Offsets `a_1` is 0 and the last child ends flush with its parent at
    /// every level up to `j`; then both endpoints of each level interval
    /// belong to the limit set.
    pub fn endpoints_in_limit(&self, j: usize) -> Result<bool> {
        let (Some(first), Some(last)) = (self.points.first(), self.points.last()) else {
            return Ok(false);
        };
        if !first.is_zero() {
            return Ok(false);
        }
        for m in 1..=j.max(1) {
            if last + self.eta_at(m)? != Rational::one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Flat `key = value` text. Rationals are written as `p/q`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "N = {}", self.n_maps);
        let _ = writeln!(out, "eta = {}", rational::format(&self.eta));
        let _ = writeln!(out, "beta = {:?}", self.beta);
        let pts: Vec<String> = self.points.iter().map(rational::format).collect();
        let _ = writeln!(out, "points = {}", pts.join(", "));
        match &self.rule {
            EtaRule::Custom(list) => {
                let l: Vec<String> = list.iter().map(rational::format).collect();
                let _ = writeln!(out, "rule = custom: {}", l.join(", "));
            }
            r => {
                let _ = writeln!(out, "rule = {}", r.name());
            }
        }
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed = {seed}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: i + 1,
                msg: format!("expected key = value, got {line:?}"),
            })?;
            map.insert(k.trim().to_string(), (i + 1, v.trim().to_string()));
        }
        Self::from_map(&map)
    }

    /// Build from `key → (line, value)`; unknown keys are ignored so the
    /// same map can carry other sections.
    pub fn from_map(map: &BTreeMap<String, (usize, String)>) -> Result<Self> {
        let get = |k: &str| -> Result<&(usize, String)> {
            map.get(k).ok_or_else(|| Error::Parse {
                line: 0,
                msg: format!("missing key {k:?}"),
            })
        };
        let bad = |line: usize, msg: String| Error::Parse { line, msg };
        let (l, n) = get("N")?;
        let n_maps: usize = n.parse().map_err(|_| bad(*l, format!("bad N {n:?}")))?;
        let (l, e) = get("eta")?;
        let eta = rational::parse(e).map_err(|m| bad(*l, m))?;
        let (l, p) = get("points")?;
        let points = p
            .split(',')
            .map(|s| rational::parse(s).map_err(|m| bad(*l, m)))
            .collect::<Result<Vec<_>>>()?;
        let rule = match map.get("rule") {
            None => EtaRule::Constant,
            Some((l, r)) => match r.as_str() {
                "constant" => EtaRule::Constant,
                "tapered" | "paper_default" => EtaRule::Tapered,
                other => match other.strip_prefix("custom:") {
                    Some(list) => EtaRule::Custom(
                        list.split(',')
                            .map(|s| rational::parse(s).map_err(|m| bad(*l, m)))
                            .collect::<Result<Vec<_>>>()?,
                    ),
                    None => return Err(bad(*l, format!("unknown rule {other:?}"))),
                },
            },
        };
        let mut params = Self::new(n_maps, eta, points, rule);
        if let Some((l, b)) = map.get("beta") {
            params.beta = b.parse().map_err(|_| bad(*l, format!("bad beta {b:?}")))?;
        }
        if let Some((l, s)) = map.get("seed") {
            params.seed = Some(s.parse().map_err(|_| bad(*l, format!("bad seed {s:?}")))?);
        }
        Ok(params)
    }
}

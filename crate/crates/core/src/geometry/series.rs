use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

/// One row of a per-scale series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesRow {
    pub eps: f64,
    pub value: f64,
    pub bound_low: f64,
    pub bound_high: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Series {
    pub rows: Vec<SeriesRow>,
}

impl Series {
    /// CSV with columns `eps,value,bound_low,bound_high`. Floats use the
    /// shortest round-trip representation, so output is byte-stable.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("eps,value,bound_low,bound_high\n");
        for r in &self.rows {
            let _ = writeln!(out, "{:?},{:?},{:?},{:?}", r.eps, r.value, r.bound_low, r.bound_high);
        }
        out
    }
}

/// JSON envelope for a series with run metadata.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesReport {
    pub name: String,
    pub mode: String,
    pub cap: Option<usize>,
    pub seed: Option<u64>,
    pub metadata: BTreeMap<String, serde_json::Value>,
    pub rows: Vec<SeriesRow>,
}

impl SeriesReport {
    pub fn new(name: impl Into<String>, mode: impl Into<String>, series: &Series) -> Self {
        Self {
            name: name.into(),
            mode: mode.into(),
            cap: None,
            seed: None,
            metadata: BTreeMap::new(),
            rows: series.rows.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("series report serialises")
    }
}

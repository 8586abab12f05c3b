//! Flat `key = value` configuration. Keys may carry a section prefix
//! (`cantor.eta`) or sit under a `[cantor]` header; numbers accept `p/q`.

use std::collections::BTreeMap;
use std::path::Path;

use fracspec_core::rational::{self, Rational};

use crate::error::CliError;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    entries: BTreeMap<String, (usize, String)>,
}

fn bad(key: &str, line: usize, what: &str, value: &str) -> CliError {
    CliError::Config(format!("line {line}: {key} = {value:?} is not {what}"))
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut entries = BTreeMap::new();
        let mut section = String::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                section = name.trim().to_string();
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key = value", i + 1)))?;
            let k = k.trim();
            if k.is_empty() {
                return Err(CliError::Config(format!("line {}: empty key", i + 1)));
            }
            let key = if section.is_empty() { k.to_string() } else { format!("{section}.{k}") };
            if entries.insert(key.clone(), (i + 1, v.trim().to_string())).is_some() {
                return Err(CliError::Config(format!("line {}: duplicate key {key}", i + 1)));
            }
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.entries.insert(key.to_string(), (0, value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|(_, v)| v.as_str())
    }

    fn line(&self, key: &str) -> usize {
        self.entries.get(key).map_or(0, |e| e.0)
    }

    pub fn rational_or(&self, key: &str, default: Rational) -> Result<Rational, CliError> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => rational::parse(v).map_err(|_| bad(key, self.line(key), "a rational", v)),
        }
    }

    /// Accepts decimals, exponents and `p/q`.
    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64, CliError> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse::<f64>()
                .ok()
                .or_else(|| rational::parse(v).ok().map(|r| rational::to_f64(&r)))
                .ok_or_else(|| bad(key, self.line(key), "a number", v)),
        }
    }

    pub fn f64_list_or(&self, key: &str, default: &[f64]) -> Result<Vec<f64>, CliError> {
        match self.get(key) {
            None => Ok(default.to_vec()),
            Some(v) => v
                .split(',')
                .map(|s| {
                    let s = s.trim();
                    s.parse::<f64>()
                        .ok()
                        .or_else(|| rational::parse(s).ok().map(|r| rational::to_f64(&r)))
                        .ok_or_else(|| bad(key, self.line(key), "a list of numbers", v))
                })
                .collect(),
        }
    }

    pub fn int_or<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T, CliError> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| bad(key, self.line(key), "an integer", v)),
        }
    }

    pub fn bool_or(&self, key: &str, default: bool) -> Result<bool, CliError> {
        match self.get(key) {
            None => Ok(default),
            Some("true") | Some("yes") | Some("1") => Ok(true),
            Some("false") | Some("no") | Some("0") => Ok(false),
            Some(v) => Err(bad(key, self.line(key), "a boolean", v)),
        }
    }

    pub fn str_or<'a>(&'a self, key: &str, default: &'a str) -> &'a str {
        self.get(key).unwrap_or(default)
    }

    /// Entries under `prefix.`, with the prefix removed.
    pub fn section(&self, prefix: &str) -> BTreeMap<String, (usize, String)> {
        let p = format!("{prefix}.");
        self.entries
            .iter()
            .filter_map(|(k, v)| k.strip_prefix(&p).map(|s| (s.to_string(), v.clone())))
            .collect()
    }

    /// Sorted `key = value` lines; the input to the report digest.
    pub fn canonical(&self) -> String {
        self.entries.iter().map(|(k, (_, v))| format!("{k} = {v}\n")).collect()
    }
}

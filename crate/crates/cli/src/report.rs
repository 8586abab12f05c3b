use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::Config;
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metric {
    pub value: serde_json::Value,
    /// Units or normalisation of the value.
    pub units: String,
}

/// Outcome of one experiment. Everything except `wall_time_s` is a pure
/// function of the configuration and seed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRecord {
    pub experiment: String,
    pub inputs_digest: String,
    pub seed: Option<u64>,
    pub metrics: BTreeMap<String, Metric>,
    pub flags: BTreeMap<String, bool>,
    pub artifacts: Vec<String>,
    #[serde(skip)]
    pub wall_time_s: f64,
}

pub fn digest(experiment: &str, config: &Config, seed: Option<u64>) -> String {
    let mut h = Sha256::new();
    h.update(experiment.as_bytes());
    h.update(b"\n");
    h.update(config.canonical().as_bytes());
    h.update(format!("seed = {seed:?}\n").as_bytes());
    h.finalize().iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

impl ReportRecord {
    pub fn new(experiment: &str, config: &Config, seed: Option<u64>) -> Self {
        Self {
            experiment: experiment.to_string(),
            inputs_digest: digest(experiment, config, seed),
            seed,
            metrics: BTreeMap::new(),
            flags: BTreeMap::new(),
            artifacts: Vec::new(),
            wall_time_s: 0.0,
        }
    }

    pub fn metric(&mut self, name: &str, value: impl Serialize, units: &str) {
        let value = serde_json::to_value(value).unwrap_or(serde_json::Value::Null);
        self.metrics.insert(
            name.to_string(),
            Metric {
                value,
                units: units.to_string(),
            },
        );
    }

    pub fn flag(&mut self, name: &str, value: bool) {
        self.flags.insert(name.to_string(), value);
    }

    pub fn passed(&self) -> bool {
        self.flags.values().all(|&v| v)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

/// Exclusive writer for one experiment's output directory.
pub struct ArtifactWriter {
    dir: PathBuf,
    names: Vec<String>,
}

impl ArtifactWriter {
    pub fn create(out: &Path, id: &str) -> Result<Self, CliError> {
        let dir = out.join(id);
        std::fs::create_dir_all(&dir)?;
        Ok(Self { dir, names: Vec::new() })
    }

    pub fn write(&mut self, name: &str, contents: &str) -> Result<(), CliError> {
        std::fs::write(self.dir.join(name), contents)?;
        self.names.push(name.to_string());
        Ok(())
    }

    /// Write `report.json` (deterministic) and `timing.json` (wall time).
    pub fn finish(self, mut record: ReportRecord) -> Result<ReportRecord, CliError> {
        record.artifacts = self.names.clone();
        std::fs::write(self.dir.join("report.json"), record.to_json())?;
        std::fs::write(
            self.dir.join("timing.json"),
            serde_json::json!({ "wall_time_s": record.wall_time_s }).to_string(),
        )?;
        Ok(record)
    }
}

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::config::ExperimentConfig;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Provenance {
    /// Expected value printed in the source formulas.
    Paper,
    /// Structural fact (unitarity, monotonicity of compressions, ...).
    Trivial,
    /// Expected value computed in-run by an independent route.
    Derived,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Evidence,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub claim: String,
    pub inputs: BTreeMap<String, Value>,
    pub computed: BTreeMap<String, Value>,
    pub expected: BTreeMap<String, Value>,
    pub provenance: Provenance,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl Record {
    pub fn new(claim: &str, provenance: Provenance) -> Self {
        Self {
            claim: claim.to_string(),
            inputs: BTreeMap::new(),
            computed: BTreeMap::new(),
            expected: BTreeMap::new(),
            provenance,
            status: Status::Evidence,
            note: None,
        }
    }

    pub fn input(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), v.into());
        self
    }

    pub fn computed(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.computed.insert(key.to_string(), v.into());
        self
    }

    pub fn expected(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.expected.insert(key.to_string(), v.into());
        self
    }

    pub fn note(mut self, text: impl Into<String>) -> Self {
        self.note = Some(text.into());
        self
    }

    /// Hard check.
    pub fn check(mut self, ok: bool) -> Self {
        self.status = if ok { Status::Pass } else { Status::Fail };
        self
    }

    pub fn evidence(mut self) -> Self {
        self.status = Status::Evidence;
        self
    }

    pub fn error(mut self, err: impl std::fmt::Display) -> Self {
        self.status = Status::Error;
        self.note = Some(err.to_string());
        self
    }

    pub fn computed_f64(&self, key: &str) -> Option<f64> {
        self.computed.get(key).and_then(Value::as_f64)
    }

    pub fn input_f64(&self, key: &str) -> Option<f64> {
        self.inputs.get(key).and_then(Value::as_f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub name: String,
    pub records: Vec<Record>,
}

impl ExperimentReport {
    pub fn claims(&self) -> BTreeSet<&str> {
        self.records.iter().map(|r| r.claim.as_str()).collect()
    }

    pub fn by_claim<'a>(&'a self, claim: &'a str) -> impl Iterator<Item = &'a Record> + 'a {
        self.records.iter().filter(move |r| r.claim == claim)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub evidence: usize,
    pub error: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub version: String,
    pub wall_time_seconds: f64,
    pub threads: usize,
    pub summary: Summary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: ExperimentConfig,
    pub experiments: Vec<ExperimentReport>,
    pub meta: Meta,
}

pub const REPORT_FILE: &str = "report.json";

impl Report {
    pub fn new(
        config: ExperimentConfig,
        experiments: Vec<ExperimentReport>,
        wall_time_seconds: f64,
        threads: usize,
    ) -> Self {
        let mut summary = Summary::default();
        for r in experiments.iter().flat_map(|e| &e.records) {
            match r.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Evidence => summary.evidence += 1,
                Status::Error => summary.error += 1,
            }
        }
        let meta = Meta {
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_seconds,
            threads,
            summary,
        };
        Self {
            config,
            experiments,
            meta,
        }
    }

    /// Failed or errored records make the run fail.
    pub fn all_passed(&self) -> bool {
        self.meta.summary.fail == 0 && self.meta.summary.error == 0
    }

    pub fn experiment(&self, name: &str) -> Option<&ExperimentReport> {
        self.experiments.iter().find(|e| e.name == name)
    }

    pub fn records(&self) -> impl Iterator<Item = &Record> {
        self.experiments.iter().flat_map(|e| &e.records)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// The report as JSON with the wall time removed; equal across runs with
    /// the same config.
    pub fn body(&self) -> Result<Value> {
        let mut v = serde_json::to_value(self)?;
        if let Some(meta) = v.get_mut("meta").and_then(Value::as_object_mut) {
            meta.remove("wall_time_seconds");
        }
        Ok(v)
    }

    /// Writes `report.json` and one `<experiment>.csv` per experiment.
    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join(REPORT_FILE), self.to_json()?)?;
        for e in &self.experiments {
            write_csv(e, &dir.join(format!("{}.csv", e.name)))?;
        }
        Ok(())
    }
}

fn cell(v: Option<&Value>) -> String {
    match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    }
}

/// Input columns, then computed, then expected (prefixed `expected_`), then
/// provenance, status, claim and note.
pub fn write_csv(e: &ExperimentReport, path: &Path) -> Result<()> {
    let collect = |f: fn(&Record) -> &BTreeMap<String, Value>| -> Vec<String> {
        let set: BTreeSet<&String> = e.records.iter().flat_map(|r| f(r).keys()).collect();
        set.into_iter().cloned().collect()
    };
    let inputs = collect(|r| &r.inputs);
    let computed = collect(|r| &r.computed);
    let expected = collect(|r| &r.expected);
    let mut w = csv::Writer::from_path(path)?;
    let mut header: Vec<String> = inputs.clone();
    header.extend(computed.iter().cloned());
    header.extend(expected.iter().map(|k| format!("expected_{k}")));
    header.extend(["provenance", "status", "claim", "note"].map(String::from));
    w.write_record(&header)?;
    for r in &e.records {
        let mut row: Vec<String> = inputs.iter().map(|k| cell(r.inputs.get(k))).collect();
        row.extend(computed.iter().map(|k| cell(r.computed.get(k))));
        row.extend(expected.iter().map(|k| cell(r.expected.get(k))));
        row.push(cell(Some(&serde_json::to_value(r.provenance)?)));
        row.push(cell(Some(&serde_json::to_value(r.status)?)));
        row.push(r.claim.clone());
        row.push(r.note.clone().unwrap_or_default());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

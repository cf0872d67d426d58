//! Run configuration: a single strict JSON document, or the equivalent
//! built from command-line flags.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Integer written as a decimal string (preferred) or a JSON number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Int {
    Text(String),
    Number(i64),
}

impl Int {
    pub fn parse<T: FromStr>(&self, name: &str) -> Result<T, CliError> {
        let text = match self {
            Int::Text(s) => s.trim().to_string(),
            Int::Number(n) => n.to_string(),
        };
        text.parse().map_err(|_| CliError::Config(format!("{name} = {text:?} is not an integer in range")))
    }
}

impl From<i64> for Int {
    fn from(n: i64) -> Self {
        Int::Text(n.to_string())
    }
}

impl From<u64> for Int {
    fn from(n: u64) -> Self {
        Int::Text(n.to_string())
    }
}

impl From<u32> for Int {
    fn from(n: u32) -> Self {
        Int::Text(n.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleSpec {
    #[serde(rename = "N")]
    pub n: Int,
    #[serde(rename = "B")]
    pub b: Vec<Int>,
    #[serde(rename = "L")]
    pub l: Vec<Int>,
}

impl TripleSpec {
    pub fn parts(&self) -> Result<(i64, Vec<i64>, Vec<i64>), CliError> {
        let n = self.n.parse("N")?;
        let b = self.b.iter().map(|v| v.parse("B")).collect::<Result<_, _>>()?;
        let l = self.l.iter().map(|v| v.parse("L")).collect::<Result<_, _>>()?;
        Ok((n, b, l))
    }
}

impl FromStr for TripleSpec {
    type Err = CliError;

    /// `N:b1,b2,…:l1,l2,…`, e.g. `4:0,2:0,1`.
    fn from_str(s: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = s.split(':').collect();
        let [n, b, l] = parts[..] else {
            return Err(CliError::Config(format!("triple {s:?} is not of the form N:b1,b2:l1,l2")));
        };
        let list = |v: &str| v.split(',').map(|x| Int::Text(x.trim().to_string())).collect();
        Ok(TripleSpec { n: Int::Text(n.trim().to_string()), b: list(b), l: list(l) })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Verify,
    Cycles,
    Spectrum,
    Eigenvalue,
    Scan,
    PowerClosure,
    DpScan,
    FourierQ,
    OrderStats,
    PplusStats,
    Dickman,
    EhSum,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Verify => "verify",
            Task::Cycles => "cycles",
            Task::Spectrum => "spectrum",
            Task::Eigenvalue => "eigenvalue",
            Task::Scan => "scan",
            Task::PowerClosure => "power-closure",
            Task::DpScan => "dp-scan",
            Task::FourierQ => "fourier-q",
            Task::OrderStats => "order-stats",
            Task::PplusStats => "pplus-stats",
            Task::Dickman => "dickman",
            Task::EhSum => "eh-sum",
        }
    }

    pub fn needs_triple(self) -> bool {
        matches!(
            self,
            Task::Verify
                | Task::Cycles
                | Task::Spectrum
                | Task::Eigenvalue
                | Task::Scan
                | Task::PowerClosure
                | Task::DpScan
                | Task::FourierQ
        )
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Task parameters. Each task reads the keys it needs and ignores none of
/// the others silently: unknown keys are rejected at parse time.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primes: Option<Vec<Int>>,
    /// Exponent as `"a/b"` or a short decimal.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<Int>,
    #[serde(default, rename = "M", skip_serializing_if = "Option::is_none")]
    pub m: Option<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<Int>,
    /// Grid points for `fourier-q`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<Int>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triple: Option<TripleSpec>,
    pub task: Task,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub output: OutputSpec,
}

/// The part of a config that determines the results.
#[derive(Serialize)]
struct HashedConfig<'a> {
    triple: &'a Option<TripleSpec>,
    task: Task,
    params: &'a Params,
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("invalid config: {e}")))
    }

    pub fn triple_parts(&self) -> Result<(i64, Vec<i64>, Vec<i64>), CliError> {
        match &self.triple {
            Some(t) => t.parts(),
            None => Err(CliError::Config(format!("task {} requires a triple {{N, B, L}}", self.task))),
        }
    }

    /// Canonical JSON of triple, task and parameters, with sorted keys.
    pub fn canonical_json(&self) -> String {
        let value = serde_json::to_value(HashedConfig { triple: &self.triple, task: self.task, params: &self.params })
            .expect("config serializes");
        value.to_string()
    }

    pub fn hash(&self) -> String {
        use sha2::{Digest, Sha256};
        Sha256::digest(self.canonical_json().as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }
}

pub fn required<'a, T>(value: &'a Option<T>, task: Task, name: &str) -> Result<&'a T, CliError> {
    value.as_ref().ok_or_else(|| CliError::Config(format!("task {task} requires parameter {name}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_strings_and_numbers() {
        let c = RunConfig::from_json(
            r#"{"triple": {"N": "4", "B": ["0", "2"], "L": [0, 1]}, "task": "eigenvalue", "params": {"q": "5"}}"#,
        )
        .unwrap();
        assert_eq!(c.triple_parts().unwrap(), (4, vec![0, 2], vec![0, 1]));
        assert_eq!(c.params.q.as_ref().unwrap().parse::<u64>("q").unwrap(), 5);
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(RunConfig::from_json(r#"{"task": "dickman", "params": {"u": 2.0, "w": 1}}"#).is_err());
        assert!(RunConfig::from_json(r#"{"task": "dickman", "extra": 1}"#).is_err());
        assert!(RunConfig::from_json(r#"{"task": "nope"}"#).is_err());
    }

    #[test]
    fn hash_ignores_output_and_key_order() {
        let a = RunConfig::from_json(r#"{"task": "dickman", "params": {"u": 2.0}, "output": {"json": "a.json"}}"#).unwrap();
        let b = RunConfig::from_json(r#"{"params": {"u": 2.0}, "task": "dickman"}"#).unwrap();
        assert_eq!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
        let c = RunConfig::from_json(r#"{"task": "dickman", "params": {"u": 3.0}}"#).unwrap();
        assert_ne!(a.hash(), c.hash());
    }

    #[test]
    fn triple_shorthand() {
        let t: TripleSpec = "6:0,1:-3,0".parse().unwrap();
        assert_eq!(t.parts().unwrap(), (6, vec![0, 1], vec![-3, 0]));
        assert!("6:0,1".parse::<TripleSpec>().is_err());
    }
}

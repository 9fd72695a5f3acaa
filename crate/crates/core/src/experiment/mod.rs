//! Seeded experiment runner behind the `qptlab` binary.
//!
//! An [`ExperimentConfig`] fully determines a run. Trials fan out over the
//! rayon pool, each on its own [`RngStream`](crate::RngStream) derived from
//! `(seed, trial, tag)`, and are collected back in trial order, so thread
//! count never changes a reported number. Results are a [`ResultRecord`]
//! serialised as JSON with `schema: 1`; the only field that varies between
//! replays is `wall_clock_seconds`, which is written last.

mod function_spec;
mod runners;

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use function_spec::parse_function_spec;

use crate::error::{Error, Result};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Subcommand {
    TestMonotonicity,
    TestSymmetry,
    TestTriangleFreeness,
    TestMm,
    Intersection2,
    TwinSpectrum,
    ThreeFoldCheck,
    EnsembleDistinguish,
    BaselineTriangle,
    Oracle,
}

impl Subcommand {
    pub const ALL: [Subcommand; 10] = [
        Subcommand::TestMonotonicity,
        Subcommand::TestSymmetry,
        Subcommand::TestTriangleFreeness,
        Subcommand::TestMm,
        Subcommand::Intersection2,
        Subcommand::TwinSpectrum,
        Subcommand::ThreeFoldCheck,
        Subcommand::EnsembleDistinguish,
        Subcommand::BaselineTriangle,
        Subcommand::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcommand::TestMonotonicity => "test-monotonicity",
            Subcommand::TestSymmetry => "test-symmetry",
            Subcommand::TestTriangleFreeness => "test-triangle-freeness",
            Subcommand::TestMm => "test-mm",
            Subcommand::Intersection2 => "intersection2",
            Subcommand::TwinSpectrum => "twin-spectrum",
            Subcommand::ThreeFoldCheck => "three-fold-check",
            Subcommand::EnsembleDistinguish => "ensemble-distinguish",
            Subcommand::BaselineTriangle => "baseline-triangle",
            Subcommand::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Subcommand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Subcommand {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Subcommand::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("subcommand: unknown `{s}`")))
    }
}

/// Everything a run depends on. Fields a subcommand does not use are echoed
/// but ignored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub subcommand: Subcommand,
    /// Builtin name, parameterised builtin or `@path`; see
    /// [`parse_function_spec`].
    pub function: Option<String>,
    /// Instance family for `test-mm` (`mm`, `mm_dual`) and
    /// `ensemble-distinguish` (`twin`, `mm`, `triple`).
    pub family: Option<String>,
    pub n: Option<usize>,
    pub t: Option<usize>,
    pub m: Option<usize>,
    /// Sample count for `baseline-triangle`.
    pub q: Option<usize>,
    pub epsilon: Option<f64>,
    pub delta: Option<f64>,
    /// Post-selection rate bound for `test-triangle-freeness`; defaults to
    /// `epsilon`.
    pub eta: Option<f64>,
    pub trials: u64,
    pub seed: u64,
    pub dim_cap: usize,
    /// Directory for `ensemble-distinguish` to export sampled members into.
    pub export: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(subcommand: Subcommand) -> Self {
        Self {
            subcommand,
            function: None,
            family: None,
            n: None,
            t: None,
            m: None,
            q: None,
            epsilon: None,
            delta: None,
            eta: None,
            trials: 1,
            seed: 0,
            dim_cap: crate::spectra::DEFAULT_DIM_CAP,
            export: None,
            output: None,
            csv: None,
        }
    }

    pub(crate) fn need<T: Copy>(&self, value: Option<T>, field: &str) -> Result<T> {
        value.ok_or_else(|| Error::InvalidParameter(format!("{field}: required by {}", self.subcommand)))
    }

    fn validate(&self) -> Result<()> {
        if self.dim_cap == 0 {
            return Err(Error::InvalidParameter("dim_cap: must be positive".into()));
        }
        for (field, v) in [("epsilon", self.epsilon), ("delta", self.delta), ("eta", self.eta)] {
            if let Some(v) = v {
                if !(v > 0.0 && v < 1.0) && !(field == "eta" && v == 1.0) {
                    return Err(Error::InvalidParameter(format!("{field}: {v} is outside (0, 1)")));
                }
            }
        }
        if let Some(n) = self.n {
            if n == 0 {
                return Err(Error::InvalidParameter("n: must be positive".into()));
            }
        }
        if let Some(t) = self.t {
            if t == 0 {
                return Err(Error::InvalidParameter("t: must be positive".into()));
            }
        }
        Ok(())
    }
}

/// One trial. `accept` is the tester's verdict where there is one; for
/// `intersection2` it records whether the estimate landed within `ε`, and
/// for `three-fold-check` whether the trace norm respects its bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRow {
    pub trial: u64,
    pub accept: Option<bool>,
    pub statistic: f64,
    pub copies: u64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

impl TrialRow {
    pub fn new(trial: u64, accept: Option<bool>, statistic: f64, copies: u64) -> Self {
        Self { trial, accept, statistic, copies, values: BTreeMap::new(), flags: Vec::new() }
    }

    pub(crate) fn with(mut self, key: &str, value: f64) -> Self {
        self.values.insert(key.to_string(), value);
        self
    }
}

/// Summary of the rows, recomputable with [`Aggregates::from_rows`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregates {
    pub trials: u64,
    pub accepts: Option<u64>,
    pub accept_rate: Option<f64>,
    pub mean_statistic: Option<f64>,
    pub min_statistic: Option<f64>,
    pub max_statistic: Option<f64>,
    pub total_copies: u64,
    pub mean_copies: Option<f64>,
}

impl Aggregates {
    pub fn from_rows(rows: &[TrialRow]) -> Self {
        let count = rows.len() as u64;
        let verdicts: Vec<bool> = rows.iter().filter_map(|r| r.accept).collect();
        let accepts = (!verdicts.is_empty()).then(|| verdicts.iter().filter(|&&a| a).count() as u64);
        let total_copies = rows.iter().map(|r| r.copies).sum();
        let stats = rows.iter().map(|r| r.statistic);
        let nonempty = |v: f64| (count > 0).then_some(v);
        Self {
            trials: count,
            accepts,
            accept_rate: accepts.map(|a| a as f64 / verdicts.len() as f64),
            mean_statistic: nonempty(stats.clone().sum::<f64>() / count as f64),
            min_statistic: nonempty(stats.clone().fold(f64::INFINITY, f64::min)),
            max_statistic: nonempty(stats.fold(f64::NEG_INFINITY, f64::max)),
            total_copies,
            mean_copies: nonempty(total_copies as f64 / count as f64),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub schema: u32,
    pub config: ExperimentConfig,
    pub rows: Vec<TrialRow>,
    pub aggregates: Aggregates,
    /// Exact ground truth for the input, when an oracle applies.
    pub oracle: serde_json::Value,
    /// Subcommand-specific parameters and derived quantities.
    pub details: serde_json::Value,
    pub wall_clock_seconds: f64,
}

impl ResultRecord {
    /// The record as JSON with the wall-clock field zeroed, for replay
    /// comparisons.
    pub fn canonical_json(&self) -> Result<String> {
        let mut copy = self.clone();
        copy.wall_clock_seconds = 0.0;
        copy.to_json()
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self)
            .map(|s| s + "\n")
            .map_err(|e| Error::InternalConsistency(format!("serialising result: {e}")))
    }
}

pub(crate) struct RunOutput {
    pub rows: Vec<TrialRow>,
    pub oracle: serde_json::Value,
    pub details: serde_json::Value,
}

/// Executes the configured subcommand.
pub fn run(config: &ExperimentConfig) -> Result<ResultRecord> {
    config.validate()?;
    let clock = Instant::now();
    let out = runners::dispatch(config)?;
    Ok(ResultRecord {
        schema: SCHEMA,
        config: config.clone(),
        aggregates: Aggregates::from_rows(&out.rows),
        rows: out.rows,
        oracle: out.oracle,
        details: out.details,
        wall_clock_seconds: clock.elapsed().as_secs_f64(),
    })
}

/// Writes the JSON record to `config.output` (or returns it for stdout) and
/// the per-trial CSV to `config.csv` when set.
pub fn write_outputs(record: &ResultRecord) -> Result<Option<String>> {
    let json = record.to_json()?;
    if let Some(path) = &record.config.csv {
        write_csv(path, &record.rows)?;
    }
    match &record.config.output {
        Some(path) => {
            std::fs::write(path, json)?;
            Ok(None)
        }
        None => Ok(Some(json)),
    }
}

/// Reads a result file back, e.g. to replay its config.
pub fn read_record(path: &Path) -> Result<ResultRecord> {
    let text = std::fs::read_to_string(path)?;
    let record: ResultRecord = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    if record.schema != SCHEMA {
        return Err(Error::Parse(format!("schema {} is not {SCHEMA}", record.schema)));
    }
    Ok(record)
}

/// Columns: `trial, accept, statistic, copies`, then every `values` key in
/// sorted order (blank where a row lacks it), then `flags` joined by `;`.
pub fn write_csv(path: &Path, rows: &[TrialRow]) -> Result<()> {
    let io = |e: csv::Error| Error::Io(e.to_string());
    let keys: std::collections::BTreeSet<&String> = rows.iter().flat_map(|r| r.values.keys()).collect();
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    let mut header = vec!["trial".to_string(), "accept".into(), "statistic".into(), "copies".into()];
    header.extend(keys.iter().map(|k| k.to_string()));
    header.push("flags".into());
    w.write_record(&header).map_err(io)?;
    for r in rows {
        let mut rec = vec![
            r.trial.to_string(),
            r.accept.map_or(String::new(), |a| a.to_string()),
            r.statistic.to_string(),
            r.copies.to_string(),
        ];
        rec.extend(keys.iter().map(|k| r.values.get(*k).map_or(String::new(), |v| v.to_string())));
        rec.push(r.flags.join(";"));
        w.write_record(&rec).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subcommand_names_round_trip() {
        for c in Subcommand::ALL {
            assert_eq!(c.name().parse::<Subcommand>().unwrap(), c);
            assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{}\"", c.name()));
        }
        assert!("bogus".parse::<Subcommand>().is_err());
    }

    #[test]
    fn aggregates_from_rows() {
        let rows = vec![
            TrialRow::new(0, Some(true), 0.5, 10),
            TrialRow::new(1, Some(false), 1.5, 30),
        ];
        let a = Aggregates::from_rows(&rows);
        assert_eq!((a.trials, a.accepts, a.total_copies), (2, Some(1), 40));
        assert_eq!((a.accept_rate, a.mean_statistic, a.mean_copies), (Some(0.5), Some(1.0), Some(20.0)));
        assert_eq!((a.min_statistic, a.max_statistic), (Some(0.5), Some(1.5)));
        let empty = Aggregates::from_rows(&[]);
        assert_eq!((empty.accepts, empty.mean_statistic), (None, None));
    }

    #[test]
    fn validation_names_the_field() {
        let mut c = ExperimentConfig::new(Subcommand::TestSymmetry);
        c.epsilon = Some(1.5);
        match run(&c) {
            Err(Error::InvalidParameter(msg)) => assert!(msg.starts_with("epsilon")),
            other => panic!("{other:?}"),
        }
        c.epsilon = Some(0.3);
        match run(&c) {
            Err(Error::InvalidParameter(msg)) => assert!(msg.starts_with("delta"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn csv_layout() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rows.csv");
        let rows = vec![TrialRow::new(0, None, 2.0, 0).with("b", 1.0), TrialRow::new(1, Some(true), 3.0, 4).with("a", 0.5)];
        write_csv(&path, &rows).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines, ["trial,accept,statistic,copies,a,b,flags", "0,,2,0,,1,", "1,true,3,4,0.5,,"]);
    }
}

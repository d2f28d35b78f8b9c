//! JSON report and checkpoint files, CSV export.
//!
//! Every count is written as a decimal string so that readers with 53-bit
//! floats cannot truncate it.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::patterns::Catalog;

use super::engine::ShardRange;
use super::fit::FitResult;
use super::verify::VerifyItem;
use super::{Census, Tally, MAX_CENSUS_N};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("checksum mismatch: file says {stored}, contents hash to {computed}")]
    Checksum { stored: String, computed: String },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// A census together with its verification results and any fits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub census: Census,
    pub verify: Vec<VerifyItem>,
    pub fits: Vec<FitResult>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VerifyEntry {
    name: String,
    formula_value: String,
    census_value: String,
    pass: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FitEntry {
    k: usize,
    a: Vec<String>,
    natural: bool,
    consistent: bool,
    #[serde(default)]
    data_points: Vec<usize>,
    #[serde(default)]
    inexact_points: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReportFile {
    schema_version: u32,
    n: usize,
    counts_by_complexity: Vec<String>,
    counts_by_row: BTreeMap<String, String>,
    descent_matrix: Vec<Vec<String>>,
    #[serde(default = "zero")]
    class_mismatches: String,
    #[serde(default)]
    verify: Vec<VerifyEntry>,
    #[serde(default)]
    fits: Vec<FitEntry>,
    shards: usize,
    checksum: String,
    /// Present only in checkpoint files.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rank_range: Option<[String; 2]>,
}

fn zero() -> String {
    "0".into()
}

fn dec_u64(s: &str) -> Result<u64, ReportError> {
    s.parse().map_err(|_| ReportError::Schema(format!("{s:?} is not a decimal count")))
}

fn dec_big(s: &str) -> Result<BigInt, ReportError> {
    s.parse().map_err(|_| ReportError::Schema(format!("{s:?} is not a decimal integer")))
}

fn to_strings(v: &[u64]) -> Vec<String> {
    v.iter().map(u64::to_string).collect()
}

impl ReportFile {
    fn from_tally(tally: &Tally, shards: usize) -> Self {
        ReportFile {
            schema_version: SCHEMA_VERSION,
            n: tally.n,
            counts_by_complexity: to_strings(&tally.counts_by_complexity),
            counts_by_row: tally.counts_by_row.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
            descent_matrix: tally.descent_matrix.iter().map(|r| to_strings(r)).collect(),
            class_mismatches: tally.class_mismatches.to_string(),
            verify: Vec::new(),
            fits: Vec::new(),
            shards,
            checksum: tally.checksum(),
            rank_range: None,
        }
    }

    /// Parses the counts and checks the stored checksum.
    fn tally(&self) -> Result<Tally, ReportError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(ReportError::Schema(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        if !(1..=MAX_CENSUS_N).contains(&self.n) {
            return Err(ReportError::Schema(format!("n = {} is outside 1..={MAX_CENSUS_N}", self.n)));
        }
        let parse_vec = |v: &[String]| v.iter().map(|s| dec_u64(s)).collect::<Result<Vec<_>, _>>();
        let tally = Tally {
            n: self.n,
            counts_by_complexity: parse_vec(&self.counts_by_complexity)?,
            counts_by_row: self
                .counts_by_row
                .iter()
                .map(|(k, v)| Ok((k.clone(), dec_u64(v)?)))
                .collect::<Result<_, ReportError>>()?,
            descent_matrix: self.descent_matrix.iter().map(|r| parse_vec(r)).collect::<Result<_, _>>()?,
            class_mismatches: dec_u64(&self.class_mismatches)?,
        };
        let computed = tally.checksum();
        if computed != self.checksum {
            return Err(ReportError::Checksum { stored: self.checksum.clone(), computed });
        }
        Ok(tally)
    }
}

fn write_atomically(path: &Path, contents: &str) -> io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

pub fn save_report(report: &Report, path: &Path) -> Result<(), ReportError> {
    let mut file = ReportFile::from_tally(&report.census.tally, report.census.shards_completed);
    file.verify = report
        .verify
        .iter()
        .map(|v| VerifyEntry {
            name: v.name.clone(),
            formula_value: v.formula_value.to_string(),
            census_value: v.census_value.to_string(),
            pass: v.pass,
        })
        .collect();
    file.fits = report
        .fits
        .iter()
        .map(|f| FitEntry {
            k: f.k,
            a: f.coefficients.iter().map(BigInt::to_string).collect(),
            natural: f.natural,
            consistent: f.consistent,
            data_points: f.data_points.clone(),
            inexact_points: f.inexact_points.clone(),
        })
        .collect();
    write_atomically(path, &serde_json::to_string_pretty(&file)?)?;
    Ok(())
}

/// Loads a full report, validating checksum and census invariants.
pub fn load_report(path: &Path) -> Result<Report, ReportError> {
    let file: ReportFile = serde_json::from_str(&fs::read_to_string(path)?)?;
    if file.rank_range.is_some() {
        return Err(ReportError::Schema("this is a shard checkpoint, not a census report".into()));
    }
    let census = Census { tally: file.tally()?, shards_completed: file.shards };
    census.check_invariants().map_err(ReportError::Invariant)?;
    let verify = file
        .verify
        .iter()
        .map(|v| {
            Ok(VerifyItem {
                name: v.name.clone(),
                formula_value: dec_big(&v.formula_value)?,
                census_value: dec_big(&v.census_value)?,
                pass: v.pass,
            })
        })
        .collect::<Result<_, ReportError>>()?;
    let fits = file
        .fits
        .iter()
        .map(|f| {
            Ok(FitResult {
                k: f.k,
                coefficients: f.a.iter().map(|s| dec_big(s)).collect::<Result<_, _>>()?,
                natural: f.natural,
                consistent: f.consistent,
                data_points: f.data_points.clone(),
                inexact_points: f.inexact_points.clone(),
            })
        })
        .collect::<Result<_, ReportError>>()?;
    Ok(Report { census, verify, fits })
}

pub fn load_census(path: &Path) -> Result<Census, ReportError> {
    load_report(path).map(|r| r.census)
}

pub(crate) fn shard_file_name(n: usize, range: ShardRange) -> String {
    format!("shard-n{n}-{}-{}.json", range.start, range.end)
}

pub(crate) fn write_shard(path: &Path, tally: &Tally, range: ShardRange) -> Result<(), ReportError> {
    let mut file = ReportFile::from_tally(tally, 1);
    file.rank_range = Some([range.start.to_string(), range.end.to_string()]);
    write_atomically(path, &serde_json::to_string_pretty(&file)?)?;
    Ok(())
}

pub(crate) fn read_shard(path: &Path, n: usize, range: ShardRange, catalog: &Catalog) -> Result<Tally, ReportError> {
    let file: ReportFile = serde_json::from_str(&fs::read_to_string(path)?)?;
    let stored = file
        .rank_range
        .as_ref()
        .ok_or_else(|| ReportError::Schema("checkpoint lacks rank_range".into()))?;
    if file.n != n || dec_u64(&stored[0])? != range.start || dec_u64(&stored[1])? != range.end {
        return Err(ReportError::Schema(format!(
            "checkpoint covers n = {} ranks {}..{}, expected n = {n} ranks {}..{}",
            file.n, stored[0], stored[1], range.start, range.end
        )));
    }
    let tally = file.tally()?;
    let labels_match = tally.counts_by_row.len() == catalog.len()
        && catalog.rows().iter().all(|r| tally.counts_by_row.contains_key(&r.label));
    if !labels_match {
        return Err(ReportError::Schema("checkpoint rows do not match the catalog".into()));
    }
    tally.check_invariants(range.len()).map_err(ReportError::Invariant)?;
    Ok(tally)
}

/// CSV with columns `n,kind,key,count`; `kind` is `class` (key = complexity)
/// or `row` (key = catalog label).
pub fn write_csv<W: io::Write>(census: &Census, out: W) -> Result<(), ReportError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "kind", "key", "count"])?;
    let n = census.n().to_string();
    for (c, count) in census.tally.counts_by_complexity.iter().enumerate() {
        w.write_record([n.as_str(), "class", &c.to_string(), &count.to_string()])?;
    }
    for (label, count) in &census.tally.counts_by_row {
        w.write_record([n.as_str(), "row", label, &count.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

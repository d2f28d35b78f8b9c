//! Exhaustive enumeration of `S_n`: exact counts by complexity, by catalog
//! row, and by (complexity, descents), checked against the formula registry.

mod engine;
mod fit;
pub mod formula;
pub mod registry;
mod report;
mod verify;

use std::collections::BTreeMap;
use std::path::PathBuf;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::patterns::Family;
use crate::rank::factorial;

pub use engine::{plan_shards, run_census, run_census_with, tally_range, CensusOptions, ShardRange};
pub use fit::{fit_binomial, fit_from_censuses, FitError, FitResult};
pub use formula::{BinomialFormula, FormulaError};
pub use registry::{Claim, Quantity};
pub use report::{
    load_census, load_report, save_report, write_csv, Report, ReportError, SCHEMA_VERSION,
};
pub use verify::{verify, VerifyItem, VerifyReport};

/// Largest `n` accepted by the census engine.
pub const MAX_CENSUS_N: usize = 14;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("census size n = {0} is outside 1..={MAX_CENSUS_N}")]
    SizeOutOfRange(usize),
    #[error("shard count must be positive")]
    NoShards,
    #[error("counter overflow while merging")]
    Overflow,
    #[error("cannot merge tallies for different n ({0} and {1})")]
    SizeMismatch(usize, usize),
    #[error("descent polynomial needs n >= 6, got {0}")]
    TooSmallForDescents(usize),
    #[error("census interrupted after {completed} of {total} shards")]
    Incomplete { completed: usize, total: usize },
    #[error("checkpoint {path}: {source}")]
    Checkpoint {
        path: PathBuf,
        #[source]
        source: Box<ReportError>,
    },
    #[error("could not start worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Exact counts over a set of permutations of length `n`. Tallies of
/// disjoint rank ranges merge by addition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tally {
    pub n: usize,
    /// Indexed by complexity `0..n`.
    pub counts_by_complexity: Vec<u64>,
    /// Catalog row label to the number of permutations it classifies first.
    pub counts_by_row: BTreeMap<String, u64>,
    /// `[complexity][descents]`, both in `0..n`.
    pub descent_matrix: Vec<Vec<u64>>,
    /// Permutations whose certified class disagrees with their complexity.
    pub class_mismatches: u64,
}

impl Tally {
    pub fn empty(n: usize, labels: impl IntoIterator<Item = String>) -> Self {
        let dim = n.max(1);
        Tally {
            n,
            counts_by_complexity: vec![0; dim],
            counts_by_row: labels.into_iter().map(|l| (l, 0)).collect(),
            descent_matrix: vec![vec![0; dim]; dim],
            class_mismatches: 0,
        }
    }

    pub fn total(&self) -> u64 {
        self.counts_by_complexity.iter().sum()
    }

    pub fn merge(&mut self, other: &Tally) -> Result<(), CensusError> {
        if self.n != other.n {
            return Err(CensusError::SizeMismatch(self.n, other.n));
        }
        let add = |a: &mut u64, b: u64| -> Result<(), CensusError> {
            *a = a.checked_add(b).ok_or(CensusError::Overflow)?;
            Ok(())
        };
        for (a, &b) in self.counts_by_complexity.iter_mut().zip(&other.counts_by_complexity) {
            add(a, b)?;
        }
        for (label, &b) in &other.counts_by_row {
            add(self.counts_by_row.entry(label.clone()).or_insert(0), b)?;
        }
        for (ra, rb) in self.descent_matrix.iter_mut().zip(&other.descent_matrix) {
            for (a, &b) in ra.iter_mut().zip(rb) {
                add(a, b)?;
            }
        }
        add(&mut self.class_mismatches, other.class_mismatches)
    }

    /// Hex SHA-256 over a canonical rendering of every count.
    pub fn checksum(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("n={};", self.n));
        h.update(format!("complexity={:?};", self.counts_by_complexity));
        for (label, c) in &self.counts_by_row {
            h.update(format!("row:{label}={c};"));
        }
        h.update(format!("descents={:?};", self.descent_matrix));
        h.update(format!("mismatches={};", self.class_mismatches));
        hex::encode(h.finalize())
    }

    /// Structural invariants for a tally covering `expected_total`
    /// permutations. Returns a description of the first violation.
    pub fn check_invariants(&self, expected_total: u64) -> Result<(), String> {
        let dim = self.n.max(1);
        if self.counts_by_complexity.len() != dim {
            return Err(format!("complexity vector has length {}, expected {dim}", self.counts_by_complexity.len()));
        }
        if self.descent_matrix.len() != dim || self.descent_matrix.iter().any(|r| r.len() != dim) {
            return Err(format!("descent matrix is not {dim}x{dim}"));
        }
        let total = self
            .counts_by_complexity
            .iter()
            .try_fold(0u64, |acc, &c| acc.checked_add(c))
            .ok_or("complexity counts overflow")?;
        if total != expected_total {
            return Err(format!("complexity counts sum to {total}, expected {expected_total}"));
        }
        for (c, row) in self.descent_matrix.iter().enumerate() {
            let sum: u64 = row.iter().sum();
            if sum != self.counts_by_complexity[c] {
                return Err(format!(
                    "descent row {c} sums to {sum}, complexity count is {}",
                    self.counts_by_complexity[c]
                ));
            }
        }
        if self.class_mismatches == 0 {
            for family in [Family::ClassN1, Family::ClassN2, Family::ClassN3] {
                if self.n < family.min_n() {
                    continue;
                }
                let class = self.n - family.class_offset();
                let by_rows: u64 = self
                    .counts_by_row
                    .iter()
                    .filter(|(label, _)| Family::from_label(label) == Some(family))
                    .map(|(_, &c)| c)
                    .sum();
                if by_rows != self.counts_by_complexity[class] {
                    return Err(format!(
                        "rows certifying complexity {class} hold {by_rows} permutations, census has {}",
                        self.counts_by_complexity[class]
                    ));
                }
            }
        }
        Ok(())
    }
}

/// A complete census of `S_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub tally: Tally,
    pub shards_completed: usize,
}

impl Census {
    pub fn n(&self) -> usize {
        self.tally.n
    }

    pub fn checksum(&self) -> String {
        self.tally.checksum()
    }

    /// Permutations of complexity exactly `c`.
    pub fn exactly(&self, c: usize) -> u64 {
        self.tally.counts_by_complexity.get(c).copied().unwrap_or(0)
    }

    /// Permutations of complexity at most `c`, computed as `n!` minus the
    /// classes above `c`.
    pub fn at_most(&self, c: usize) -> u64 {
        let above: u64 = self.tally.counts_by_complexity.iter().skip(c + 1).sum();
        factorial(self.n()).expect("census n fits in u64") - above
    }

    pub fn row(&self, label: &str) -> Option<u64> {
        self.tally.counts_by_row.get(label).copied()
    }

    pub fn check_invariants(&self) -> Result<(), String> {
        let total = factorial(self.n()).ok_or("n! overflows")?;
        self.tally.check_invariants(total)
    }

    /// Coefficient `c_d` counts permutations of complexity at most `n-4` with
    /// exactly `d` descents.
    pub fn descent_polynomial(&self) -> Result<Vec<u64>, CensusError> {
        let n = self.n();
        if n < 6 {
            return Err(CensusError::TooSmallForDescents(n));
        }
        let mut coeffs = vec![0u64; n];
        for row in &self.tally.descent_matrix[..=n - 4] {
            for (d, &c) in row.iter().enumerate() {
                coeffs[d] += c;
            }
        }
        Ok(coeffs)
    }
}

/// Free-function form of [`Census::descent_polynomial`].
pub fn descent_polynomial(census: &Census) -> Result<Vec<u64>, CensusError> {
    census.descent_polynomial()
}

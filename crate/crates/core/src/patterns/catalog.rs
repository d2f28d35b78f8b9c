use std::collections::HashSet;

use thiserror::Error;

use crate::rank::next_permutation;
use crate::word::{Letter, Word, WordError};

use super::ast::PatternRow;
use super::matcher::{CompiledRow, Subject};
use super::parse::{parse_pattern, PatternError};

/// Source of the shipped catalog.
pub const CATALOG_TEXT: &str = include_str!("../../catalog.txt");

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error("no row labelled {0:?}")]
    UnknownLabel(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("exhaustive counting is limited to n <= {max}, got {n}")]
    TooLarge { n: usize, max: usize },
}

/// Largest `n` for which [`Catalog::count_matches`] enumerates `S_n`.
pub const MAX_COUNT_N: usize = 12;

/// Result of classifying a permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification<'a> {
    pub index: usize,
    pub row: &'a PatternRow,
    /// Certified complexity, resolved at the subject's length.
    pub class: usize,
}

/// Ordered list of rows; the first matching row classifies a permutation.
#[derive(Debug, Clone)]
pub struct Catalog {
    rows: Vec<PatternRow>,
    compiled: Vec<CompiledRow>,
}

impl Catalog {
    pub fn builtin() -> Self {
        Self::parse(CATALOG_TEXT).expect("shipped catalog parses")
    }

    /// One row per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, PatternError> {
        let mut rows = Vec::new();
        let mut labels = HashSet::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = parse_pattern(line)
                .map_err(|e| PatternError::Line { line: i + 1, source: Box::new(e) })?;
            if !labels.insert(row.label.clone()) {
                return Err(PatternError::DuplicateLabel(row.label));
            }
            rows.push(row);
        }
        Ok(Self::from_rows(rows))
    }

    pub fn from_rows(rows: Vec<PatternRow>) -> Self {
        let compiled = rows.iter().map(CompiledRow::new).collect();
        Catalog { rows, compiled }
    }

    pub fn rows(&self) -> &[PatternRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.rows.iter().position(|r| r.label == label)
    }

    pub fn get(&self, label: &str) -> Option<&PatternRow> {
        self.index_of(label).map(|i| &self.rows[i])
    }

    /// Canonical text, one row per line.
    pub fn to_text(&self) -> String {
        self.rows.iter().map(|r| format!("{r}\n")).collect()
    }

    /// First matching row among those valid at the word's length, or `None`.
    pub fn classify(&self, w: &Word) -> Result<Option<Classification<'_>>, WordError> {
        w.ensure_standard()?;
        let n = w.len();
        Ok(self.classify_slice(w.letters()).map(|index| {
            let row = &self.rows[index];
            let class = row.certified_class().at(n).expect("row valid at n");
            Classification { index, row, class }
        }))
    }

    /// Hot-path classification of a slice known to be standard.
    pub(crate) fn classify_slice(&self, letters: &[Letter]) -> Option<usize> {
        let n = letters.len();
        let subject = Subject::new(letters);
        self.rows
            .iter()
            .zip(&self.compiled)
            .position(|(row, c)| row.min_n() <= n && c.matches_subject(&subject))
    }

    /// Unmatched permutations of length `n` are certified to have complexity
    /// strictly below the returned value. `None` when no row applies at `n`.
    pub fn no_match_bound(&self, n: usize) -> Option<usize> {
        self.rows
            .iter()
            .filter(|r| r.min_n() <= n)
            .filter_map(|r| r.certified_class().at(n))
            .min()
    }

    /// Number of permutations in `S_n` whose first matching row is `label`.
    pub fn count_matches(&self, n: usize, label: &str) -> Result<u64, CatalogError> {
        let target = self
            .index_of(label)
            .ok_or_else(|| CatalogError::UnknownLabel(label.to_string()))?;
        if n > MAX_COUNT_N {
            return Err(CatalogError::TooLarge { n, max: MAX_COUNT_N });
        }
        let mut cur: Vec<Letter> = (1..=n as Letter).collect();
        let mut count = 0u64;
        loop {
            if self.classify_slice(&cur) == Some(target) {
                count += 1;
            }
            if !next_permutation(&mut cur) {
                return Ok(count);
            }
        }
    }
}

impl Default for Catalog {
    fn default() -> Self {
        Self::builtin()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::ast::Family;

    #[test]
    fn shipped_catalog_shape() {
        let cat = Catalog::builtin();
        assert_eq!(cat.len(), 28);
        let labels: Vec<&str> = cat.rows().iter().map(|r| r.label.as_str()).collect();
        assert_eq!(&labels[..6], &["L1", "L2-1", "L2-2", "L2-3", "L2-4", "L2-5"]);
        assert_eq!(labels[6], "T1a");
        assert_eq!(labels[27], "T5h");
        let mut sorted = labels.clone();
        sorted.sort();
        assert_eq!(sorted, labels, "catalog order coincides with label order");
        for row in cat.rows() {
            assert_eq!(row.exclusion.is_some(), row.label == "T4a", "{}", row.label);
            assert_eq!(row.nonempty.is_some(), row.label == "T5a", "{}", row.label);
        }
        assert_eq!(cat.rows().iter().filter(|r| r.family == Family::ClassN3).count(), 22);
    }

    #[test]
    fn round_trip_through_text() {
        let cat = Catalog::builtin();
        let again = Catalog::parse(&cat.to_text()).unwrap();
        assert_eq!(again.rows(), cat.rows());
        for row in cat.rows() {
            assert_eq!(&parse_pattern(&row.to_string()).unwrap(), row);
        }
    }

    #[test]
    fn classify_examples() {
        let cat = Catalog::builtin();
        let c = |s: &str| {
            cat.classify(&s.parse().unwrap())
                .unwrap()
                .map(|c| (c.row.label.clone(), c.class))
        };
        assert_eq!(c("2341"), Some(("L1".into(), 3)));
        assert_eq!(c("42513"), Some(("L2-3".into(), 3)));
        assert_eq!(c("124563"), Some(("T2a".into(), 3)));
        assert_eq!(c("123456"), None);
        assert!(cat.classify(&"2,4,5".parse().unwrap()).is_err());
    }

    #[test]
    fn count_matches_examples() {
        let cat = Catalog::builtin();
        assert_eq!(cat.count_matches(6, "T2a").unwrap(), 24);
        assert_eq!(cat.count_matches(6, "T2b").unwrap(), 2);
        assert_eq!(cat.count_matches(6, "T1d").unwrap(), 3);
        assert!(matches!(cat.count_matches(6, "T9z"), Err(CatalogError::UnknownLabel(_))));
    }

    #[test]
    fn bounds_for_unmatched() {
        let cat = Catalog::builtin();
        assert_eq!(cat.no_match_bound(1), None);
        assert_eq!(cat.no_match_bound(3), Some(2));
        assert_eq!(cat.no_match_bound(5), Some(3));
        assert_eq!(cat.no_match_bound(8), Some(5));
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(matches!(
            Catalog::parse("L1: * n 1\nL1: * n 2\n"),
            Err(PatternError::DuplicateLabel(_))
        ));
        assert!(matches!(Catalog::parse("L1: * n 1\nL1 * n\n"), Err(PatternError::Line { line: 2, .. })));
    }
}

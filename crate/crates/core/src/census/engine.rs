use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::patterns::Catalog;
use crate::rank::{factorial, next_permutation, unrank_into};
use crate::sort::{complexity_of, descents_of};
use crate::word::Letter;

use super::report::{read_shard, shard_file_name, write_shard};
use super::{Census, CensusError, Tally, MAX_CENSUS_N};

/// Half-open range of lexicographic ranks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShardRange {
    pub start: u64,
    pub end: u64,
}

impl ShardRange {
    pub fn len(&self) -> u64 {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

#[derive(Debug, Clone)]
pub struct CensusOptions {
    pub shards: usize,
    /// Directory holding one file per completed shard.
    pub checkpoint: Option<PathBuf>,
    /// Reuse shard files already present in the checkpoint directory.
    pub resume: bool,
    /// Stop with [`CensusError::Incomplete`] after computing this many new
    /// shards. Completed shards are kept in the checkpoint directory.
    pub max_new_shards: Option<usize>,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { shards: 1, checkpoint: None, resume: false, max_new_shards: None, threads: None }
    }
}

/// Splits `[0, n!)` into at most `count` contiguous nonempty ranges of
/// near-equal size.
pub fn plan_shards(n: usize, count: usize) -> Result<Vec<ShardRange>, CensusError> {
    if !(1..=MAX_CENSUS_N).contains(&n) {
        return Err(CensusError::SizeOutOfRange(n));
    }
    if count == 0 {
        return Err(CensusError::NoShards);
    }
    let total = factorial(n).expect("n <= 14");
    let count = (count as u64).min(total);
    Ok((0..count)
        .map(|i| ShardRange {
            start: (total as u128 * i as u128 / count as u128) as u64,
            end: (total as u128 * (i + 1) as u128 / count as u128) as u64,
        })
        .collect())
}

/// Counts one rank range. Each permutation is visited once by walking
/// lexicographic successors in place.
pub fn tally_range(n: usize, catalog: &Catalog, range: ShardRange) -> Tally {
    let rows = catalog.rows();
    let row_class: Vec<Option<usize>> = rows
        .iter()
        .map(|r| if r.min_n() <= n { r.certified_class().at(n) } else { None })
        .collect();
    let bound = catalog.no_match_bound(n);

    let mut by_complexity = vec![0u64; n.max(1)];
    let mut by_row = vec![0u64; rows.len()];
    let mut descent_matrix = vec![vec![0u64; n.max(1)]; n.max(1)];
    let mut mismatches = 0u64;

    let mut cur: Vec<Letter> = vec![0; n];
    unrank_into(range.start, &mut cur);
    for i in 0..range.len() {
        let c = complexity_of(&cur);
        let d = descents_of(&cur);
        by_complexity[c] += 1;
        descent_matrix[c][d] += 1;
        match catalog.classify_slice(&cur) {
            Some(r) => {
                by_row[r] += 1;
                if row_class[r] != Some(c) {
                    mismatches += 1;
                }
            }
            None => {
                if bound.is_some_and(|b| c >= b) {
                    mismatches += 1;
                }
            }
        }
        if i + 1 < range.len() {
            next_permutation(&mut cur);
        }
    }

    Tally {
        n,
        counts_by_complexity: by_complexity,
        counts_by_row: rows.iter().map(|r| r.label.clone()).zip(by_row).collect(),
        descent_matrix,
        class_mismatches: mismatches,
    }
}

/// In-memory census with the shipped catalog.
pub fn run_census(n: usize, shard_count: usize) -> Result<Census, CensusError> {
    let opts = CensusOptions { shards: shard_count, ..CensusOptions::default() };
    run_census_with(n, &Catalog::builtin(), &opts)
}

fn load_existing(dir: &Path, n: usize, range: ShardRange, catalog: &Catalog) -> Result<Option<Tally>, CensusError> {
    let path = dir.join(shard_file_name(n, range));
    if !path.exists() {
        return Ok(None);
    }
    let wrap = |e| CensusError::Checkpoint { path: path.clone(), source: Box::new(e) };
    read_shard(&path, n, range, catalog).map(Some).map_err(wrap)
}

pub fn run_census_with(n: usize, catalog: &Catalog, opts: &CensusOptions) -> Result<Census, CensusError> {
    let plan = plan_shards(n, opts.shards)?;
    if let Some(dir) = &opts.checkpoint {
        std::fs::create_dir_all(dir)?;
    }

    let mut done: Vec<Option<Tally>> = Vec::with_capacity(plan.len());
    for &range in &plan {
        let existing = match (&opts.checkpoint, opts.resume) {
            (Some(dir), true) => load_existing(dir, n, range, catalog)?,
            _ => None,
        };
        done.push(existing);
    }

    let mut pending: Vec<usize> = (0..plan.len()).filter(|&i| done[i].is_none()).collect();
    let deferred = match opts.max_new_shards {
        Some(limit) if limit < pending.len() => pending.split_off(limit).len(),
        _ => 0,
    };

    let work = || -> Result<Vec<(usize, Tally)>, CensusError> {
        pending
            .par_iter()
            .map(|&i| {
                let tally = tally_range(n, catalog, plan[i]);
                if let Some(dir) = &opts.checkpoint {
                    let path = dir.join(shard_file_name(n, plan[i]));
                    write_shard(&path, &tally, plan[i])
                        .map_err(|e| CensusError::Checkpoint { path, source: Box::new(e) })?;
                }
                Ok((i, tally))
            })
            .collect()
    };
    let computed = match opts.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CensusError::Pool(e.to_string()))?
            .install(work)?,
        None => work()?,
    };
    for (i, tally) in computed {
        done[i] = Some(tally);
    }

    if deferred > 0 {
        let completed = done.iter().filter(|t| t.is_some()).count();
        return Err(CensusError::Incomplete { completed, total: plan.len() });
    }

    let mut total = Tally::empty(n, catalog.rows().iter().map(|r| r.label.clone()));
    for tally in done.iter().flatten() {
        total.merge(tally)?;
    }
    Ok(Census { tally: total, shards_completed: plan.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_censuses() {
        assert_eq!(run_census(1, 1).unwrap().tally.counts_by_complexity, vec![1]);
        assert_eq!(run_census(3, 1).unwrap().tally.counts_by_complexity, vec![1, 4, 1]);
        assert_eq!(run_census(6, 3).unwrap().tally.counts_by_complexity[3], 198);
    }

    #[test]
    fn argument_checks() {
        assert!(matches!(run_census(0, 1), Err(CensusError::SizeOutOfRange(0))));
        assert!(matches!(run_census(15, 1), Err(CensusError::SizeOutOfRange(15))));
        assert!(matches!(run_census(4, 0), Err(CensusError::NoShards)));
    }

    #[test]
    fn plan_covers_everything() {
        let plan = plan_shards(5, 7).unwrap();
        assert_eq!(plan.len(), 7);
        assert_eq!(plan[0].start, 0);
        assert_eq!(plan.last().unwrap().end, 120);
        assert!(plan.windows(2).all(|p| p[0].end == p[1].start));
        assert_eq!(plan_shards(2, 10).unwrap().len(), 2);
    }

    #[test]
    fn shard_counts_do_not_change_the_tally() {
        let a = run_census(6, 1).unwrap();
        for s in [2, 5, 16, 720, 1000] {
            assert_eq!(run_census(6, s).unwrap().tally, a.tally, "shards = {s}");
        }
    }

    #[test]
    fn invariants_hold_and_no_mismatches() {
        for n in 1..=7 {
            let c = run_census(n, 4).unwrap();
            c.check_invariants().unwrap();
            assert_eq!(c.tally.class_mismatches, 0, "n = {n}");
        }
    }
}

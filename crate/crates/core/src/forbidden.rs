//! Forbidden patterns and the complexity bracket they give.
//!
//! A forbidden pattern of order `k` is a triple `(B, c, a)`: `B` is a
//! subsequence of `k` letters, and for each `b ∈ B` the subsequence `b c a`
//! is a 231-occurrence, i.e. `b` precedes `c` precedes `a` and `a < b < c`.
//! It is uninterrupted when no letter `x > c` sits between two letters of `B`.
//!
//! Absence of any pattern of order `k` gives `complexity ≤ k`; presence of an
//! uninterrupted one of order `k` gives `complexity > k`.

use crate::word::{Letter, Word, WordError};

/// A pattern `(B, c, a)`, letters listed as they occur in the word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub b: Vec<Letter>,
    pub c: Letter,
    pub a: Letter,
}

impl Witness {
    pub fn order(&self) -> usize {
        self.b.len()
    }

    /// Checks the witness against the definitions, directly on `w`.
    pub fn is_valid_in(&self, w: &Word, uninterrupted: bool) -> bool {
        let letters = w.letters();
        let at = |x: Letter| letters.iter().position(|&y| y == x);
        let (Some(ic), Some(ia)) = (at(self.c), at(self.a)) else {
            return false;
        };
        let mut positions = Vec::with_capacity(self.b.len());
        for &b in &self.b {
            match at(b) {
                Some(ib) if ib < ic && self.a < b && b < self.c => positions.push(ib),
                _ => return false,
            }
        }
        if ic >= ia || !positions.windows(2).all(|p| p[0] < p[1]) {
            return false;
        }
        if uninterrupted {
            if let (Some(&first), Some(&last)) = (positions.first(), positions.last()) {
                if letters[first..last].iter().any(|&x| x > self.c) {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenReport {
    /// Largest order of a forbidden pattern; 0 when there is none.
    pub max_order: usize,
    pub max_uninterrupted_order: usize,
    /// A pattern of order `max_order`. `None` exactly when the word has no
    /// inversion, i.e. not even an order-0 pattern exists.
    pub witness: Option<Witness>,
    pub uninterrupted_witness: Option<Witness>,
}

/// Scans every witnessing pair `(c, a)` with `c` before `a` and `a < c`.
/// For each pair, the candidates are the letters before `c` with values in
/// `(a, c)`; every subset of them is a valid `B`, and a subset is
/// uninterrupted when it stays inside one run between letters larger than
/// `c`. `O(n³)`.
pub fn forbidden_report(w: &Word) -> ForbiddenReport {
    let letters = w.letters();
    let mut best: Option<(usize, usize, usize)> = None;
    let mut best_run: Option<(usize, usize, usize, usize)> = None;
    for (i, &c) in letters.iter().enumerate() {
        for (j, &a) in letters.iter().enumerate().skip(i + 1) {
            if a > c {
                continue;
            }
            let mut total = 0;
            let (mut run, mut run_start) = (0, 0);
            for (p, &x) in letters[..i].iter().enumerate() {
                if x > c {
                    run = 0;
                    run_start = p + 1;
                } else if x > a {
                    total += 1;
                    run += 1;
                    if best_run.map_or(true, |(k, ..)| run > k) {
                        best_run = Some((run, run_start, i, j));
                    }
                }
            }
            if best_run.is_none() {
                best_run = Some((0, 0, i, j));
            }
            if best.map_or(true, |(k, ..)| total > k) {
                best = Some((total, i, j));
            }
        }
    }
    let collect = |range: std::ops::Range<usize>, c: Letter, a: Letter| -> Vec<Letter> {
        letters[range].iter().copied().filter(|&x| a < x && x < c).collect()
    };
    let witness = best.map(|(_, i, j)| Witness {
        b: collect(0..i, letters[i], letters[j]),
        c: letters[i],
        a: letters[j],
    });
    let uninterrupted_witness = best_run.map(|(k, start, i, j)| {
        let (c, a) = (letters[i], letters[j]);
        // The run that attained the maximum starts at `start`; take its first k candidates.
        let mut b = collect(start..i, c, a);
        b.truncate(k);
        Witness { b, c, a }
    });
    ForbiddenReport {
        max_order: witness.as_ref().map_or(0, Witness::order),
        max_uninterrupted_order: uninterrupted_witness.as_ref().map_or(0, Witness::order),
        witness,
        uninterrupted_witness,
    }
}

/// Bracket `[lower, upper]` on the complexity of a standard word.
///
/// `upper` is the smallest `k` with no forbidden pattern of order `k`:
/// `max_order + 1` when the word has an inversion, 0 otherwise. `lower` is
/// one more than the largest uninterrupted order, or 0 for the identity.
pub fn complexity_bounds(w: &Word) -> Result<(usize, usize), WordError> {
    w.ensure_standard()?;
    let r = forbidden_report(w);
    Ok(match r.witness {
        None => (0, 0),
        Some(_) => (r.max_uninterrupted_order + 1, r.max_order + 1),
    })
}

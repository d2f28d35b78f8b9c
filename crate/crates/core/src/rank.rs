//! Lexicographic ranking of standard permutations via the factorial number
//! system. Used to cut `S_n` into contiguous shards.

use thiserror::Error;

use crate::word::{Letter, Word, WordError};

/// Position of a standard permutation in lexicographic order, `0 ≤ r < n!`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rank(pub u64);

/// Largest `n` whose factorial fits in a `u64`.
pub const MAX_RANKABLE: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RankError {
    #[error("rank {rank} out of range for n = {n} (n! = {total})")]
    OutOfRange { n: usize, rank: u64, total: u64 },
    #[error("n = {0} is too large to rank (max {MAX_RANKABLE})")]
    TooLarge(usize),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// `n!` as a `u64`, or `None` on overflow.
pub fn factorial(n: usize) -> Option<u64> {
    (1..=n as u64).try_fold(1u64, |acc, i| acc.checked_mul(i))
}

pub fn unrank(n: usize, r: Rank) -> Result<Word, RankError> {
    let total = factorial(n).ok_or(RankError::TooLarge(n))?;
    if r.0 >= total {
        return Err(RankError::OutOfRange { n, rank: r.0, total });
    }
    let mut out = vec![0; n];
    unrank_into(r.0, &mut out);
    Ok(Word::from_vec_unchecked(out))
}

/// Writes the permutation of rank `r` into `out` (length `n`). Caller checks range.
pub(crate) fn unrank_into(mut r: u64, out: &mut [Letter]) {
    let n = out.len();
    let mut pool: Vec<Letter> = (1..=n as Letter).collect();
    for (i, slot) in out.iter_mut().enumerate() {
        let block = factorial(n - 1 - i).expect("n checked by caller");
        let idx = (r / block) as usize;
        r %= block;
        *slot = pool.remove(idx);
    }
}

pub fn rank(w: &Word) -> Result<Rank, RankError> {
    w.ensure_standard()?;
    let n = w.len();
    if n > MAX_RANKABLE {
        return Err(RankError::TooLarge(n));
    }
    let letters = w.letters();
    let mut r = 0u64;
    for i in 0..n {
        let smaller_after = letters[i + 1..].iter().filter(|&&x| x < letters[i]).count() as u64;
        r += smaller_after * factorial(n - 1 - i).unwrap();
    }
    Ok(Rank(r))
}

/// Advances to the lexicographic successor in place; returns `false` (and
/// leaves the slice unchanged) at the last permutation.
pub fn next_permutation(a: &mut [Letter]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] > a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] < a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_of_s3() {
        assert_eq!(unrank(3, Rank(0)).unwrap().to_string(), "123");
        assert_eq!(unrank(3, Rank(5)).unwrap().to_string(), "321");
        assert_eq!(rank(&"231".parse().unwrap()).unwrap(), Rank(3));
    }

    #[test]
    fn errors() {
        assert_eq!(
            unrank(3, Rank(6)),
            Err(RankError::OutOfRange { n: 3, rank: 6, total: 6 })
        );
        assert!(matches!(rank(&"251".parse().unwrap()), Err(RankError::Word(_))));
        assert_eq!(unrank(21, Rank(0)), Err(RankError::TooLarge(21)));
    }

    #[test]
    fn successor_walk_matches_unrank() {
        for n in 0..=6 {
            let total = factorial(n).unwrap();
            let mut cur: Vec<Letter> = (1..=n as Letter).collect();
            for r in 0..total {
                assert_eq!(unrank(n, Rank(r)).unwrap().letters(), &cur[..]);
                let more = next_permutation(&mut cur);
                assert_eq!(more, r + 1 < total);
            }
        }
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), Some(1));
        assert_eq!(factorial(20), Some(2_432_902_008_176_640_000));
        assert_eq!(factorial(21), None);
    }
}

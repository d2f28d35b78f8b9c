//! Words over the positive integers with no repeated letter.
//!
//! A [`Word`] is the object the stack-sorting operator acts on. Letters are
//! arbitrary distinct positive integers; a word is *standard* when its letter
//! set is exactly `{1, …, n}`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Letter type shared by every kernel in the crate.
pub type Letter = u32;

/// Default cap on word length.
pub const DEFAULT_MAX_LEN: usize = 20;

/// Hard cap on word length; kernels size their scratch arrays from it.
pub const ABSOLUTE_MAX_LEN: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("empty input")]
    EmptyInput,
    #[error("invalid letter {0:?}")]
    InvalidLetter(String),
    #[error("letter 0 is not a positive integer")]
    ZeroLetter,
    #[error("letter {0} occurs more than once")]
    Repeated(Letter),
    #[error("word of length {len} exceeds the maximum length {max}")]
    TooLong { len: usize, max: usize },
    #[error("word {0} is not a permutation of 1..n")]
    NotStandard(String),
}

/// A finite sequence of pairwise distinct positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    /// Builds a word, checking that letters are positive and pairwise distinct.
    pub fn new(letters: Vec<Letter>) -> Result<Self, WordError> {
        Self::with_limit(letters, DEFAULT_MAX_LEN)
    }

    pub fn with_limit(letters: Vec<Letter>, max_len: usize) -> Result<Self, WordError> {
        let max = max_len.min(ABSOLUTE_MAX_LEN);
        if letters.len() > max {
            return Err(WordError::TooLong { len: letters.len(), max });
        }
        let mut seen = std::collections::HashSet::with_capacity(letters.len());
        for &x in &letters {
            if x == 0 {
                return Err(WordError::ZeroLetter);
            }
            if !seen.insert(x) {
                return Err(WordError::Repeated(x));
            }
        }
        Ok(Word(letters))
    }

    /// Builds a standard permutation, rejecting anything that is not a
    /// rearrangement of `1..=n`.
    pub fn standard(letters: Vec<Letter>) -> Result<Self, WordError> {
        let w = Self::new(letters)?;
        w.ensure_standard()?;
        Ok(w)
    }

    pub(crate) fn from_vec_unchecked(letters: Vec<Letter>) -> Self {
        debug_assert!(is_distinct_positive(&letters));
        Word(letters)
    }

    /// The identity permutation `12…n`.
    pub fn identity(n: usize) -> Self {
        Word((1..=n as Letter).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_standard(&self) -> bool {
        is_standard(&self.0)
    }

    pub fn is_identity(&self) -> bool {
        is_identity(&self.0)
    }

    pub fn ensure_standard(&self) -> Result<(), WordError> {
        if self.is_standard() {
            Ok(())
        } else {
            Err(WordError::NotStandard(self.to_string()))
        }
    }

    /// Parses with an explicit length cap.
    pub fn parse_with_limit(text: &str, max_len: usize) -> Result<Self, WordError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(WordError::EmptyInput);
        }
        let compact = !text.contains(|c: char| c == ',' || c.is_whitespace());
        let letters = if compact {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| WordError::InvalidLetter(c.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?
        } else {
            text.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<Letter>()
                        .map_err(|_| WordError::InvalidLetter(s.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?
        };
        Self::with_limit(letters, max_len)
    }
}

impl FromStr for Word {
    type Err = WordError;

    /// Accepts either a digit string (`"42513"`, one letter per digit) or
    /// comma/space separated integers (`"4,2,5,1,3"`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_with_limit(s, DEFAULT_MAX_LEN)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&x| x <= 9) {
            for x in &self.0 {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl AsRef<[Letter]> for Word {
    fn as_ref(&self) -> &[Letter] {
        &self.0
    }
}

pub fn is_identity(letters: &[Letter]) -> bool {
    letters.iter().enumerate().all(|(i, &x)| x as usize == i + 1)
}

pub fn is_standard(letters: &[Letter]) -> bool {
    let n = letters.len();
    let mut seen = vec![false; n + 1];
    for &x in letters {
        let x = x as usize;
        if x == 0 || x > n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

fn is_distinct_positive(letters: &[Letter]) -> bool {
    let mut sorted = letters.to_vec();
    sorted.sort_unstable();
    sorted.first().map_or(true, |&x| x > 0) && sorted.windows(2).all(|p| p[0] != p[1])
}

//! Matching standard permutations against pattern rows.
//!
//! Rows are compiled once: alternations are expanded into a list of flat
//! token sequences and named stars become bits of a mask. Matching walks the
//! sequence left to right. A star followed by a value jumps straight to that
//! value's position, which is unique in a permutation; any other star tries
//! every length.

use crate::word::{Letter, Word, WordError, ABSOLUTE_MAX_LEN};

use super::ast::{PatternRow, Token};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flat {
    /// Carries the constraint bit set when the star consumes a letter.
    Star(u32),
    Any,
    Rel(u32),
    Abs(u32),
}

/// A row ready for repeated matching.
#[derive(Debug, Clone)]
pub struct CompiledRow {
    alts: Vec<Vec<Flat>>,
    exclusion: Vec<Vec<Flat>>,
    required: u32,
}

fn expand(tokens: &[Token], bits: &dyn Fn(char) -> u32) -> Vec<Vec<Flat>> {
    let mut acc: Vec<Vec<Flat>> = vec![Vec::new()];
    for t in tokens {
        let single = match t {
            Token::Star(name) => Flat::Star(name.map_or(0, bits)),
            Token::AnyOne => Flat::Any,
            Token::Rel(k) => Flat::Rel(*k),
            Token::Abs(v) => Flat::Abs(*v),
            Token::Alt(branches) => {
                let tails: Vec<Vec<Flat>> = branches.iter().flat_map(|b| expand(b, bits)).collect();
                acc = acc
                    .iter()
                    .flat_map(|head| {
                        tails.iter().map(move |tail| {
                            let mut v = head.clone();
                            v.extend_from_slice(tail);
                            v
                        })
                    })
                    .collect();
                continue;
            }
        };
        acc.iter_mut().for_each(|seq| seq.push(single));
    }
    acc
}

impl CompiledRow {
    pub fn new(row: &PatternRow) -> Self {
        let required_names = row.nonempty.clone().unwrap_or_default();
        let bits = |c: char| {
            required_names
                .iter()
                .position(|&r| r == c)
                .map_or(0, |i| 1u32 << i)
        };
        let required = (0..required_names.len()).fold(0u32, |m, i| m | (1 << i));
        CompiledRow {
            alts: expand(&row.tokens, &bits),
            exclusion: row.exclusion.as_deref().map_or_else(Vec::new, |ex| expand(ex, &|_| 0)),
            required,
        }
    }

    pub(crate) fn matches_subject(&self, s: &Subject<'_>) -> bool {
        self.alts.iter().any(|seq| match_seq(seq, s, self.required))
            && !self.exclusion.iter().any(|seq| match_seq(seq, s, 0))
    }

    /// Matches a standard permutation given as a raw slice.
    pub fn matches_slice(&self, letters: &[Letter]) -> bool {
        self.matches_subject(&Subject::new(letters))
    }
}

/// A standard permutation together with the inverse lookup `value → index`.
pub(crate) struct Subject<'a> {
    letters: &'a [Letter],
    position: [u8; ABSOLUTE_MAX_LEN + 1],
}

impl<'a> Subject<'a> {
    pub(crate) fn new(letters: &'a [Letter]) -> Self {
        let mut position = [0u8; ABSOLUTE_MAX_LEN + 1];
        for (i, &x) in letters.iter().enumerate() {
            position[x as usize] = i as u8;
        }
        Subject { letters, position }
    }

    fn resolve(&self, t: Flat) -> Option<Letter> {
        let n = self.letters.len() as u32;
        let v = match t {
            Flat::Rel(k) => n.checked_sub(k)?,
            Flat::Abs(v) => v,
            _ => return None,
        };
        (1..=n).contains(&v).then_some(v)
    }
}

fn match_seq(seq: &[Flat], s: &Subject<'_>, required: u32) -> bool {
    step(seq, 0, s, 0, required)
}

fn step(seq: &[Flat], pos: usize, s: &Subject<'_>, mask: u32, required: u32) -> bool {
    let n = s.letters.len();
    let Some((&head, rest)) = seq.split_first() else {
        return pos == n && (required == 0 || mask & required != 0);
    };
    match head {
        Flat::Any => pos < n && step(rest, pos + 1, s, mask, required),
        Flat::Rel(_) | Flat::Abs(_) => match s.resolve(head) {
            Some(v) => pos < n && s.letters[pos] == v && step(rest, pos + 1, s, mask, required),
            None => false,
        },
        Flat::Star(bit) => {
            let grown = |end: usize| if end > pos { mask | bit } else { mask };
            match rest.first() {
                None => step(rest, n, s, grown(n), required),
                Some(&next @ (Flat::Rel(_) | Flat::Abs(_))) => match s.resolve(next) {
                    Some(v) => {
                        let at = s.position[v as usize] as usize;
                        at >= pos && step(rest, at, s, grown(at), required)
                    }
                    None => false,
                },
                Some(_) => (pos..=n).any(|end| step(rest, end, s, grown(end), required)),
            }
        }
    }
}

/// Whether the standard word `w` belongs to the row's word set.
pub fn matches(w: &Word, row: &PatternRow) -> Result<bool, WordError> {
    w.ensure_standard()?;
    Ok(CompiledRow::new(row).matches_slice(w.letters()))
}

#[cfg(test)]
mod tests {
    use super::super::parse::parse_pattern;
    use super::*;

    fn m(word: &str, pattern: &str) -> bool {
        let row = parse_pattern(&format!("T0: {pattern}")).unwrap();
        let w = if word.is_empty() { Word::default() } else { word.parse().unwrap() };
        matches(&w, &row).unwrap()
    }

    #[test]
    fn basic_globs() {
        assert!(m("23514", "* n 1 ?"));
        assert!(!m("12345", "* n 1"));
        assert!(m("2341", "* n 1"));
        assert!(m("", "*"));
        assert!(!m("", "?"));
        assert!(m("1", "n"));
        assert!(m("1", "1"));
        assert!(m("312", "? * ?"));
        assert!(!m("1", "? * ?"));
        assert!(m("21", "* * 1"));
    }

    #[test]
    fn values_out_of_range_never_match() {
        assert!(!m("123", "* (n-3) *"));
        assert!(!m("123", "* 4 *"));
    }

    #[test]
    fn exclusion_and_constraint() {
        let row = "* n ? ? 1 minus {* n (n-2) (n-1) 1}";
        assert!(m("246351", row));
        assert!(!m("236451", row));
        assert!(m("236451", "* n ? ? 1"));
        assert!(!m("623451", row));
        let t5a = "* n *A (n-2) *B (n-1) 2 where nonempty(A|B)";
        assert!(!m("316452", t5a));
        assert!(m("631452", t5a));
        assert!(m("613452", t5a));
    }

    #[test]
    fn alternatives() {
        let p = "* n * (n-2) * (n-1) {1 ? | ? 1}";
        assert!(m("264513", p));
        assert!(m("264531", p));
        assert!(!m("264135", p));
    }

    #[test]
    fn non_standard_rejected() {
        let row = parse_pattern("L1: * n 1").unwrap();
        assert!(matches(&"351".parse().unwrap(), &row).is_err());
    }
}
